#pragma once

#include "qrep/photonics.hpp"
#include "qrep/quantum_core.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace qrep {

// Emitter and cavity frequencies are ordinary frequencies in GHz, measured
// from the 1<->A transition. Photon linewidths are quoted as decay rates in
// 1/ns and converted with rate_to_frequency before they meet the cavity.
constexpr double rate_to_frequency(double rate) { return rate / (2 * M_PI); }

struct EmitterParams {
    double omega_1A = 0.0;
    double omega_2B = 0.0;  // omega_1A + contrast
    double gamma_1A = 0.1;
    double gamma_2B = 0.1;
    double g_1A = 1.0;
    double g_2B = 1.0;
    double omega_s = 0.0;  // ground splitting; informational only
    std::string label = "custom";

    double contrast() const { return omega_2B - omega_1A; }
    void validate() const;
};

struct CavityConfig {
    double kappa = 1.0;
    double delta_c = 0.0;  // omega_1A - omega_c
    double waveguide_fraction = 1.0;

    double omega_c(const EmitterParams& e) const { return e.omega_1A - delta_c; }
    double cooperativity_1A(const EmitterParams& e) const { return e.g_1A * e.g_1A / (2 * e.gamma_1A * kappa); }
    double cooperativity_2B(const EmitterParams& e) const { return e.g_2B * e.g_2B / (2 * e.gamma_2B * kappa); }
    void validate() const;
};

// Photon line parameters as decay rates (1/ns). A tilde bandwidth selects a filter.
struct PhotonLine {
    double gamma = 1.0;
    std::optional<double> gamma_tilde;
};

struct PhotonPair {
    PhotonLine x;
    PhotonLine xx;
};

struct InterfaceConfig {
    EmitterParams emitter;
    CavityConfig cavity;
    double delta_0 = 0.0;  // omega_1A - omega_0, photon carrier detuning

    double omega_0() const { return emitter.omega_1A - delta_0; }
};

enum class Branch { spin1, spin2 };

struct OverlapVector {
    cplx i1, i2, i2_conj, i3;

    std::array<cplx, 4> as_array() const { return {i1, i2, i2_conj, i3}; }
    // Element I_{ab} = 1/4 int S R_a R_b^*, a, b in {0, 1}.
    cplx element(int a, int b) const { return as_array()[2 * a + b]; }
    void validate() const;
    static OverlapVector uniform(cplx i1, cplx i2, cplx i3) { return {i1, i2, std::conj(i2), i3}; }
};

struct EntanglementMetrics {
    double eta_sp;
    double f_sp;
};

// Published SiV / SnV level parameters with the fitted branch contrast.
EmitterParams siv_emitter();
EmitterParams snv_emitter();
// Optimized cavity point and carrier detuning from the published table.
InterfaceConfig siv_reference_point();
InterfaceConfig snv_reference_point();

// Single-sided cavity reflection for one spin branch (no cross couplings):
// r = 1 - 2 kappa_wg (i da + g/2) / [(i dc + kappa)(i da + g/2) + g_T^2],
// da = omega - omega_T, dc = omega - omega_c.
cplx reflection(double omega, Branch branch, const EmitterParams& emitter, const CavityConfig& cavity);

// Mode on the cavity frequency axis for a line given as a rate.
PhotonMode make_mode(const InterfaceConfig& cfg, const PhotonLine& line);
std::optional<FilterStage> make_line_filter(const PhotonLine& line);

// 1/4-normalized conditional overlaps. Without a filter the spectrum weight is
// gamma/(2 pi) |S|^2 / eps0^2; with one it is gamma_tilde/(2 pi) |F S|^2 / eps0^2.
OverlapVector overlap_integrals(const PhotonMode& mode, const std::optional<FilterStage>& filter,
                                const EmitterParams& emitter, const CavityConfig& cavity);

// Heralded, unnormalized spin-spin state built from the photon-pair density
// matrix, the imperfect rotation map and the overlap tensor.
TwoQubitState spin_spin_state(double f_ph, double f_mw, const OverlapVector& ix, const OverlapVector& ixx);

// Conditional state rho_{+sign} for a pure photon pair alpha|EE'> + beta|LL'>
// in closed form; the reference route for the tensor construction.
Mat4 rho_pm_closed_form(cplx alpha, cplx beta, int sign, const OverlapVector& ix, const OverlapVector& ixx);

// Tensor construction of rho_{+sign} before the final rotation.
Mat4 rho_pm_tensor(const Mat4& photon_rho, const Mat4& lambda, int sign, const OverlapVector& ix,
                   const OverlapVector& ixx);

// Rotation map applied to |11><11|: ideal R_y(pi/2) on both spins followed by
// single-qubit depolarizing with average gate fidelity f_mw.
Mat4 rotation_map(double f_mw);

// Photon-pair state (1 - eps)|psi0><psi0| + eps I/4 with eps = 4(1 - f_ph)/3.
Mat4 photon_pair_state(double f_ph);

// rho_tilde = 2 U rho_+ U^dag + 2 U_CP U rho_- U^dag U_CP.
Mat4 assemble(const Mat4& rho_plus, const Mat4& rho_minus);

EntanglementMetrics entanglement_metrics(const TwoQubitState& rho_tilde);

struct InterfaceEvaluation {
    TwoQubitState rho_tilde;
    EntanglementMetrics metrics;
    OverlapVector ix, ixx;
};

InterfaceEvaluation evaluate_interface(const InterfaceConfig& cfg, const PhotonPair& photons, double f_ph = 1.0,
                                       double f_mw = 1.0);

}  // namespace qrep
