#pragma once

#include <complex>
#include <functional>

namespace qrep {

// Lorentzian emission line a(t) = eps0 exp((i omega0 - gamma/2) t).
// All quantities share one angular-frequency unit; time is its inverse.
struct PhotonMode {
    double omega0 = 0.0;
    double gamma = 1.0;
    double epsilon0 = 1e-3;

    void validate() const;
};

// Lossless symmetric single-pole filter cavity.
struct FilterStage {
    double kappa_f = 0.0;
    double target_bandwidth = 0.0;
};

std::complex<double> spectrum(const PhotonMode& mode, double omega);

// kappa_f = (gt/2) sqrt((g^2 + gt^2) / (g^2 - gt^2)); requires 0 < gt < g.
double filter_kappa_for_target(double gamma, double gamma_tilde);

// Builds and checks a filter stage for the given source bandwidth.
FilterStage make_filter(double gamma, double gamma_tilde);

// Throws ContractViolation if the stage is inconsistent with the source mode.
void check_filter(const PhotonMode& mode, const FilterStage& filter);

// F(x) = kappa_f / (i x + kappa_f), x measured from the line centre.
std::complex<double> filter_transfer(const FilterStage& filter, double detuning);

std::complex<double> filtered_spectrum(const PhotonMode& mode, const FilterStage& filter, double omega);

// Causal time-domain mode at the filter output (t >= 0).
std::complex<double> filtered_time_mode(const PhotonMode& mode, const FilterStage& filter, double t);

// Full width at half maximum of a single-peaked intensity profile, found by
// bisection on each flank. `scale` is a rough width used to bracket the roots.
double measured_fwhm(const std::function<double(double)>& intensity, double center, double scale);

// Closed-form integrals of |S|^2 and |F S|^2 over the real line.
double source_energy(const PhotonMode& mode);
double filtered_energy(const PhotonMode& mode, const FilterStage& filter);

// Fraction of the source energy passed by the filter, kappa_f / (kappa_f + gamma/2).
double filter_transmission(double gamma, double kappa_f);

// Amplitude that makes the filtered temporal peak equal the unfiltered one.
double rescaled_epsilon0(const PhotonMode& mode, const FilterStage& filter);

}  // namespace qrep
