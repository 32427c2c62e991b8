#include "qrep/spin_photon.hpp"

#include "qrep/errors.hpp"
#include "qrep/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qrep {

namespace {

constexpr double kOverlapTol = 1e-10;

// gamma = g^2 / (2 C kappa) recovers the linewidth from a published cooperativity.
double linewidth_from_cooperativity(double g, double c, double kappa) { return g * g / (2 * c * kappa); }

}  // namespace

void EmitterParams::validate() const {
    if (!(gamma_1A > 0 && gamma_2B > 0 && g_1A > 0 && g_2B > 0)) {
        throw ContractViolation("emitter rates and couplings must be positive");
    }
    if (!std::isfinite(contrast())) throw ContractViolation("branch contrast must be finite");
}

void CavityConfig::validate() const {
    if (!(kappa > 0)) throw ContractViolation("cavity kappa must be positive");
    if (!(waveguide_fraction > 0 && waveguide_fraction <= 1)) {
        throw ContractViolation("waveguide fraction must lie in (0, 1]");
    }
}

void OverlapVector::validate() const {
    const double lim = 0.25 + kOverlapTol;
    for (cplx v : {i1, i3}) {
        if (std::abs(v.imag()) > kOverlapTol || v.real() < -kOverlapTol || v.real() > lim) {
            throw ContractViolation("diagonal overlaps must be real and within [0, 1/4]");
        }
    }
    if (i2_conj != std::conj(i2)) throw ContractViolation("i2_conj must equal conj(i2)");
}

EmitterParams siv_emitter() {
    EmitterParams e;
    e.label = "SiV";
    e.g_1A = 12.5;
    e.g_2B = 13.17;
    e.gamma_1A = linewidth_from_cooperativity(12.5, 11.39, 37.70);
    e.gamma_2B = linewidth_from_cooperativity(13.17, 13.11, 37.70);
    e.omega_1A = 0.0;
    e.omega_2B = -8.34;
    return e;
}

EmitterParams snv_emitter() {
    EmitterParams e;
    e.label = "SnV";
    e.g_1A = 5.17;
    e.g_2B = 5.22;
    e.gamma_1A = linewidth_from_cooperativity(5.17, 155.83, 6.69);
    e.gamma_2B = linewidth_from_cooperativity(5.22, 161.86, 6.69);
    e.omega_1A = 0.0;
    e.omega_2B = 8.7;
    return e;
}

InterfaceConfig siv_reference_point() {
    return {siv_emitter(), CavityConfig{37.70, -4.07, 1.0}, 5.44};
}

InterfaceConfig snv_reference_point() {
    return {snv_emitter(), CavityConfig{6.69, -4.50, 1.0}, -4.51};
}

cplx reflection(double omega, Branch branch, const EmitterParams& emitter, const CavityConfig& cavity) {
    const bool one = branch == Branch::spin1;
    const double w_t = one ? emitter.omega_1A : emitter.omega_2B;
    const double g_t = one ? emitter.g_1A : emitter.g_2B;
    const double gam = one ? emitter.gamma_1A : emitter.gamma_2B;
    const cplx atom(gam / 2, omega - w_t);
    const cplx cav(cavity.kappa, omega - cavity.omega_c(emitter));
    const double k_wg = cavity.waveguide_fraction * cavity.kappa;
    return 1.0 - 2.0 * k_wg * atom / (cav * atom + g_t * g_t);
}

PhotonMode make_mode(const InterfaceConfig& cfg, const PhotonLine& line) {
    PhotonMode m;
    m.omega0 = cfg.omega_0();
    m.gamma = rate_to_frequency(line.gamma);
    // Weak drive: keep the amplitude far below the slowest emitter decay.
    m.epsilon0 = 1e-3 * std::min(cfg.emitter.gamma_1A, cfg.emitter.gamma_2B);
    return m;
}

std::optional<FilterStage> make_line_filter(const PhotonLine& line) {
    if (!line.gamma_tilde) return std::nullopt;
    return make_filter(rate_to_frequency(line.gamma), rate_to_frequency(*line.gamma_tilde));
}

OverlapVector overlap_integrals(const PhotonMode& mode, const std::optional<FilterStage>& filter,
                                const EmitterParams& emitter, const CavityConfig& cavity) {
    mode.validate();
    emitter.validate();
    cavity.validate();
    if (mode.epsilon0 > 1e-2 * std::min(emitter.gamma_1A, emitter.gamma_2B)) {
        throw ContractViolation("photon amplitude violates the weak-drive condition");
    }
    if (filter) check_filter(mode, *filter);

    // omega = omega0 + (gamma/2) tan(theta) maps the Lorentzian weight to d(theta)/pi.
    const double half = mode.gamma / 2;
    auto omega_of = [&](double th) { return mode.omega0 + half * std::tan(th); };
    auto weight = [&](double th) {
        if (!filter) return 1.0 / M_PI;
        const double x = half * std::tan(th);
        const double k = filter->kappa_f;
        return filter->target_bandwidth / mode.gamma * k * k / (x * x + k * k) / M_PI;
    };

    std::vector<double> cuts{-M_PI / 2, M_PI / 2};
    for (double w : {emitter.omega_1A, emitter.omega_2B, cavity.omega_c(emitter)}) {
        cuts.push_back(std::atan((w - mode.omega0) / half));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-12; }), cuts.end());

    QuadOptions opt;
    opt.epsabs = kOverlapTol / 8;
    opt.epsrel = 1e-10;
    auto integrate_all = [&](auto&& f) {
        double total = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            total += integrate([&](double th) { return weight(th) * f(omega_of(th)); }, cuts[i], cuts[i + 1], opt);
        }
        return 0.25 * total;
    };
    auto r1 = [&](double w) { return reflection(w, Branch::spin1, emitter, cavity); };
    auto r2 = [&](double w) { return reflection(w, Branch::spin2, emitter, cavity); };

    const double i1 = integrate_all([&](double w) { return std::norm(r1(w)); });
    const double i3 = integrate_all([&](double w) { return std::norm(r2(w)); });
    const double i2r = integrate_all([&](double w) { return (r1(w) * std::conj(r2(w))).real(); });
    const double i2i = integrate_all([&](double w) { return (r1(w) * std::conj(r2(w))).imag(); });
    return OverlapVector::uniform(i1, cplx(i2r, i2i), i3);
}

Mat4 rotation_map(double f_mw) {
    if (!(f_mw >= 0.5 && f_mw <= 1.0)) throw DomainError("rotation fidelity must lie in [0.5, 1]");
    const Mat4 u = gates::half_pi();
    Mat4 start = Mat4::Zero();
    start(0, 0) = 1;
    Mat4 lam = u * start * u.adjoint();
    // Single-qubit depolarizing p has average gate fidelity 1 - p/2.
    const double p = 2 * (1 - f_mw);
    lam = depolarize_one(lam, p, Qubit::first);
    lam = depolarize_one(lam, p, Qubit::second);
    return lam;
}

Mat4 photon_pair_state(double f_ph) {
    if (!(f_ph >= 0.25 && f_ph <= 1.0)) throw DomainError("photon pair fidelity must lie in [0.25, 1]");
    const double eps = 4 * (1 - f_ph) / 3;
    const Vec4 psi = bell_vector();
    return (1 - eps) * psi * psi.adjoint() + eps * Mat4::Identity() / 4.0;
}

Mat4 rho_pm_tensor(const Mat4& photon_rho, const Mat4& lambda, int sign, const OverlapVector& ix,
                   const OverlapVector& ixx) {
    // Tensor construction uses overlaps normalized to one per photon, i.e. 2x the
    // quarter-normalized pair, so that the four photon terms carry weight 1/4 each.
    const auto a = ix.as_array();
    const auto b = ixx.as_array();
    auto IX = [&](int idx) { return 2.0 * a[idx]; };
    auto IXX = [&](int idx) { return 2.0 * b[idx]; };
    const double s = sign >= 0 ? 1.0 : -1.0;

    Mat4 out = Mat4::Zero();
    for (int I = 0; I < 2; ++I)
        for (int J = 0; J < 2; ++J)
            for (int K = 0; K < 2; ++K)
                for (int M = 0; M < 2; ++M) {
                    const cplx c = photon_rho(2 * I + J, 2 * K + M);
                    if (c == 0.0) continue;
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n)
                            for (int k = 0; k < 2; ++k)
                                for (int l = 0; l < 2; ++l) {
                                    // 0 = early, 1 = late for I, J, K, M.
                                    cplx z = 0;
                                    if (I == 0 && J == 0 && K == 0 && M == 0) z = IX(0) * IXX(0);
                                    else if (I == 0 && J == 1 && K == 0 && M == 1) z = IX(0) * IXX(2 * n + l);
                                    else if (I == 1 && J == 0 && K == 1 && M == 0) z = IX(2 * m + k) * IXX(0);
                                    else if (I == 1 && J == 1 && K == 1 && M == 1) z = IX(2 * m + k) * IXX(2 * n + l);
                                    else if (I == 0 && J == 0 && K == 1 && M == 1) z = s * IX(k) * IXX(l);
                                    else if (I == 1 && J == 1 && K == 0 && M == 0) z = s * IX(2 * m) * IXX(2 * n);
                                    if (z == 0.0) continue;
                                    out(2 * m + n, 2 * k + l) += c * lambda(2 * m + n, 2 * k + l) * z;
                                }
                }
    return out;
}

Mat4 rho_pm_closed_form(cplx alpha, cplx beta, int sign, const OverlapVector& ix, const OverlapVector& ixx) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    const cplx aa = std::norm(alpha), bb = std::norm(beta);
    const cplx ab = alpha * std::conj(beta), ba = std::conj(alpha) * beta;
    Mat4 out;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    out(2 * m + n, 2 * k + l) = aa * ix.element(0, 0) * ixx.element(0, 0) +
                                                s * ab * ix.element(0, k) * ixx.element(0, l) +
                                                s * ba * ix.element(m, 0) * ixx.element(n, 0) +
                                                bb * ix.element(m, k) * ixx.element(n, l);
                }
    return out;
}

Mat4 assemble(const Mat4& rho_plus, const Mat4& rho_minus) {
    const Mat4 u = gates::half_pi();
    const Mat4 cp = gates::cphase();
    return 2.0 * u * rho_plus * u.adjoint() + 2.0 * cp * u * rho_minus * u.adjoint() * cp;
}

TwoQubitState spin_spin_state(double f_ph, double f_mw, const OverlapVector& ix, const OverlapVector& ixx) {
    ix.validate();
    ixx.validate();
    const Mat4 photons = photon_pair_state(f_ph);
    const Mat4 lam = rotation_map(f_mw);
    const Mat4 plus = rho_pm_tensor(photons, lam, +1, ix, ixx);
    const Mat4 minus = rho_pm_tensor(photons, lam, -1, ix, ixx);
    return TwoQubitState(assemble(plus, minus));
}

EntanglementMetrics entanglement_metrics(const TwoQubitState& rho_tilde) {
    const double eta = rho_tilde.trace();
    if (!(eta > 0)) throw NumericalError("heralded state has zero trace");
    return {eta, bell_fidelity(rho_tilde.normalized())};
}

InterfaceEvaluation evaluate_interface(const InterfaceConfig& cfg, const PhotonPair& photons, double f_ph,
                                       double f_mw) {
    const PhotonMode mx = make_mode(cfg, photons.x);
    const PhotonMode mxx = make_mode(cfg, photons.xx);
    const OverlapVector ix = overlap_integrals(mx, make_line_filter(photons.x), cfg.emitter, cfg.cavity);
    const OverlapVector ixx = overlap_integrals(mxx, make_line_filter(photons.xx), cfg.emitter, cfg.cavity);
    TwoQubitState rho = spin_spin_state(f_ph, f_mw, ix, ixx);
    const EntanglementMetrics met = entanglement_metrics(rho);
    return {rho, met, ix, ixx};
}

}  // namespace qrep
