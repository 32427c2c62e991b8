#include "qrep/photonics.hpp"

#include "qrep/errors.hpp"

#include <cmath>
#include <string>

namespace qrep {

using cplx = std::complex<double>;

void PhotonMode::validate() const {
    if (!(gamma > 0.0)) throw ContractViolation("photon bandwidth must be positive");
    if (!(epsilon0 > 0.0)) throw ContractViolation("photon amplitude must be positive");
}

cplx spectrum(const PhotonMode& mode, double omega) {
    return mode.epsilon0 / cplx(mode.gamma / 2, omega - mode.omega0);
}

double filter_kappa_for_target(double gamma, double gamma_tilde) {
    if (!(gamma_tilde > 0.0)) throw DomainError("filtered bandwidth must be positive");
    if (!(gamma_tilde < gamma)) {
        throw InfeasibleError("filtered bandwidth " + std::to_string(gamma_tilde) +
                              " is not below the source bandwidth " + std::to_string(gamma));
    }
    const double g2 = gamma * gamma, t2 = gamma_tilde * gamma_tilde;
    return 0.5 * gamma_tilde * std::sqrt((g2 + t2) / (g2 - t2));
}

FilterStage make_filter(double gamma, double gamma_tilde) {
    return {filter_kappa_for_target(gamma, gamma_tilde), gamma_tilde};
}

void check_filter(const PhotonMode& mode, const FilterStage& filter) {
    if (!(filter.target_bandwidth > 0.0 && filter.target_bandwidth < mode.gamma)) {
        throw ContractViolation("filter target bandwidth must lie in (0, source bandwidth)");
    }
    const double k = filter_kappa_for_target(mode.gamma, filter.target_bandwidth);
    if (std::abs(k - filter.kappa_f) > 1e-9 * k) {
        throw ContractViolation("filter kappa inconsistent with its target bandwidth");
    }
}

cplx filter_transfer(const FilterStage& filter, double detuning) {
    return filter.kappa_f / cplx(filter.kappa_f, detuning);
}

cplx filtered_spectrum(const PhotonMode& mode, const FilterStage& filter, double omega) {
    return filter_transfer(filter, omega - mode.omega0) * spectrum(mode, omega);
}

cplx filtered_time_mode(const PhotonMode& mode, const FilterStage& filter, double t) {
    if (t < 0.0) throw DomainError("time must be non-negative");
    const double k = filter.kappa_f, g = mode.gamma;
    const cplx phase = std::exp(cplx(0.0, mode.omega0 * t));
    const double d = k - g / 2;
    // (exp(-g t/2) - exp(-k t))/d; near d = 0 the expm1 form avoids cancellation,
    // elsewhere the difference form avoids 0 * inf at large t.
    const double envelope = std::abs(d * t) < 1.0 ? std::exp(-k * t) * (d == 0.0 ? t : std::expm1(d * t) / d)
                                                  : (std::exp(-g / 2 * t) - std::exp(-k * t)) / d;
    return mode.epsilon0 * k * phase * envelope;
}

double measured_fwhm(const std::function<double(double)>& intensity, double center, double scale) {
    const double half = 0.5 * intensity(center);
    auto flank = [&](double dir) {
        double lo = 0.0, hi = scale;
        while (intensity(center + dir * hi) > half) {
            lo = hi;
            hi *= 2;
            if (hi > 1e12 * scale) throw NumericalError("FWHM bracket not found");
        }
        for (int i = 0; i < 200 && hi - lo > 1e-15 * scale; ++i) {
            const double mid = 0.5 * (lo + hi);
            (intensity(center + dir * mid) > half ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    return flank(1.0) + flank(-1.0);
}

double source_energy(const PhotonMode& mode) {
    return 2 * M_PI * mode.epsilon0 * mode.epsilon0 / mode.gamma;
}

double filtered_energy(const PhotonMode& mode, const FilterStage& filter) {
    return source_energy(mode) * filter_transmission(mode.gamma, filter.kappa_f);
}

double filter_transmission(double gamma, double kappa_f) { return kappa_f / (kappa_f + gamma / 2); }

double rescaled_epsilon0(const PhotonMode& mode, const FilterStage& filter) {
    const double k = filter.kappa_f, h = mode.gamma / 2;
    // |a_in| is proportional to exp(-h t) - exp(-k t); its maximum sits where the
    // two exponentials' derivatives balance.
    double peak;
    if (std::abs(k - h) < 1e-12 * (k + h)) {
        peak = k / (h * M_E);
    } else {
        const double t = std::log(k / h) / (k - h);
        peak = k * (std::exp(-h * t) - std::exp(-k * t)) / (k - h);
    }
    return mode.epsilon0 / peak;
}

}  // namespace qrep
