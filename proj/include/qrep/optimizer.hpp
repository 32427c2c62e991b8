#pragma once

#include "qrep/spin_photon.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace qrep {

struct NelderMeadOptions {
    double xtol = 1e-6;
    double ftol = 1e-9;
    int max_evals = 4000;
    std::vector<double> initial_step;  // per coordinate; empty -> 5% of |x| or 0.1
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0;
    int evals = 0;
    bool truncated = false;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                             const NelderMeadOptions& opt = {});

struct Interval {
    double lo, hi;
};

// Decision vector (delta_0, delta_c, kappa) in GHz.
struct SearchSpace {
    Interval delta_0{-60, 60};
    Interval delta_c{-60, 60};
    Interval kappa{0.5, 100};
    std::optional<double> cooperativity_cap;

    void validate() const;
};

struct RestartRecord {
    std::vector<double> start;
    std::vector<double> best;
    double infidelity;
    int evals;
};

struct OptimizationResult {
    double delta_0 = 0, delta_c = 0, kappa = 0;
    double infidelity = 1, efficiency = 0;
    int evaluations = 0;
    std::vector<RestartRecord> restarts;
};

struct InterfaceObjective {
    EmitterParams emitter;
    PhotonPair photons;
    double f_ph = 1.0;
    double f_mw = 1.0;
    double waveguide_fraction = 1.0;

    InterfaceConfig config(double delta_0, double delta_c, double kappa) const;
    EntanglementMetrics metrics(double delta_0, double delta_c, double kappa) const;
};

struct OptimizeOptions {
    int restarts = 64;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 -> hardware concurrency
    NelderMeadOptions local;
};

// Seeded, shifted Sobol starts followed by bounded simplex descent from each.
OptimizationResult optimize_interface(const InterfaceObjective& objective, const SearchSpace& space,
                                      const OptimizeOptions& options = {});

struct SweepRow {
    double gamma_xx_tilde;
    bool feasible;
    double infidelity;
    double efficiency;
};

// Filtered-bandwidth sweep of the XX photon at a fixed cavity.
std::vector<SweepRow> filter_sweep(const InterfaceObjective& objective, const InterfaceConfig& fixed,
                                   const std::vector<double>& gamma_xx_grid, unsigned threads = 0);

struct SensitivityCell {
    double delta_c, kappa, infidelity, efficiency;
};

struct SensitivityMap {
    int rows = 0, cols = 0;  // rows over delta_c, cols over kappa
    std::vector<SensitivityCell> cells;

    double max_infidelity() const;
    double min_efficiency() const;
};

SensitivityMap sensitivity_grid(const InterfaceObjective& objective, const InterfaceConfig& center,
                                double delta_c_span, double kappa_span, int resolution, unsigned threads = 0);

struct BandwidthOptions {
    double gamma_lo = 0.01;
    double gamma_hi = 20.0;
    double tolerance = 0.05;
    bool reoptimize = false;
    SearchSpace space;
    OptimizeOptions optimize;
};

struct BandwidthResult {
    double gamma;
    double infidelity;
    InterfaceConfig cavity;
};

// Largest symmetric bandwidth gamma_X = gamma_XX meeting the infidelity target.
BandwidthResult bandwidth_requirement(const InterfaceObjective& objective, const InterfaceConfig& fixed,
                                      double infidelity_target, const BandwidthOptions& options = {});

}  // namespace qrep
