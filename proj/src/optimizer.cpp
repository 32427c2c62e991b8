#include "qrep/optimizer.hpp"

#include "qrep/errors.hpp"
#include "qrep/parallel.hpp"

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qrep {

namespace {

using Vec = std::vector<double>;

constexpr double kPenalty = 1e3;

double clamp_to(double v, const Interval& iv) { return std::min(std::max(v, iv.lo), iv.hi); }

double distance_outside(double v, const Interval& iv) {
    if (v < iv.lo) return iv.lo - v;
    if (v > iv.hi) return v - iv.hi;
    return 0.0;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, Vec start, const NelderMeadOptions& opt) {
    const std::size_t n = start.size();
    NelderMeadResult res;
    std::vector<Vec> simplex(n + 1, start);
    Vec fv(n + 1);
    int evals = 0;
    auto eval = [&](const Vec& x) {
        ++evals;
        return f(x);
    };
    fv[0] = eval(start);
    for (std::size_t i = 0; i < n; ++i) {
        double step = i < opt.initial_step.size() ? opt.initial_step[i]
                                                  : (start[i] != 0.0 ? 0.05 * std::abs(start[i]) : 0.1);
        simplex[i + 1][i] += step;
        fv[i + 1] = step == 0.0 ? fv[0] : eval(simplex[i + 1]);
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        // Stable sort keeps the start vertex first among equals.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<Vec> s2(n + 1);
        Vec f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[order[i]];
            f2[i] = fv[order[i]];
        }
        simplex.swap(s2);
        fv.swap(f2);
    };

    while (true) {
        sort_simplex();
        double diam = 0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j) diam = std::max(diam, std::abs(simplex[i][j] - simplex[0][j]));
        const double spread = fv[n] - fv[0];
        if (diam < opt.xtol && spread < opt.ftol) break;
        if (evals >= opt.max_evals) {
            res.truncated = true;
            break;
        }

        Vec centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;
        auto along = [&](double t) {
            Vec x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
            return x;
        };

        const Vec xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < fv[0]) {
            const Vec xe = along(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
            continue;
        }
        if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
            continue;
        }
        const bool outside = fr < fv[n];
        const Vec xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[n])) {
            simplex[n] = xc;
            fv[n] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
            fv[i] = eval(simplex[i]);
        }
    }
    sort_simplex();
    res.x = simplex[0];
    res.fx = fv[0];
    res.evals = evals;
    return res;
}

void SearchSpace::validate() const {
    for (const Interval* iv : {&delta_0, &delta_c, &kappa}) {
        if (!(iv->lo <= iv->hi)) throw ContractViolation("search interval is empty");
    }
    if (!(kappa.lo > 0)) throw ContractViolation("kappa lower bound must be positive");
    if (cooperativity_cap && !(*cooperativity_cap > 0)) throw ContractViolation("cooperativity cap must be positive");
}

InterfaceConfig InterfaceObjective::config(double delta_0, double delta_c, double kappa) const {
    return {emitter, CavityConfig{kappa, delta_c, waveguide_fraction}, delta_0};
}

EntanglementMetrics InterfaceObjective::metrics(double delta_0, double delta_c, double kappa) const {
    return evaluate_interface(config(delta_0, delta_c, kappa), photons, f_ph, f_mw).metrics;
}

OptimizationResult optimize_interface(const InterfaceObjective& objective, const SearchSpace& space,
                                      const OptimizeOptions& options) {
    space.validate();
    if (options.restarts < 1) throw ContractViolation("at least one restart is required");
    const Interval* bounds[3] = {&space.delta_0, &space.delta_c, &space.kappa};

    // Minimum kappa allowed by a cooperativity cap on both branches.
    double kappa_floor = 0.0;
    if (space.cooperativity_cap) {
        const auto& e = objective.emitter;
        kappa_floor = std::max(e.g_1A * e.g_1A / (2 * e.gamma_1A * *space.cooperativity_cap),
                               e.g_2B * e.g_2B / (2 * e.gamma_2B * *space.cooperativity_cap));
    }

    auto penalized = [&](const Vec& x) {
        double out = 0;
        for (int i = 0; i < 3; ++i) out += distance_outside(x[i], *bounds[i]);
        out += std::max(0.0, kappa_floor - x[2]);
        if (out > 0) return kPenalty + out;
        try {
            return 1.0 - objective.metrics(x[0], x[1], x[2]).f_sp;
        } catch (const NumericalError&) {
            return kPenalty;
        }
    };

    // Shifted Sobol points: deterministic for a seed, stratified over the box.
    std::vector<Vec> starts(options.restarts, Vec(3));
    {
        boost::random::sobol qrng(3);
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double shift[3] = {uni(rng), uni(rng), uni(rng)};
        for (auto& s : starts) {
            for (int d = 0; d < 3; ++d) {
                const double u = static_cast<double>(qrng()) / (static_cast<double>(qrng.max()) + 1.0);
                double v = u + shift[d];
                v -= std::floor(v);
                s[d] = bounds[d]->lo + v * (bounds[d]->hi - bounds[d]->lo);
            }
            s[2] = std::max(s[2], std::min(kappa_floor, bounds[2]->hi));
        }
    }

    NelderMeadOptions local = options.local;
    if (local.initial_step.empty()) {
        for (int d = 0; d < 3; ++d) local.initial_step.push_back(0.05 * (bounds[d]->hi - bounds[d]->lo));
    }

    std::vector<RestartRecord> records(starts.size());
    parallel_for(starts.size(), options.threads, [&](std::size_t i) {
        const NelderMeadResult r = nelder_mead(penalized, starts[i], local);
        records[i] = {starts[i], r.x, r.fx, r.evals};
    });

    std::size_t best = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].infidelity >= kPenalty) continue;
        if (best == records.size()) {
            best = i;
            continue;
        }
        const double diff = records[i].infidelity - records[best].infidelity;
        if (diff < -1e-12 || (std::abs(diff) <= 1e-12 && records[i].best[2] < records[best].best[2])) best = i;
    }
    if (best == records.size()) throw NumericalError("every optimizer start failed to evaluate");

    OptimizationResult out;
    const Vec& x = records[best].best;
    out.delta_0 = clamp_to(x[0], space.delta_0);
    out.delta_c = clamp_to(x[1], space.delta_c);
    out.kappa = clamp_to(x[2], space.kappa);
    const EntanglementMetrics m = objective.metrics(out.delta_0, out.delta_c, out.kappa);
    out.infidelity = 1.0 - m.f_sp;
    out.efficiency = m.eta_sp;
    for (const auto& r : records) out.evaluations += r.evals;
    out.restarts = std::move(records);
    return out;
}

std::vector<SweepRow> filter_sweep(const InterfaceObjective& objective, const InterfaceConfig& fixed,
                                   const std::vector<double>& gamma_xx_grid, unsigned threads) {
    std::vector<SweepRow> rows(gamma_xx_grid.size());
    parallel_for(gamma_xx_grid.size(), threads, [&](std::size_t i) {
        const double gt = gamma_xx_grid[i];
        SweepRow row{gt, false, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        if (gt > 0 && gt < objective.photons.xx.gamma) {
            PhotonPair p = objective.photons;
            p.xx.gamma_tilde = gt;
            const EntanglementMetrics m = evaluate_interface(fixed, p, objective.f_ph, objective.f_mw).metrics;
            row = {gt, true, 1.0 - m.f_sp, m.eta_sp};
        }
        rows[i] = row;
    });
    return rows;
}

double SensitivityMap::max_infidelity() const {
    double v = -1;
    for (const auto& c : cells) v = std::max(v, c.infidelity);
    return v;
}

double SensitivityMap::min_efficiency() const {
    double v = 2;
    for (const auto& c : cells) v = std::min(v, c.efficiency);
    return v;
}

SensitivityMap sensitivity_grid(const InterfaceObjective& objective, const InterfaceConfig& center,
                                double delta_c_span, double kappa_span, int resolution, unsigned threads) {
    if (delta_c_span < 0 || kappa_span < 0) throw DomainError("sensitivity spans must be non-negative");
    if (resolution < 1) throw DomainError("resolution must be at least 1");
    SensitivityMap map;
    map.rows = delta_c_span == 0 ? 1 : resolution;
    map.cols = kappa_span == 0 ? 1 : resolution;
    auto axis = [](double c, double span, int count, int i) {
        return count == 1 ? c : c - span + 2 * span * i / (count - 1);
    };
    map.cells.resize(static_cast<std::size_t>(map.rows) * map.cols);
    parallel_for(map.cells.size(), threads, [&](std::size_t idx) {
        const int r = static_cast<int>(idx) / map.cols, c = static_cast<int>(idx) % map.cols;
        InterfaceConfig cfg = center;
        cfg.cavity.delta_c = axis(center.cavity.delta_c, delta_c_span, map.rows, r);
        cfg.cavity.kappa = axis(center.cavity.kappa, kappa_span, map.cols, c);
        const EntanglementMetrics m = evaluate_interface(cfg, objective.photons, objective.f_ph, objective.f_mw).metrics;
        map.cells[idx] = {cfg.cavity.delta_c, cfg.cavity.kappa, 1.0 - m.f_sp, m.eta_sp};
    });
    return map;
}

BandwidthResult bandwidth_requirement(const InterfaceObjective& objective, const InterfaceConfig& fixed,
                                      double infidelity_target, const BandwidthOptions& options) {
    if (!(infidelity_target > 0)) throw DomainError("infidelity target must be positive");
    auto at = [&](double gamma) {
        InterfaceObjective obj = objective;
        obj.photons = PhotonPair{{gamma, std::nullopt}, {gamma, std::nullopt}};
        if (!options.reoptimize) {
            const EntanglementMetrics m = evaluate_interface(fixed, obj.photons, obj.f_ph, obj.f_mw).metrics;
            return BandwidthResult{gamma, 1.0 - m.f_sp, fixed};
        }
        const OptimizationResult r = optimize_interface(obj, options.space, options.optimize);
        return BandwidthResult{gamma, r.infidelity, obj.config(r.delta_0, r.delta_c, r.kappa)};
    };
    BandwidthResult hi = at(options.gamma_hi);
    if (hi.infidelity <= infidelity_target) return hi;
    BandwidthResult lo = at(options.gamma_lo);
    if (lo.infidelity > infidelity_target) {
        throw InfeasibleError("infidelity target unreachable even at the narrowest bandwidth");
    }
    double a = options.gamma_lo, b = options.gamma_hi;
    while (b - a > options.tolerance) {
        const double mid = 0.5 * (a + b);
        BandwidthResult r = at(mid);
        if (r.infidelity <= infidelity_target) {
            a = mid;
            lo = r;
        } else {
            b = mid;
        }
    }
    return lo;
}

}  // namespace qrep
