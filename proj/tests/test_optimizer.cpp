#include "qrep/errors.hpp"
#include "qrep/optimizer.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qrep;

namespace {

InterfaceObjective objective_for(const EmitterParams& e, PhotonPair photons) {
    InterfaceObjective o;
    o.emitter = e;
    o.photons = photons;
    return o;
}

const PhotonPair kUnfiltered{{4.34, std::nullopt}, {8.33, std::nullopt}};

}  // namespace

TEST(NelderMead, QuadraticBowl) {
    const auto f = [](const std::vector<double>& x) {
        double s = 0;
        for (double v : x) s += (v - 3) * (v - 3);
        return s;
    };
    const NelderMeadResult r = nelder_mead(f, {0, 0, 0});
    for (double v : r.x) EXPECT_NEAR(v, 3.0, 1e-5);
    EXPECT_FALSE(r.truncated);
}

TEST(NelderMead, Rosenbrock) {
    const auto f = [](const std::vector<double>& x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    NelderMeadOptions opt;
    opt.xtol = 1e-9;
    opt.ftol = 1e-14;
    const NelderMeadResult r = nelder_mead(f, {-1.2, 1}, opt);
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, StartAtMinimumStaysPut) {
    const auto f = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
    const NelderMeadResult r = nelder_mead(f, {0, 0});
    EXPECT_EQ(r.fx, 0.0);
    EXPECT_NEAR(r.x[0], 0.0, 1e-6);
    EXPECT_NEAR(r.x[1], 0.0, 1e-6);
}

TEST(NelderMead, BudgetTruncates) {
    const auto f = [](const std::vector<double>& x) { return std::pow(x[0] - 10, 2) + std::pow(x[1] + 4, 2); };
    NelderMeadOptions opt;
    opt.max_evals = 10;
    const NelderMeadResult r = nelder_mead(f, {0, 0}, opt);
    EXPECT_TRUE(r.truncated);
    EXPECT_LE(r.fx, f({0, 0}));
}

TEST(SearchSpace, Validation) {
    SearchSpace s;
    s.kappa = {0, 10};
    EXPECT_THROW(s.validate(), ContractViolation);
    s.kappa = {5, 1};
    EXPECT_THROW(s.validate(), ContractViolation);
}

TEST(OptimizeInterface, DegenerateSpaceEchoesPoint) {
    const InterfaceConfig ref = siv_reference_point();
    SearchSpace s;
    s.delta_0 = {ref.delta_0, ref.delta_0};
    s.delta_c = {ref.cavity.delta_c, ref.cavity.delta_c};
    s.kappa = {ref.cavity.kappa, ref.cavity.kappa};
    OptimizeOptions o;
    o.restarts = 2;
    const OptimizationResult r = optimize_interface(objective_for(siv_emitter(), kUnfiltered), s, o);
    EXPECT_EQ(r.delta_0, ref.delta_0);
    EXPECT_EQ(r.delta_c, ref.cavity.delta_c);
    EXPECT_EQ(r.kappa, ref.cavity.kappa);
    const EntanglementMetrics m = evaluate_interface(ref, kUnfiltered).metrics;
    EXPECT_NEAR(r.infidelity, 1 - m.f_sp, 1e-12);
    EXPECT_NEAR(r.efficiency, m.eta_sp, 1e-12);
}

TEST(OptimizeInterface, SnvUnconstrainedOptimum) {
    const InterfaceObjective obj = objective_for(snv_emitter(), kUnfiltered);
    const OptimizationResult r = optimize_interface(obj, SearchSpace{});
    EXPECT_LE(r.infidelity, 0.07);
    const double c = obj.config(r.delta_0, r.delta_c, r.kappa).cavity.cooperativity_1A(obj.emitter);
    EXPECT_GT(c, 30);
    EXPECT_LT(c, 1000);
    // The reported value is a fresh evaluation at the reported point.
    EXPECT_NEAR(r.infidelity, 1 - obj.metrics(r.delta_0, r.delta_c, r.kappa).f_sp, 1e-9);
}

TEST(OptimizeInterface, CooperativityCapHonoured) {
    const InterfaceObjective obj = objective_for(snv_emitter(), kUnfiltered);
    SearchSpace s;
    s.cooperativity_cap = 25;
    OptimizeOptions o;
    o.restarts = 16;
    const OptimizationResult r = optimize_interface(obj, s, o);
    const CavityConfig cav = obj.config(r.delta_0, r.delta_c, r.kappa).cavity;
    EXPECT_LE(cav.cooperativity_1A(obj.emitter), 25 * (1 + 1e-9));
    EXPECT_LE(cav.cooperativity_2B(obj.emitter), 25 * (1 + 1e-9));
}

TEST(FilterSweep, NoOpLimitAndInfeasibleRows) {
    const InterfaceObjective obj = objective_for(siv_emitter(), kUnfiltered);
    const InterfaceConfig ref = siv_reference_point();
    const EntanglementMetrics plain = evaluate_interface(ref, kUnfiltered).metrics;
    // kappa_f grows like 1/sqrt(gap), so the filtered metrics close in on the plain ones slowly.
    const auto rows = filter_sweep(obj, ref, {8.33 - 1e-2, 8.33 - 1e-6, 8.33 - 1e-10, 8.33, 9.0, -1.0});
    double prev = 1;
    for (int i = 0; i < 3; ++i) {
        ASSERT_TRUE(rows[i].feasible);
        const double gap = std::abs(rows[i].infidelity - (1 - plain.f_sp)) + std::abs(rows[i].efficiency - plain.eta_sp);
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LT(prev, 1e-5);
    for (int i = 3; i < 6; ++i) EXPECT_FALSE(rows[i].feasible);
}

TEST(FilterSweep, BothFilteredEfficiency) {
    const InterfaceObjective obj = objective_for(siv_emitter(), PhotonPair{{4.34, 4.3267}, {8.33, std::nullopt}});
    InterfaceObjective noisy = obj;
    noisy.f_ph = 0.99;
    noisy.f_mw = 0.9999;
    const auto rows = filter_sweep(noisy, siv_reference_point(), {6.5});
    ASSERT_TRUE(rows[0].feasible);
    EXPECT_NEAR(rows[0].efficiency, 0.4167, 0.03);
}

TEST(FilterSweep, SnvFilteringBeatsNarrowSource) {
    // Cavity re-optimized for each photon pair; filtering 8.33 -> 6 vs a 6 GHz source.
    const InterfaceObjective filtered = objective_for(snv_emitter(), PhotonPair{{4.34, std::nullopt}, {8.33, 6.0}});
    const InterfaceObjective narrow = objective_for(snv_emitter(), PhotonPair{{4.34, std::nullopt}, {6.0, std::nullopt}});
    const OptimizationResult f = optimize_interface(filtered, SearchSpace{});
    const OptimizationResult n = optimize_interface(narrow, SearchSpace{});
    EXPECT_NEAR(f.infidelity, 0.022, 0.01);
    EXPECT_NEAR(n.infidelity, 0.05, 0.01);
}

TEST(Sensitivity, ZeroSpanIsPointEvaluation) {
    const InterfaceObjective obj = objective_for(siv_emitter(), kUnfiltered);
    const InterfaceConfig ref = siv_reference_point();
    const SensitivityMap m = sensitivity_grid(obj, ref, 0, 0, 21);
    ASSERT_EQ(m.cells.size(), 1u);
    EXPECT_NEAR(m.cells[0].infidelity, 1 - evaluate_interface(ref, kUnfiltered).metrics.f_sp, 1e-15);
    EXPECT_THROW(sensitivity_grid(obj, ref, -1, 1, 5), DomainError);
}

TEST(Sensitivity, SivNeighbourhoodStaysGood) {
    const InterfaceObjective obj = objective_for(siv_emitter(), kUnfiltered);
    const SensitivityMap m = sensitivity_grid(obj, siv_reference_point(), 1, 1, 11);
    EXPECT_EQ(m.rows, 11);
    EXPECT_EQ(m.cols, 11);
    EXPECT_LE(m.max_infidelity(), 8.11e-2 + 0.01);
    EXPECT_GE(m.min_efficiency(), 0.9175 - 0.03);
}

TEST(Bandwidth, VacuousTargetReturnsUpperBound) {
    const InterfaceObjective obj = objective_for(siv_emitter(), kUnfiltered);
    BandwidthOptions opt;
    const BandwidthResult r = bandwidth_requirement(obj, siv_reference_point(), 1.0, opt);
    EXPECT_EQ(r.gamma, opt.gamma_hi);
}

TEST(Bandwidth, UnreachableTargetIsInfeasible) {
    const InterfaceObjective obj = objective_for(siv_emitter(), kUnfiltered);
    EXPECT_THROW(bandwidth_requirement(obj, siv_reference_point(), 1e-6), InfeasibleError);
    EXPECT_THROW(bandwidth_requirement(obj, siv_reference_point(), 0.0), DomainError);
}

TEST(Bandwidth, SnvCappedCooperativity) {
    const InterfaceObjective obj = objective_for(snv_emitter(), kUnfiltered);
    BandwidthOptions opt;
    opt.reoptimize = true;
    opt.gamma_lo = 0.05;
    opt.gamma_hi = 4.0;
    opt.space.cooperativity_cap = 25;
    opt.optimize.restarts = 32;
    const BandwidthResult r = bandwidth_requirement(obj, snv_reference_point(), 7.9e-2, opt);
    EXPECT_NEAR(r.gamma, 0.48, 0.1);
    EXPECT_LE(r.infidelity, 7.9e-2);
}
