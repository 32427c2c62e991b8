#include "qrep/chain.hpp"
#include "qrep/csv.hpp"
#include "qrep/errors.hpp"
#include "qrep/optimizer.hpp"
#include "qrep/scenario.hpp"
#include "qrep/spin_photon.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace qrep;

namespace {

struct Options {
    std::string scenario;
    std::string out = ".";
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string format = "csv";
};

using Outputs = std::vector<std::pair<std::string, Table>>;

InterfaceObjective objective_of(const Scenario& s) {
    InterfaceObjective o;
    o.emitter = *s.emitter;
    o.photons = s.photon->photons;
    o.f_ph = s.photon->f_ph;
    o.f_mw = s.photon->f_mw;
    o.waveguide_fraction = s.cavity->waveguide_fraction;
    return o;
}

Outputs optimize_cavity(const Scenario& s, const Options& opt) {
    s.require({"emitter", "cavity", "photon"});
    OptimizeOptions oo;
    oo.restarts = s.cavity->restarts;
    oo.seed = opt.seed;
    oo.threads = opt.threads;
    const InterfaceObjective obj = objective_of(s);
    const OptimizationResult r = optimize_interface(obj, s.cavity->space, oo);
    const InterfaceConfig cfg = obj.config(r.delta_0, r.delta_c, r.kappa);
    Table t({"delta_0", "delta_c", "kappa", "infidelity", "efficiency", "cooperativity_1A", "cooperativity_2B",
             "evaluations"});
    t.add({r.delta_0, r.delta_c, r.kappa, r.infidelity, r.efficiency, cfg.cavity.cooperativity_1A(obj.emitter),
           cfg.cavity.cooperativity_2B(obj.emitter), static_cast<long>(r.evaluations)});
    Table restarts({"restart", "start_delta_0", "start_delta_c", "start_kappa", "delta_0", "delta_c", "kappa",
                    "infidelity", "evaluations"});
    for (std::size_t i = 0; i < r.restarts.size(); ++i) {
        const RestartRecord& rr = r.restarts[i];
        restarts.add({static_cast<long>(i), rr.start[0], rr.start[1], rr.start[2], rr.best[0], rr.best[1], rr.best[2],
                      rr.infidelity, static_cast<long>(rr.evals)});
    }
    return {{"optimize-cavity", t}, {"optimize-cavity_restarts", restarts}};
}

Outputs spin_state(const Scenario& s, const Options&) {
    s.require({"emitter", "cavity", "photon"});
    const InterfaceConfig cfg = s.cavity->point(*s.emitter);
    const InterfaceEvaluation ev = evaluate_interface(cfg, s.photon->photons, s.photon->f_ph, s.photon->f_mw);
    Table m({"row", "col", "re", "im"});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const cplx v = ev.rho_tilde.matrix()(i, j);
            m.add({static_cast<long>(i), static_cast<long>(j), v.real(), v.imag()});
        }
    Table summary({"infidelity", "efficiency", "i1_x", "i3_x", "i1_xx", "i3_xx"});
    summary.add({1.0 - ev.metrics.f_sp, ev.metrics.eta_sp, ev.ix.i1.real(), ev.ix.i3.real(), ev.ixx.i1.real(),
                 ev.ixx.i3.real()});
    return {{"spin-state", m}, {"spin-state_metrics", summary}};
}

Outputs filter_sweep_cmd(const Scenario& s, const Options& opt) {
    s.require({"emitter", "cavity", "photon", "filter"});
    if (s.filter->gamma_xx_grid.empty()) throw ScenarioError("[filter] filter-sweep needs gamma_xx_tilde_GHz");
    const InterfaceConfig cfg = s.cavity->point(*s.emitter);
    const auto rows = filter_sweep(objective_of(s), cfg, s.filter->gamma_xx_grid, opt.threads);
    Table t({"gamma_xx_tilde", "infidelity", "efficiency"});
    for (const SweepRow& r : rows) {
        if (!r.feasible) {
            std::cerr << "skipping gamma_xx_tilde=" << format_number(r.gamma_xx_tilde)
                      << ": filter must be narrower than the source\n";
            continue;
        }
        t.add({r.gamma_xx_tilde, r.infidelity, r.efficiency});
    }
    if (t.rows().empty()) throw InfeasibleError("no feasible filter bandwidth in the sweep grid");
    return {{"filter-sweep", t}};
}

Outputs sensitivity_cmd(const Scenario& s, const Options& opt) {
    s.require({"emitter", "cavity", "photon"});
    const InterfaceConfig cfg = s.cavity->point(*s.emitter);
    const double span = s.cavity->sensitivity_span;
    const SensitivityMap map =
        sensitivity_grid(objective_of(s), cfg, span, span, s.cavity->sensitivity_resolution, opt.threads);
    Table t({"delta_c", "kappa", "infidelity", "efficiency"});
    for (const auto& c : map.cells) t.add({c.delta_c, c.kappa, c.infidelity, c.efficiency});
    Table summary({"max_infidelity", "min_efficiency"});
    summary.add({map.max_infidelity(), map.min_efficiency()});
    return {{"sensitivity", t}, {"sensitivity_summary", summary}};
}

Outputs bandwidth_cmd(const Scenario& s, const Options& opt) {
    s.require({"emitter", "cavity", "photon"});
    BandwidthOptions bo;
    bo.space = s.cavity->space;
    bo.optimize.restarts = s.cavity->restarts;
    bo.optimize.seed = opt.seed;
    bo.optimize.threads = opt.threads;
    bo.reoptimize = !s.cavity->has_point();
    const InterfaceObjective obj = objective_of(s);
    const InterfaceConfig fixed = bo.reoptimize ? obj.config(0, 0, 1) : s.cavity->point(*s.emitter);
    const BandwidthResult r = bandwidth_requirement(obj, fixed, s.cavity->target_infidelity, bo);
    Table t({"gamma", "infidelity", "target", "delta_0", "delta_c", "kappa"});
    t.add({r.gamma, r.infidelity, s.cavity->target_infidelity, r.cavity.delta_0, r.cavity.cavity.delta_c,
           r.cavity.cavity.kappa});
    return {{"bandwidth-req", t}};
}

Outputs chain_rate(const Scenario& s, const Options&) {
    s.require({"chain", "scan"});
    if (!s.scan->point) throw ScenarioError("[scan] chain-rate needs point_N, point_n_loa, point_n_dis_n, point_n_dis_e");
    Table t({"L", "N", "n_loa", "n_dis_n", "n_dis_e", "m_p", "m_s", "expected_links", "q_z", "q_x", "r_sk", "R_sk"});
    for (double L : s.scan->distances_km) {
        const EngineeringChoice& c = *s.scan->point;
        const KeyRate k = secret_key_rate(s.chain->params, c, L);
        t.add({L, static_cast<long>(c.n_segments), static_cast<long>(c.n_loa), static_cast<long>(c.level_elementary),
               static_cast<long>(c.level_end), k.yield.m_p, k.yield.m_s, k.expected_links, k.q_z, k.q_x, k.r_sk,
               k.R_sk});
    }
    return {{"chain-rate", t}};
}

Outputs scan_cmd(const Scenario& s, const Options& opt) {
    s.require({"chain", "scan"});
    const ScanGrid grid = s.scan->grid();
    Table t({"L", "N", "n_loa", "n_dis_n", "n_dis_e", "R_sk"});
    for (double L : s.scan->distances_km) {
        const ScanResult r = scan(s.chain->params, L, grid, opt.threads);
        const EngineeringChoice& c = r.best.choice;
        t.add({L, static_cast<long>(c.n_segments), static_cast<long>(c.n_loa), static_cast<long>(c.level_elementary),
               static_cast<long>(c.level_end), r.best.rate.R_sk});
    }
    return {{"scan", t}};
}

Outputs mc_validate(const Scenario& s, const Options& opt) {
    s.require({"chain", "scan"});
    if (!s.scan->point) throw ScenarioError("[scan] mc-validate needs point_N, point_n_loa, point_n_dis_n, point_n_dis_e");
    const ChainParams& p = s.chain->params;
    const EngineeringChoice& c = *s.scan->point;
    Table t({"L", "m_s", "N", "p_arm", "P_ee", "closed_form", "mc_mean", "mc_stderr", "z"});
    for (double L : s.scan->distances_km) {
        const LinkProbabilities lp = link_probabilities(p, c, L);
        const EndToEnd e2e = end_to_end_state(p, c, L);
        const LoadingYield y = loading_yield(p, c, L, e2e.eta_dis_n);
        const double exact = expected_end_links(y.m_s, c.n_segments, lp.p_arm, lp.P_ee);
        const MonteCarloEstimate mc =
            monte_carlo_end_links(y.m_s, c.n_segments, lp.p_arm, lp.P_ee, s.scan->mc_trials, opt.seed, opt.threads);
        const double z = mc.stderr_ > 0 ? (mc.mean - exact) / mc.stderr_ : 0.0;
        t.add({L, y.m_s, static_cast<long>(c.n_segments), lp.p_arm, lp.P_ee, exact, mc.mean, mc.stderr_, z});
    }
    return {{"mc-validate", t}};
}

void write_outputs(const Scenario& s, const std::string& sub, const Options& opt, const Outputs& outs,
                   double wall_seconds) {
    fs::create_directories(opt.out);
    Manifest man;
    man.subcommand = sub;
    man.scenario_path = opt.scenario;
    man.seed = opt.seed;
    man.threads = opt.threads;
    man.wall_seconds = wall_seconds;
    for (const auto& [section, kv] : s.raw) man.inputs.push_back({section, {kv.begin(), kv.end()}});
    if (s.chain) {
        man.inputs.push_back({"chain.resolved", describe(s.chain->params)});
        for (const auto& d : s.chain->defaulted) man.defaulted.push_back("chain." + d);
    }
    for (const auto& [name, table] : outs) {
        const std::string file = name + (opt.format == "json" ? ".json" : ".csv");
        std::ofstream f(fs::path(opt.out) / file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(opt.out) / file).string());
        if (opt.format == "json") table.write_json(f);
        else table.write_csv(f);
        man.outputs.push_back(file);
    }
    std::ofstream mf(fs::path(opt.out) / (sub + "_manifest.json"), std::ios::binary);
    man.write(mf);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum repeater interface and chain models"};
    app.set_version_flag("--version", std::string(QREP_VERSION));
    Options opt;
    app.add_option("--scenario", opt.scenario, "Scenario INI file")->required();
    app.add_option("--out", opt.out, "Output directory");
    app.add_option("--seed", opt.seed, "Random seed");
    app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    app.add_option("--format", opt.format, "Result format")->check(CLI::IsMember({"csv", "json"}));
    app.require_subcommand(1, 1);
    app.fallthrough();

    const std::map<std::string, std::pair<std::string, Outputs (*)(const Scenario&, const Options&)>> commands{
        {"optimize-cavity", {"Multi-start cavity and carrier optimization", optimize_cavity}},
        {"spin-state", {"Heralded spin-spin state at a fixed cavity", spin_state}},
        {"filter-sweep", {"Infidelity and efficiency versus filtered XX bandwidth", filter_sweep_cmd}},
        {"sensitivity", {"Infidelity and efficiency over a (delta_c, kappa) grid", sensitivity_cmd}},
        {"bandwidth-req", {"Largest photon bandwidth meeting an infidelity target", bandwidth_cmd}},
        {"chain-rate", {"Secret-key rate at one engineering point", chain_rate}},
        {"scan", {"Optimal engineering point per distance", scan_cmd}},
        {"mc-validate", {"Closed-form end-link count against Monte Carlo", mc_validate}},
    };
    for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        const auto start = std::chrono::steady_clock::now();
        const Scenario s = load_scenario(opt.scenario);
        const Outputs outs = commands.at(sub).second(s, opt);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_outputs(s, sub, opt, outs, wall);
        return 0;
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible configuration: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
