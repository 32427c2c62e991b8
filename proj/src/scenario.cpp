#include "qrep/scenario.hpp"

#include "qrep/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace qrep {

namespace {

namespace pt = boost::property_tree;

const char* const kSectionOrder[] = {"emitter", "cavity", "photon", "filter", "chain", "scan"};

// Tracks which keys of a section were consumed so leftovers can be reported.
class SectionReader {
public:
    SectionReader(std::string name, const std::map<std::string, std::string>& kv) : name_(std::move(name)), kv_(kv) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::optional<std::string> text(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    std::optional<double> number(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        return to_double(key, *t);
    }

    double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }

    double required(const std::string& key) {
        auto v = number(key);
        if (!v) throw ScenarioError("[" + name_ + "] missing required key '" + key + "'");
        return *v;
    }

    std::optional<int> integer(const std::string& key) {
        auto v = number(key);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::abs(*v) > 2e9) {
            throw ScenarioError("[" + name_ + "] key '" + key + "' must be an integer");
        }
        return static_cast<int>(*v);
    }

    std::optional<bool> boolean(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        if (*t == "true" || *t == "1" || *t == "yes") return true;
        if (*t == "false" || *t == "0" || *t == "no") return false;
        throw ScenarioError("[" + name_ + "] key '" + key + "' must be true or false");
    }

    // Comma-separated list, or lo:step:hi with an inclusive upper end.
    std::optional<std::vector<double>> list(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        std::vector<double> out;
        if (t->find(':') != std::string::npos) {
            std::vector<double> parts;
            std::stringstream ss(*t);
            std::string item;
            while (std::getline(ss, item, ':')) parts.push_back(to_double(key, item));
            if (parts.size() != 3 || !(parts[1] > 0) || parts[2] < parts[0]) {
                throw ScenarioError("[" + name_ + "] key '" + key + "' range must be lo:step:hi with step > 0");
            }
            const long n = std::lround(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
            for (long i = 0; i <= n; ++i) out.push_back(parts[0] + i * parts[1]);
        } else {
            std::stringstream ss(*t);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
        }
        if (out.empty()) throw ScenarioError("[" + name_ + "] key '" + key + "' is empty");
        return out;
    }

    void finish() const {
        for (const auto& [k, v] : kv_) {
            if (!used_.count(k)) throw ScenarioError("[" + name_ + "] unknown key '" + k + "'");
        }
    }

private:
    double to_double(const std::string& key, const std::string& s) const {
        std::size_t pos = 0;
        double v = 0;
        const std::string trimmed = trim(s);
        try {
            v = std::stod(trimmed, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (trimmed.empty() || pos != trimmed.size() || !std::isfinite(v)) {
            throw ScenarioError("[" + name_ + "] key '" + key + "' is not a number: '" + s + "'");
        }
        return v;
    }

    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    }

    std::string name_;
    const std::map<std::string, std::string>& kv_;
    std::set<std::string> used_;
};

EmitterParams read_emitter(SectionReader& r) {
    EmitterParams e;
    const auto preset = r.text("preset");
    const bool base = preset.has_value();
    if (preset) {
        if (*preset == "SiV" || *preset == "siv") e = siv_emitter();
        else if (*preset == "SnV" || *preset == "snv") e = snv_emitter();
        else throw ScenarioError("[emitter] unknown preset '" + *preset + "' (SiV or SnV)");
    }
    auto pick = [&](const char* key, double& field) {
        if (auto v = r.number(key)) field = *v;
        else if (!base) throw ScenarioError(std::string("[emitter] missing required key '") + key + "'");
    };
    e.omega_1A = 0.0;
    pick("omega_2B_GHz", e.omega_2B);
    pick("gamma_1A_GHz", e.gamma_1A);
    pick("gamma_2B_GHz", e.gamma_2B);
    pick("g_1A_GHz", e.g_1A);
    pick("g_2B_GHz", e.g_2B);
    e.omega_s = r.number_or("omega_s_GHz", e.omega_s);
    if (auto l = r.text("label")) e.label = *l;
    try {
        e.validate();
    } catch (const std::exception& ex) {
        throw ScenarioError(std::string("[emitter] ") + ex.what());
    }
    return e;
}

Interval read_interval(SectionReader& r, const std::string& stem, Interval fallback) {
    return {r.number_or(stem + "_min_GHz", fallback.lo), r.number_or(stem + "_max_GHz", fallback.hi)};
}

CavitySection read_cavity(SectionReader& r) {
    CavitySection c;
    c.kappa = r.number("kappa_GHz");
    c.delta_c = r.number("delta_c_GHz");
    c.delta_0 = r.number("delta_0_GHz");
    c.waveguide_fraction = r.number_or("waveguide_fraction", 1.0);
    c.space.delta_0 = read_interval(r, "delta_0", c.space.delta_0);
    c.space.delta_c = read_interval(r, "delta_c", c.space.delta_c);
    c.space.kappa = read_interval(r, "kappa", c.space.kappa);
    c.space.cooperativity_cap = r.number("cooperativity_cap");
    c.restarts = r.integer("restarts").value_or(c.restarts);
    c.sensitivity_span = r.number_or("sensitivity_span_GHz", c.sensitivity_span);
    c.sensitivity_resolution = r.integer("sensitivity_resolution").value_or(c.sensitivity_resolution);
    c.target_infidelity = r.number_or("target_infidelity", c.target_infidelity);
    try {
        c.space.validate();
    } catch (const std::exception& ex) {
        throw ScenarioError(std::string("[cavity] ") + ex.what());
    }
    if (c.restarts < 1) throw ScenarioError("[cavity] restarts must be at least 1");
    if (c.sensitivity_resolution < 2) throw ScenarioError("[cavity] sensitivity_resolution must be at least 2");
    if (!(c.waveguide_fraction > 0 && c.waveguide_fraction <= 1)) {
        throw ScenarioError("[cavity] waveguide_fraction must lie in (0, 1]");
    }
    return c;
}

PhotonSection read_photon(SectionReader& r) {
    PhotonSection p;
    p.photons.x.gamma = r.required("gamma_x_GHz");
    p.photons.xx.gamma = r.required("gamma_xx_GHz");
    p.f_ph = r.number_or("f_ph", 1.0);
    p.f_mw = r.number_or("f_mw", 1.0);
    if (!(p.photons.x.gamma > 0 && p.photons.xx.gamma > 0)) throw ScenarioError("[photon] linewidths must be positive");
    for (double f : {p.f_ph, p.f_mw}) {
        if (!(f >= 0.25 && f <= 1.0)) throw ScenarioError("[photon] fidelities must lie in [0.25, 1]");
    }
    return p;
}

FilterSection read_filter(SectionReader& r, std::optional<PhotonSection>& photon) {
    FilterSection f;
    if (auto g = r.list("gamma_xx_tilde_GHz")) f.gamma_xx_grid = *g;
    // Fixed filters applied to every interface evaluation.
    if (photon) {
        if (auto g = r.number("fixed_gamma_x_tilde_GHz")) photon->photons.x.gamma_tilde = *g;
        if (auto g = r.number("fixed_gamma_xx_tilde_GHz")) photon->photons.xx.gamma_tilde = *g;
    } else if (r.has("fixed_gamma_x_tilde_GHz") || r.has("fixed_gamma_xx_tilde_GHz")) {
        throw ScenarioError("[filter] fixed filters need a [photon] section");
    }
    for (double g : f.gamma_xx_grid) {
        if (!(g > 0)) throw ScenarioError("[filter] bandwidths must be positive");
    }
    return f;
}

Mat4 werner(double f) {
    const Vec4 b = bell_vector();
    const Mat4 bell = b * b.adjoint();
    return f * bell + (1 - f) / 3.0 * (Mat4::Identity() - bell);
}

ChainSection read_chain(SectionReader& r) {
    ChainSection c;
    c.profile = r.text("profile").value_or("printed");
    if (c.profile == "printed") c.params = default_chain_params();
    else if (c.profile == "reconciled") c.params = reconciled_chain_params();
    else throw ScenarioError("[chain] profile must be 'printed' or 'reconciled'");

    ChainParams& p = c.params;
    auto take = [&](const char* key, double& field, double scale = 1.0) {
        if (auto v = r.number(key)) field = *v * scale;
        else c.defaulted.push_back(key);
    };
    take("t_qd_ns", p.t_qd, 1e-9);
    take("t_nu_coh_s", p.t_nu_coh);
    take("gamma_fib_dB_per_km", p.gamma_fib);
    take("c_signal_km_per_s", p.c_signal);
    take("t_res_us", p.t_res, 1e-6);
    take("t_nu_us", p.t_nu, 1e-6);
    take("eps_nu", p.eps_nu);
    take("f_ph", p.f_ph);
    take("eps_nn", p.eps_nn);
    if (auto v = r.integer("n_ee")) p.n_ee = *v;
    else c.defaulted.push_back("n_ee");
    take("eta_cf", p.eta_cf);
    take("eta_em_qd", p.eta_em_qd);
    take("eta_em_g4v", p.eta_em_g4v);
    take("eta_fc", p.eta_fc);
    take("eta_pd", p.eta_pd);
    take("eta_cir12", p.eta_cir12);
    take("eta_cir23", p.eta_cir23);
    take("eta_swi", p.eta_swi);
    if (auto v = r.boolean("filter_in_path")) p.filter_in_path = *v;
    else c.defaulted.push_back("filter_in_path");

    if (auto v = r.number("f_sp")) c.f_sp = *v;
    else c.defaulted.push_back("f_sp");
    const bool published = std::abs(c.f_sp - 0.95) < 1e-9 || std::abs(c.f_sp - 0.98) < 1e-9;
    if (published) {
        p.rho_sp = published_rho_sp(c.f_sp);
        p.eta_sp = published_eta_sp(c.f_sp);
    } else {
        if (!(c.f_sp >= 0.25 && c.f_sp <= 1.0)) throw ScenarioError("[chain] f_sp must lie in [0.25, 1]");
        p.rho_sp = werner(c.f_sp);
        if (!r.has("eta_sp")) throw ScenarioError("[chain] eta_sp is required when f_sp is not 0.95 or 0.98");
    }
    if (auto v = r.number("eta_sp")) p.eta_sp = *v;
    else c.defaulted.push_back("eta_sp");

    if (auto v = r.boolean("dephase_during_loading")) p.dephase_during_loading = *v;
    if (auto v = r.boolean("end_round_waits_tcom")) p.end_round_waits_tcom = *v;
    if (auto v = r.boolean("cycle_includes_end_round")) p.cycle_includes_end_round = *v;
    if (auto v = r.boolean("yield_over_registered")) p.yield_over_registered = *v;
    if (auto v = r.number("p_trn")) p.p_trn_override = *v;
    try {
        p.validate();
    } catch (const std::exception& ex) {
        throw ScenarioError(std::string("[chain] ") + ex.what());
    }
    return c;
}

ScanSection read_scan(SectionReader& r) {
    ScanSection s;
    if (auto v = r.list("L_km")) s.distances_km = *v;
    else throw ScenarioError("[scan] missing required key 'L_km'");
    for (double l : s.distances_km) {
        if (!(l > 0)) throw ScenarioError("[scan] distances must be positive");
    }
    if (auto v = r.list("N")) {
        for (double n : *v) {
            if (n < 1 || n != std::floor(n)) throw ScenarioError("[scan] N values must be positive integers");
            s.n_segments.push_back(static_cast<int>(n));
        }
    } else {
        for (int n = 1; n <= 16; ++n) s.n_segments.push_back(n);
    }
    s.n_loa_lo = r.integer("n_loa_min").value_or(s.n_loa_lo);
    s.n_loa_hi = r.integer("n_loa_max").value_or(s.n_loa_hi);
    s.n_loa_points = r.integer("n_loa_points").value_or(s.n_loa_points);
    s.max_level = r.integer("max_level").value_or(s.max_level);
    s.m = r.integer("m").value_or(s.m);
    s.m_loa = r.integer("m_loa");
    s.mc_trials = r.integer("mc_trials").value_or(static_cast<int>(s.mc_trials));
    if (s.n_loa_lo < 1 || s.n_loa_hi < s.n_loa_lo || s.n_loa_points < 2) {
        throw ScenarioError("[scan] need 1 <= n_loa_min <= n_loa_max and n_loa_points >= 2");
    }
    if (s.max_level < 0 || s.max_level > 3) throw ScenarioError("[scan] max_level must lie in 0..3");
    if (s.m < 1 || (s.m_loa && (*s.m_loa < 1 || *s.m_loa > s.m))) throw ScenarioError("[scan] need 1 <= m_loa <= m");
    if (s.mc_trials < 1) throw ScenarioError("[scan] mc_trials must be positive");

    const bool any_point = r.has("point_N") || r.has("point_n_loa") || r.has("point_n_dis_n") || r.has("point_n_dis_e");
    if (any_point) {
        EngineeringChoice c;
        auto need = [&](const char* key) {
            auto v = r.integer(key);
            if (!v) throw ScenarioError(std::string("[scan] missing required key '") + key + "'");
            return *v;
        };
        c.n_segments = need("point_N");
        c.n_loa = need("point_n_loa");
        c.level_elementary = need("point_n_dis_n");
        c.level_end = need("point_n_dis_e");
        c.m = s.m;
        c.m_loa = s.m_loa.value_or(s.m);
        try {
            c.validate();
        } catch (const std::exception& ex) {
            throw ScenarioError(std::string("[scan] ") + ex.what());
        }
        s.point = c;
    }
    return s;
}

}  // namespace

InterfaceConfig CavitySection::point(const EmitterParams& e) const {
    if (!has_point()) throw ScenarioError("[cavity] needs kappa_GHz, delta_c_GHz and delta_0_GHz for this subcommand");
    return {e, CavityConfig{*kappa, *delta_c, waveguide_fraction}, *delta_0};
}

ScanGrid ScanSection::grid() const {
    ScanGrid g;
    g.n_segments = n_segments;
    g.n_loa = n_loa_grid(n_loa_lo, n_loa_hi, n_loa_points);
    g.levels = all_level_pairs(max_level);
    g.m = m;
    g.m_loa = m_loa;
    return g;
}

void Scenario::require(std::initializer_list<const char*> sections) const {
    auto present = [&](const std::string& s) {
        if (s == "emitter") return emitter.has_value();
        if (s == "cavity") return cavity.has_value();
        if (s == "photon") return photon.has_value();
        if (s == "filter") return filter.has_value();
        if (s == "chain") return chain.has_value();
        return scan.has_value();
    };
    for (const char* name : kSectionOrder) {
        for (const char* want : sections) {
            if (std::string(name) == want && !present(name)) {
                throw ScenarioError(source + ": missing required section [" + name + "]");
            }
        }
    }
}

Scenario parse_scenario(std::istream& in, const std::string& source) {
    // The INI reader drops sections without keys, so collect headers first.
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<std::string> headers;
    {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const auto b = line.find_first_not_of(" \t");
            const auto e = line.find_last_not_of(" \t\r");
            if (b == std::string::npos || line[b] != '[' || line[e] != ']') continue;
            headers.push_back(line.substr(b + 1, e - b - 1));
        }
    }
    pt::ptree tree;
    try {
        std::istringstream body(text);
        pt::read_ini(body, tree);
    } catch (const pt::ini_parser_error& ex) {
        throw ScenarioError(source + ": " + ex.message() + " (line " + std::to_string(ex.line()) + ")");
    }
    Scenario s;
    s.source = source;
    const std::set<std::string> known(std::begin(kSectionOrder), std::end(kSectionOrder));
    for (const auto& [name, section] : tree) {
        if (!section.data().empty() && section.empty()) {
            throw ScenarioError(source + ": key '" + name + "' outside any section");
        }
        if (!known.count(name)) throw ScenarioError(source + ": unknown section [" + name + "]");
        for (const auto& [key, value] : section) s.raw[name][key] = value.data();
    }
    for (const std::string& name : headers) {
        if (!known.count(name)) throw ScenarioError(source + ": unknown section [" + name + "]");
        s.raw[name];
    }

    auto with = [&](const char* name, auto&& fn) {
        auto it = s.raw.find(name);
        if (it == s.raw.end()) return;
        SectionReader r(name, it->second);
        fn(r);
        r.finish();
    };
    with("emitter", [&](SectionReader& r) { s.emitter = read_emitter(r); });
    with("cavity", [&](SectionReader& r) { s.cavity = read_cavity(r); });
    with("photon", [&](SectionReader& r) { s.photon = read_photon(r); });
    with("filter", [&](SectionReader& r) { s.filter = read_filter(r, s.photon); });
    with("chain", [&](SectionReader& r) { s.chain = read_chain(r); });
    with("scan", [&](SectionReader& r) { s.scan = read_scan(r); });
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    return parse_scenario(in, path);
}

std::vector<std::pair<std::string, std::string>> describe(const ChainParams& p) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    std::vector<std::pair<std::string, std::string>> out{
        {"t_qd_ns", num(p.t_qd * 1e9)},
        {"t_nu_coh_s", num(p.t_nu_coh)},
        {"gamma_fib_dB_per_km", num(p.gamma_fib)},
        {"c_signal_km_per_s", num(p.c_signal)},
        {"t_res_us", num(p.t_res * 1e6)},
        {"t_nu_us", num(p.t_nu * 1e6)},
        {"eps_nu", num(p.eps_nu)},
        {"f_ph", num(p.f_ph)},
        {"eps_nn", num(p.eps_nn)},
        {"n_ee", std::to_string(p.n_ee)},
        {"eta_cf", num(p.eta_cf)},
        {"eta_em_qd", num(p.eta_em_qd)},
        {"eta_em_g4v", num(p.eta_em_g4v)},
        {"eta_fc", num(p.eta_fc)},
        {"eta_pd", num(p.eta_pd)},
        {"eta_cir12", num(p.eta_cir12)},
        {"eta_cir23", num(p.eta_cir23)},
        {"eta_swi", num(p.eta_swi)},
        {"filter_in_path", p.filter_in_path ? "true" : "false"},
        {"eta_sp", num(p.eta_sp)},
        {"dephase_during_loading", p.dephase_during_loading ? "true" : "false"},
        {"end_round_waits_tcom", p.end_round_waits_tcom ? "true" : "false"},
        {"cycle_includes_end_round", p.cycle_includes_end_round ? "true" : "false"},
        {"yield_over_registered", p.yield_over_registered ? "true" : "false"},
        {"p_trn", p.p_trn_override ? num(*p.p_trn_override) : "formula"},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const cplx v = p.rho_sp(i, j);
            out.emplace_back("rho_sp_" + std::to_string(i) + std::to_string(j), num(v.real()) + (v.imag() < 0 ? "" : "+") + num(v.imag()) + "i");
        }
    return out;
}

}  // namespace qrep
