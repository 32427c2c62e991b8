#pragma once

#include "qrep/chain.hpp"
#include "qrep/optimizer.hpp"
#include "qrep/spin_photon.hpp"

#include <cstdint>
#include <initializer_list>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrep {

// Raw key/value text as read, per section, for the run manifest.
using RawSections = std::map<std::string, std::map<std::string, std::string>>;

struct CavitySection {
    std::optional<double> kappa, delta_c, delta_0;  // fixed operating point, GHz
    double waveguide_fraction = 1.0;
    SearchSpace space;
    int restarts = 64;
    double sensitivity_span = 1.0;  // GHz, half width
    int sensitivity_resolution = 21;
    double target_infidelity = 0.1;

    bool has_point() const { return kappa && delta_c && delta_0; }
    InterfaceConfig point(const EmitterParams& e) const;
};

struct PhotonSection {
    PhotonPair photons;
    double f_ph = 1.0;
    double f_mw = 1.0;
};

struct FilterSection {
    std::vector<double> gamma_xx_grid;  // filtered XX bandwidths, GHz
};

struct ChainSection {
    ChainParams params;
    std::string profile = "printed";
    double f_sp = 0.95;
    std::vector<std::string> defaulted;  // keys taken from the built-in table
};

struct ScanSection {
    std::vector<double> distances_km;
    std::vector<int> n_segments;
    int n_loa_lo = 20, n_loa_hi = 20000, n_loa_points = 100;
    int max_level = 3;
    int m = 1000;
    std::optional<int> m_loa;
    // Single engineering point for chain-rate and mc-validate.
    std::optional<EngineeringChoice> point;
    long mc_trials = 100000;

    ScanGrid grid() const;
};

struct Scenario {
    std::string source;
    RawSections raw;
    std::optional<EmitterParams> emitter;
    std::optional<CavitySection> cavity;
    std::optional<PhotonSection> photon;
    std::optional<FilterSection> filter;
    std::optional<ChainSection> chain;
    std::optional<ScanSection> scan;

    // Throws ScenarioError naming the first absent section, in file order.
    void require(std::initializer_list<const char*> sections) const;
};

Scenario parse_scenario(std::istream& in, const std::string& source = "<stream>");
Scenario load_scenario(const std::string& path);

// Resolved chain parameters as flat key/value text (for manifests).
std::vector<std::pair<std::string, std::string>> describe(const ChainParams& p);

}  // namespace qrep
