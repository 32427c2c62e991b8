#pragma once

#include "qrep/quantum_core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qrep {

// Hardware parameters. Times are stored in seconds internally.
struct ChainParams {
    double t_qd = 1e-9;
    double t_nu_coh = 0.1;
    double gamma_fib = 0.2;  // dB/km
    double c_signal = 2e5;   // km/s
    double t_res = 1e-6;
    double t_nu = 10e-6;
    double eps_nu = 5e-5;
    double f_ph = 0.99;
    double eps_nn = 0.01;
    int n_ee = 32;
    double eta_cf = 0.864;
    double eta_em_qd = 0.974;
    double eta_em_g4v = 0.98;
    double eta_fc = 0.73;
    double eta_pd = 0.99;
    double eta_cir12 = 0.83;
    double eta_cir23 = 0.83;
    double eta_swi = 0.95;
    bool filter_in_path = true;  // eta_cf exponent 4 instead of 2

    // Elementary spin-pair state and its heralding efficiency.
    Mat4 rho_sp = Mat4::Identity() / 4.0;
    double eta_sp = 1.0;

    // Modelling toggles for choices the source leaves open.
    bool dephase_during_loading = false;  // storage dephasing over tau_loa on elementary pairs
    bool end_round_waits_tcom = false;    // end-to-end rounds store for L/c
    bool cycle_includes_end_round = false;  // add L/c to the cycle when level_end > 0

    // Alternative yield bookkeeping (see README): trials over registered cells
    // rather than rounded raw pairs, and an optional p_trn override.
    bool yield_over_registered = false;
    std::optional<double> p_trn_override;

    void validate() const;
};

ChainParams default_chain_params();

// Bookkeeping that reproduces the published rate table: trials over registered
// cells, p_trn = 0.964 and one end-to-end exchange added to the cycle time.
ChainParams reconciled_chain_params();

struct EngineeringChoice {
    int n_segments = 1;
    int n_loa = 1;
    int level_elementary = 0;
    int level_end = 0;
    int m = 1000;
    int m_loa = 1000;

    void validate() const;
};

// Raw pairs consumed per distilled pair at levels 0..3.
int distillation_cost(int level);

struct Timing {
    double t_str, t_com, tau_loa, tau_dis, tau_swp;
};
Timing timing(const ChainParams& p, const EngineeringChoice& c, double distance_km);

struct LinkProbabilities {
    double p_trn, p_arm, p_ee, P_ee, P_nu;
};
LinkProbabilities link_probabilities(const ChainParams& p, const EngineeringChoice& c, double distance_km);

double attempt_objective(const ChainParams& p, int n_ee);
int optimal_attempt_cap(const ChainParams& p, int n_max = 10000);

struct LoadingYield {
    double m_reg;
    long m_p;
    long m_s;
};

// round() here is half away from zero.
LoadingYield loading_yield(const ChainParams& p, const EngineeringChoice& c, double distance_km, double eta_dis_n);

// P_ee^{N-1} sum_l P(Bin(m_s, p) >= l)^N with tail sums accumulated from the top.
double expected_end_links(long m_s, int n_segments, double p_arm, double P_ee);

struct MonteCarloEstimate {
    double mean;
    double stderr_;
    long trials;
};

// Counter-seeded shards so results do not depend on the thread count.
MonteCarloEstimate monte_carlo_end_links(long m_s, int n_segments, double p_arm, double P_ee, long trials,
                                         std::uint64_t seed, unsigned threads = 1);

enum class DistillContext { elementary, end_to_end };

struct DistillNoise {
    double eps_nn = 0.0;
    double store_dephasing = 0.0;    // per kept qubit, per round
    double attempt_dephasing = 0.0;  // per kept qubit, per round
    double heralding_weight = 1.0;   // multiplies the success probability
};

struct DistillResult {
    TwoQubitState rho_out;
    double success_prob;
    int rounds;
};

// One recurrence step: optional H(x)H on both pairs, bilateral CNOT (pair 1
// controls), a depolarizing gate error after each CNOT, Z measurement of the
// pair-2 qubits, keep on equal parity.
DistillResult fuse(const TwoQubitState& a, const TwoQubitState& b, bool rotate, const DistillNoise& noise);

// Level-1/2/3 fusion tree over cost(level) identical inputs.
// The context only changes timing; distill_noise folds it into the noise terms.
DistillResult distill(const std::vector<TwoQubitState>& inputs, int level, DistillContext context,
                      const DistillNoise& noise);
DistillNoise distill_noise(const ChainParams& p, const EngineeringChoice& c, double distance_km,
                           DistillContext context);

struct SwapNoise {
    double eps_nn = 0.0;
    double inner_dephasing = 0.0;  // measured qubits, from the attempt series
    double outer_dephasing = 0.0;  // surviving qubits, storage over tau_swp
};
SwapNoise swap_noise(const ChainParams& p);

// Bell measurement on the inner qubits of two links, Pauli-corrected and averaged over outcomes.
TwoQubitState swap_links(const TwoQubitState& left, const TwoQubitState& right, const SwapNoise& noise);
TwoQubitState swap_chain(const TwoQubitState& elementary, int n_segments, const SwapNoise& noise);

struct EndToEnd {
    TwoQubitState rho_f;
    double eta_dis_n;  // elementary fusion success probability
    double eta_dis_e;  // end-to-end distilled pairs per end-to-end link
};
EndToEnd end_to_end_state(const ChainParams& p, const EngineeringChoice& c, double distance_km);

struct KeyRate {
    double q_z, q_x, r_sk, R_sk;
    double expected_links;
    LoadingYield yield;
};

struct QberPair {
    double q_z, q_x;
};
QberPair qber(const TwoQubitState& rho);
double secret_fraction(const TwoQubitState& rho);

KeyRate secret_key_rate(const ChainParams& p, const EngineeringChoice& c, double distance_km);

struct ScanGrid {
    std::vector<int> n_segments;
    std::vector<int> n_loa;
    std::vector<std::pair<int, int>> levels;
    int m = 1000;
    std::optional<int> m_loa;
};

// round(exp(ln lo + n tau)), n = 0..points-1, tau = (ln hi - ln lo)/(points - 1).
std::vector<int> n_loa_grid(int lo = 20, int hi = 20000, int points = 100);
std::vector<std::pair<int, int>> all_level_pairs(int max_level = 3);

struct ScanRow {
    EngineeringChoice choice;
    KeyRate rate;
};

struct ScanResult {
    ScanRow best;
    std::vector<ScanRow> table;
};

ScanResult scan(const ChainParams& p, double distance_km, const ScanGrid& grid, unsigned threads = 0);

// Published spin-pair states for F_sp = 0.95 and 0.98 (normalized here).
Mat4 published_rho_sp(double f_sp);
double published_eta_sp(double f_sp);

}  // namespace qrep
