#include "qrep/chain.hpp"

#include "qrep/errors.hpp"
#include "qrep/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

namespace qrep {

namespace {

using Mat16 = Eigen::Matrix<cplx, 16, 16>;

// Qubit 0 is the most significant bit of a four-qubit index.
int bit(int index, int q) { return (index >> (3 - q)) & 1; }

Mat16 kron4(const std::array<Mat2, 4>& ops) {
    Mat16 out;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            cplx v = 1.0;
            for (int q = 0; q < 4 && v != 0.0; ++q) v *= ops[q](bit(r, q), bit(c, q));
            out(r, c) = v;
        }
    return out;
}

Mat16 on_qubit(const Mat2& op, int q) {
    std::array<Mat2, 4> ops{Mat2::Identity(), Mat2::Identity(), Mat2::Identity(), Mat2::Identity()};
    ops[q] = op;
    return kron4(ops);
}

Mat16 cnot16(int control, int target) {
    Mat16 out = Mat16::Zero();
    for (int i = 0; i < 16; ++i) {
        const int j = bit(i, control) ? i ^ (1 << (3 - target)) : i;
        out(j, i) = 1.0;
    }
    return out;
}

Mat16 kron2(const Mat4& a, const Mat4& b) {
    Mat16 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

const std::array<Mat2, 4>& paulis() {
    static const std::array<Mat2, 4> p{Mat2(Mat2::Identity()), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
    return p;
}

// Two-qubit depolarizing on qubits (q1, q2) as a uniform Pauli twirl.
Mat16 depolarize_pair(const Mat16& rho, int q1, int q2, double eps) {
    if (eps == 0.0) return rho;
    Mat16 twirl = Mat16::Zero();
    for (const Mat2& a : paulis())
        for (const Mat2& b : paulis()) {
            std::array<Mat2, 4> ops{Mat2::Identity(), Mat2::Identity(), Mat2::Identity(), Mat2::Identity()};
            ops[q1] = a;
            ops[q2] = b;
            const Mat16 u = kron4(ops);
            twirl += u * rho * u.adjoint();
        }
    return (1 - eps) * rho + eps * twirl / 16.0;
}

Mat16 dephase16(const Mat16& rho, int q, double p) {
    if (p == 0.0) return rho;
    const Mat16 z = on_qubit(gates::pauli_z(), q);
    return (1 - p) * rho + p * z * rho * z;
}

TwoQubitState dephase_both(const TwoQubitState& s, double p) {
    if (p == 0.0) return s;
    return dephasing_channel(dephasing_channel(s, p, Qubit::first), p, Qubit::second);
}

double probability_in_range(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ContractViolation(std::string(name) + " must lie in [0, 1]");
    return v;
}

// Half-width of coherence loss over time t: p = (1 - exp(-t/T))/2.
double storage_dephasing(double t, double t_coh) { return 0.5 * -std::expm1(-t / t_coh); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void ChainParams::validate() const {
    for (double t : {t_qd, t_nu_coh, c_signal, t_res, t_nu}) {
        if (!(t > 0)) throw ContractViolation("times and signal speed must be positive");
    }
    if (!(gamma_fib >= 0)) throw ContractViolation("fiber attenuation must be non-negative");
    probability_in_range(eps_nu, "eps_nu");
    probability_in_range(eps_nn, "eps_nn");
    probability_in_range(f_ph, "f_ph");
    for (double e : {eta_cf, eta_em_qd, eta_em_g4v, eta_fc, eta_pd, eta_cir12, eta_cir23, eta_swi, eta_sp}) {
        probability_in_range(e, "efficiency");
    }
    if (p_trn_override) probability_in_range(*p_trn_override, "p_trn override");
    if (n_ee < 1) throw ContractViolation("n_ee must be at least 1");
    TwoQubitState s(rho_sp);
    if (std::abs(s.trace() - 1.0) > 1e-9) throw ContractViolation("rho_sp must be normalized");
    s.validate();
}

Mat4 published_rho_sp(double f_sp) {
    Mat4 m;
    const cplx i(0, 1);
    if (std::abs(f_sp - 0.95) < 1e-9) {
        m << 0.466, 0.002 + 0.012 * i, 0.002 + 0.014 * i, 0.466 + 0.025 * i,
             0.002 - 0.012 * i, 0.022, 0.0, 0.021 - 0.011 * i,
             0.002 - 0.014 * i, 0.0, 0.011, 0.010 - 0.013 * i,
             0.466 - 0.025 * i, 0.021 + 0.011 * i, 0.010 + 0.013 * i, 0.501;
    } else if (std::abs(f_sp - 0.98) < 1e-9) {
        m << 0.486, 0.002 + 0.007 * i, 0.002 + 0.001 * i, 0.487 + 0.008 * i,
             0.002 - 0.007 * i, 0.009, 0.0, 0.007 - 0.007 * i,
             0.002 - 0.001 * i, 0.0, 0.004, 0.003 - 0.001 * i,
             0.487 - 0.008 * i, 0.007 + 0.007 * i, 0.003 + 0.001 * i, 0.500;
    } else {
        throw DomainError("published spin-pair states exist for F_sp = 0.95 and 0.98 only");
    }
    return m / m.trace();
}

double published_eta_sp(double f_sp) {
    if (std::abs(f_sp - 0.95) < 1e-9) return 0.7906;
    if (std::abs(f_sp - 0.98) < 1e-9) return 0.4167;
    throw DomainError("published efficiencies exist for F_sp = 0.95 and 0.98 only");
}

ChainParams default_chain_params() {
    ChainParams p;
    p.rho_sp = published_rho_sp(0.95);
    p.eta_sp = published_eta_sp(0.95);
    return p;
}

ChainParams reconciled_chain_params() {
    ChainParams p = default_chain_params();
    p.yield_over_registered = true;
    p.p_trn_override = 0.964;
    p.cycle_includes_end_round = true;
    return p;
}

void EngineeringChoice::validate() const {
    if (n_segments < 1) throw ContractViolation("N must be at least 1");
    if (n_loa < 1) throw ContractViolation("n_loa must be at least 1");
    if (level_elementary < 0 || level_elementary > 3 || level_end < 0 || level_end > 3) {
        throw ContractViolation("distillation levels must lie in 0..3");
    }
    if (m < 1 || m_loa < 1 || m_loa > m) throw ContractViolation("need 1 <= m_loa <= m");
}

int distillation_cost(int level) {
    static const int cost[4] = {1, 2, 4, 6};
    if (level < 0 || level > 3) throw ContractViolation("distillation level must lie in 0..3");
    return cost[level];
}

Timing timing(const ChainParams& p, const EngineeringChoice& c, double distance_km) {
    if (!(distance_km > 0)) throw DomainError("distance must be positive");
    Timing t;
    const double cell = c.m_loa * p.t_qd;
    t.t_str = (c.n_loa - 1) * std::max(p.t_res, cell) + cell;
    t.t_com = distance_km / (p.c_signal * c.n_segments);
    t.tau_loa = p.t_res + t.t_str + std::max(t.t_com, p.t_nu);
    t.tau_dis = 3 * p.t_nu + p.t_res * p.n_ee + t.t_com;
    t.tau_swp = 2 * p.t_nu + p.t_res * p.n_ee;
    return t;
}

LinkProbabilities link_probabilities(const ChainParams& p, const EngineeringChoice& c, double distance_km) {
    LinkProbabilities lp;
    const int k = p.filter_in_path ? 4 : 2;
    lp.p_trn = p.p_trn_override ? *p.p_trn_override
                                : std::sqrt(p.eta_em_qd) * p.eta_fc * p.eta_cir12 * p.eta_cir23 *
                                      std::pow(p.eta_cf, k) * std::sqrt(p.eta_sp) * p.eta_swi * p.eta_swi * p.eta_pd;
    lp.p_arm = std::pow(10.0, -(p.gamma_fib / 10.0) * distance_km / (2.0 * c.n_segments)) * lp.p_trn;
    lp.p_ee = p.eta_em_g4v * std::pow(p.eta_cir12, 2) * std::pow(p.eta_cir23, 2) * std::pow(p.eta_cf, 4) *
              std::pow(p.eta_swi, 4) * p.eta_pd;
    lp.P_ee = -std::expm1(p.n_ee * std::log1p(-lp.p_ee));
    lp.P_nu = std::pow(1.0 - p.eps_nu, p.n_ee);
    return lp;
}

double attempt_objective(const ChainParams& p, int n_ee) {
    ChainParams q = p;
    q.n_ee = n_ee;
    const LinkProbabilities lp = link_probabilities(q, EngineeringChoice{}, 1.0);
    return lp.P_ee * lp.P_ee * std::pow(lp.P_nu, 4) * std::exp(-4.0 * p.t_res * n_ee / p.t_nu_coh);
}

int optimal_attempt_cap(const ChainParams& p, int n_max) {
    int best = 1;
    double best_f = attempt_objective(p, 1);
    for (int n = 2; n <= n_max; ++n) {
        const double f = attempt_objective(p, n);
        if (f > best_f) {
            best_f = f;
            best = n;
        }
    }
    return best;
}

LoadingYield loading_yield(const ChainParams& p, const EngineeringChoice& c, double distance_km, double eta_dis_n) {
    const double p_arm = link_probabilities(p, c, distance_km).p_arm;
    LoadingYield y;
    y.m_reg = p_arm >= 1.0 ? c.m_loa : -c.m_loa * std::expm1(c.n_loa * std::log1p(-p_arm));
    y.m_p = std::lround(y.m_reg * p_arm);
    const long trials = p.yield_over_registered ? static_cast<long>(std::floor(y.m_reg + 1e-9)) : y.m_p;
    if (c.level_elementary == 0) {
        y.m_s = trials;
    } else {
        const long groups = trials / distillation_cost(c.level_elementary);
        y.m_s = static_cast<long>(std::floor(groups * eta_dis_n + 1e-12));
    }
    return y;
}

double expected_end_links(long m_s, int n_segments, double p_arm, double P_ee) {
    if (m_s < 0 || n_segments < 1) throw ContractViolation("need m_s >= 0 and N >= 1");
    probability_in_range(p_arm, "p_arm");
    probability_in_range(P_ee, "P_ee");
    const double swap_weight = std::pow(P_ee, n_segments - 1);
    if (m_s == 0 || p_arm == 0.0) return 0.0;
    if (p_arm == 1.0) return m_s * swap_weight;

    const double lp = std::log(p_arm), lq = std::log1p(-p_arm);
    const double lgm = std::lgamma(m_s + 1.0);
    double tail = 0.0, sum = 0.0;
    for (long k = m_s; k >= 1; --k) {
        tail += std::exp(lgm - std::lgamma(k + 1.0) - std::lgamma(m_s - k + 1.0) + k * lp + (m_s - k) * lq);
        sum += std::pow(std::min(tail, 1.0), n_segments);
    }
    return swap_weight * sum;
}

MonteCarloEstimate monte_carlo_end_links(long m_s, int n_segments, double p_arm, double P_ee, long trials,
                                         std::uint64_t seed, unsigned threads) {
    if (trials < 1000) throw ContractViolation("at least 10^3 Monte Carlo trials are required");
    probability_in_range(p_arm, "p_arm");
    probability_in_range(P_ee, "P_ee");
    constexpr long kShard = 4096;
    const long shards = (trials + kShard - 1) / kShard;
    const double survive = std::pow(P_ee, n_segments - 1);
    // Per-shard Welford moments merged pairwise, so near-constant samples keep an exact zero variance.
    struct Moments {
        double n = 0, mean = 0, m2 = 0;
    };
    std::vector<Moments> moments(shards);
    parallel_for(static_cast<std::size_t>(shards), threads, [&](std::size_t s) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(s)));
        std::binomial_distribution<long> seg(m_s, p_arm);
        const long begin = static_cast<long>(s) * kShard, end = std::min(trials, begin + kShard);
        Moments m;
        for (long t = begin; t < end; ++t) {
            long lowest = m_s;
            for (int i = 0; i < n_segments; ++i) lowest = std::min(lowest, seg(rng));
            const long links = lowest == 0 ? 0 : std::binomial_distribution<long>(lowest, survive)(rng);
            m.n += 1;
            const double d = links - m.mean;
            m.mean += d / m.n;
            m.m2 += d * (links - m.mean);
        }
        moments[s] = m;
    });
    Moments total;
    for (const Moments& m : moments) {
        const double n = total.n + m.n;
        const double d = m.mean - total.mean;
        total.mean += d * m.n / n;
        total.m2 += m.m2 + d * d * total.n * m.n / n;
        total.n = n;
    }
    const double var = total.m2 / (trials - 1.0);
    return {total.mean, std::sqrt(var / trials), trials};
}

DistillResult fuse(const TwoQubitState& a, const TwoQubitState& b, bool rotate, const DistillNoise& noise) {
    probability_in_range(noise.eps_nn, "eps_nn");
    Mat4 ra = a.matrix(), rb = b.matrix();
    if (rotate) {
        const Mat4 h = gates::hadamard_pair();
        ra = h * ra * h.adjoint();
        rb = h * rb * h.adjoint();
    }
    // Qubit order: pair one (0, 1), pair two (2, 3); 0 and 2 sit in one node.
    Mat16 rho = kron2(ra, rb);
    static const Mat16 cx_a = cnot16(0, 2), cx_b = cnot16(1, 3);
    rho = cx_a * rho * cx_a.adjoint();
    rho = depolarize_pair(rho, 0, 2, noise.eps_nn);
    rho = cx_b * rho * cx_b.adjoint();
    rho = depolarize_pair(rho, 1, 3, noise.eps_nn);

    Mat4 kept = Mat4::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k : {0, 3}) kept(i, j) += rho(4 * i + k, 4 * j + k);
    const double p = kept.trace().real();
    if (!(p > 0)) throw NumericalError("distillation round has zero success probability");
    TwoQubitState out(kept / p);
    out = dephase_both(out, noise.store_dephasing);
    out = dephase_both(out, noise.attempt_dephasing);
    return {out, p * noise.heralding_weight, 1};
}

DistillResult distill(const std::vector<TwoQubitState>& inputs, int level, DistillContext /*context*/,
                      const DistillNoise& noise) {
    if (static_cast<int>(inputs.size()) != distillation_cost(level)) {
        throw ContractViolation("distill needs exactly cost(level) inputs");
    }
    for (const auto& s : inputs) {
        if (std::abs(s.trace() - 1.0) > 1e-9) throw ContractViolation("distill inputs must be normalized");
    }
    if (level == 0) return {inputs[0], 1.0, 0};
    const DistillResult l1 = fuse(inputs[0], inputs[1], false, noise);
    if (level == 1) return l1;
    const DistillResult l1b = fuse(inputs[2], inputs[3], false, noise);
    DistillResult l2 = fuse(l1.rho_out, l1b.rho_out, true, noise);
    l2.success_prob *= l1.success_prob * l1b.success_prob;
    l2.rounds = 2;
    if (level == 2) return l2;
    const DistillResult l1c = fuse(inputs[4], inputs[5], false, noise);
    DistillResult l3 = fuse(l2.rho_out, l1c.rho_out, true, noise);
    l3.success_prob *= l2.success_prob * l1c.success_prob;
    l3.rounds = 3;
    return l3;
}

DistillNoise distill_noise(const ChainParams& p, const EngineeringChoice& c, double distance_km,
                           DistillContext context) {
    const Timing t = timing(p, c, distance_km);
    const LinkProbabilities lp = link_probabilities(p, c, distance_km);
    double tau = t.tau_dis;
    if (context == DistillContext::end_to_end) {
        // Post-selected rounds do not wait for the neighbour's confirmation.
        tau -= t.t_com;
        if (p.end_round_waits_tcom) tau += distance_km / p.c_signal;
    }
    DistillNoise n;
    n.eps_nn = p.eps_nn;
    n.store_dephasing = storage_dephasing(tau, p.t_nu_coh);
    // Each kept nucleus sits through two attempt series per round.
    n.attempt_dephasing = 0.5 * (1.0 - lp.P_nu * lp.P_nu);
    n.heralding_weight = lp.P_ee * lp.P_ee;
    return n;
}

SwapNoise swap_noise(const ChainParams& p) {
    const Timing t = timing(p, EngineeringChoice{}, 1.0);
    const LinkProbabilities lp = link_probabilities(p, EngineeringChoice{}, 1.0);
    return {p.eps_nn, 0.5 * (1.0 - lp.P_nu), storage_dephasing(t.tau_swp, p.t_nu_coh)};
}

TwoQubitState swap_links(const TwoQubitState& left, const TwoQubitState& right, const SwapNoise& noise) {
    // Qubits A, B | C, D; the Bell measurement acts on B and C.
    Mat16 rho = kron2(left.matrix(), right.matrix());
    rho = dephase16(rho, 1, noise.inner_dephasing);
    rho = dephase16(rho, 2, noise.inner_dephasing);
    static const Mat16 cx = cnot16(1, 2);
    static const Mat16 h = on_qubit(gates::hadamard(), 1);
    rho = cx * rho * cx.adjoint();
    rho = depolarize_pair(rho, 1, 2, noise.eps_nn);
    rho = h * rho * h.adjoint();

    Mat4 out = Mat4::Zero();
    for (int mb = 0; mb < 2; ++mb)
        for (int mc = 0; mc < 2; ++mc) {
            Mat4 red = Mat4::Zero();
            for (int a = 0; a < 2; ++a)
                for (int d = 0; d < 2; ++d)
                    for (int a2 = 0; a2 < 2; ++a2)
                        for (int d2 = 0; d2 < 2; ++d2) {
                            const int r = (a << 3) | (mb << 2) | (mc << 1) | d;
                            const int c = (a2 << 3) | (mb << 2) | (mc << 1) | d2;
                            red(2 * a + d, 2 * a2 + d2) = rho(r, c);
                        }
            Mat2 corr = Mat2::Identity();
            if (mc) corr = gates::pauli_x() * corr;
            if (mb) corr = corr * gates::pauli_z();
            const Mat4 u = gates::kron(Mat2::Identity(), corr);
            out += u * red * u.adjoint();
        }
    TwoQubitState s(out);
    return dephase_both(s, noise.outer_dephasing);
}

TwoQubitState swap_chain(const TwoQubitState& elementary, int n_segments, const SwapNoise& noise) {
    if (n_segments < 1) throw ContractViolation("N must be at least 1");
    TwoQubitState acc = elementary;
    for (int i = 1; i < n_segments; ++i) acc = swap_links(acc, elementary, noise);
    return acc;
}

EndToEnd end_to_end_state(const ChainParams& p, const EngineeringChoice& c, double distance_km) {
    TwoQubitState rho(p.rho_sp);
    if (p.dephase_during_loading) {
        rho = dephase_both(rho, storage_dephasing(timing(p, c, distance_km).tau_loa, p.t_nu_coh));
    }
    const DistillNoise nn = distill_noise(p, c, distance_km, DistillContext::elementary);
    const DistillResult dn = distill(std::vector<TwoQubitState>(distillation_cost(c.level_elementary), rho),
                                     c.level_elementary, DistillContext::elementary, nn);
    const TwoQubitState swapped = swap_chain(dn.rho_out, c.n_segments, swap_noise(p));
    const DistillNoise ne = distill_noise(p, c, distance_km, DistillContext::end_to_end);
    const DistillResult de = distill(std::vector<TwoQubitState>(distillation_cost(c.level_end), swapped),
                                     c.level_end, DistillContext::end_to_end, ne);
    return {de.rho_out, dn.success_prob, de.success_prob / distillation_cost(c.level_end)};
}

QberPair qber(const TwoQubitState& rho) {
    const Mat4& m = rho.matrix();
    const double qz = 1.0 - m(0, 0).real() - m(3, 3).real();
    Vec4 pp, mm;
    pp << 0.5, 0.5, 0.5, 0.5;
    mm << 0.5, -0.5, -0.5, 0.5;
    const double qx = 1.0 - (pp.adjoint() * m * pp)(0, 0).real() - (mm.adjoint() * m * mm)(0, 0).real();
    return {std::clamp(qz, 0.0, 1.0), std::clamp(qx, 0.0, 1.0)};
}

double secret_fraction(const TwoQubitState& rho) {
    const QberPair q = qber(rho);
    return std::max(0.0, 1.0 - binary_entropy(q.q_x) - binary_entropy(q.q_z));
}

namespace {

double cycle_time(const ChainParams& p, const EngineeringChoice& c, double distance_km) {
    double tau = timing(p, c, distance_km).tau_loa;
    // A post-selected end-to-end round needs one end-to-end classical exchange.
    if (p.cycle_includes_end_round && c.level_end > 0) tau += distance_km / p.c_signal;
    return tau;
}

KeyRate rate_from_state(const ChainParams& p, const EngineeringChoice& c, double distance_km, const EndToEnd& e2e) {
    KeyRate k;
    const QberPair q = qber(e2e.rho_f);
    k.q_z = q.q_z;
    k.q_x = q.q_x;
    k.r_sk = secret_fraction(e2e.rho_f);
    const LinkProbabilities lp = link_probabilities(p, c, distance_km);
    k.yield = loading_yield(p, c, distance_km, e2e.eta_dis_n);
    k.expected_links = expected_end_links(k.yield.m_s, c.n_segments, lp.p_arm, lp.P_ee);
    k.R_sk = k.r_sk * e2e.eta_dis_e * k.expected_links / cycle_time(p, c, distance_km);
    return k;
}

}  // namespace

KeyRate secret_key_rate(const ChainParams& p, const EngineeringChoice& c, double distance_km) {
    p.validate();
    c.validate();
    return rate_from_state(p, c, distance_km, end_to_end_state(p, c, distance_km));
}

std::vector<int> n_loa_grid(int lo, int hi, int points) {
    if (lo < 1 || hi < lo || points < 2) throw DomainError("invalid n_loa grid");
    const double tau = (std::log(hi) - std::log(lo)) / (points - 1);
    std::vector<int> out;
    out.reserve(points);
    for (int n = 0; n < points; ++n) out.push_back(static_cast<int>(std::lround(std::exp(std::log(lo) + n * tau))));
    return out;
}

std::vector<std::pair<int, int>> all_level_pairs(int max_level) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a <= max_level; ++a)
        for (int b = 0; b <= max_level; ++b) out.emplace_back(a, b);
    return out;
}

ScanResult scan(const ChainParams& p, double distance_km, const ScanGrid& grid, unsigned threads) {
    p.validate();
    if (grid.n_segments.empty() || grid.n_loa.empty() || grid.levels.empty()) {
        throw ContractViolation("scan grids must be non-empty");
    }
    struct Block {
        int n_segments;
        std::pair<int, int> levels;
    };
    std::vector<Block> blocks;
    for (int n : grid.n_segments)
        for (const auto& lv : grid.levels) blocks.push_back({n, lv});

    const std::size_t per_block = grid.n_loa.size();
    std::vector<ScanRow> table(blocks.size() * per_block);
    parallel_for(blocks.size(), threads, [&](std::size_t b) {
        EngineeringChoice c;
        c.n_segments = blocks[b].n_segments;
        c.level_elementary = blocks[b].levels.first;
        c.level_end = blocks[b].levels.second;
        c.m = grid.m;
        c.m_loa = grid.m_loa.value_or(grid.m);
        std::optional<EndToEnd> cached;
        for (std::size_t i = 0; i < per_block; ++i) {
            c.n_loa = grid.n_loa[i];
            c.validate();
            // Only the loading-dephasing toggle makes the state depend on n_loa.
            if (!cached || p.dephase_during_loading) cached = end_to_end_state(p, c, distance_km);
            table[b * per_block + i] = {c, rate_from_state(p, c, distance_km, *cached)};
        }
    });

    ScanResult res{table.front(), {}};
    for (const auto& row : table) {
        if (row.rate.R_sk > res.best.rate.R_sk) res.best = row;
    }
    res.table = std::move(table);
    return res;
}

}  // namespace qrep
