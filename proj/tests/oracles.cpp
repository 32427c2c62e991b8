#include "oracles.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <random>
#include <stdexcept>

namespace oracle {

Register::Register(int qubits) : n_(qubits), rho_(Eigen::MatrixXcd::Zero(1L << qubits, 1L << qubits)) {}

Register Register::product(const std::vector<Mat4>& pairs) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
    for (const Mat4& p : pairs) {
        Eigen::MatrixXcd next(acc.rows() * 4, acc.cols() * 4);
        for (long i = 0; i < acc.rows(); ++i)
            for (long j = 0; j < acc.cols(); ++j) next.block(4 * i, 4 * j, 4, 4) = acc(i, j) * p;
        acc = next;
    }
    Register r(static_cast<int>(2 * pairs.size()));
    r.rho_ = acc;
    return r;
}

void Register::unitary1(const qrep::Mat2& u, int q) {
    const long d = rho_.rows();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(d, d);
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            if ((r ^ c) & ~(1L << (n_ - 1 - q))) continue;
            full(r, c) = u(bit(r, q), bit(c, q));
        }
    rho_ = full * rho_ * full.adjoint();
}

void Register::cnot(int control, int target) {
    const long d = rho_.rows();
    std::vector<long> perm(d);
    for (long i = 0; i < d; ++i) perm[i] = bit(i, control) ? i ^ (1L << (n_ - 1 - target)) : i;
    Eigen::MatrixXcd out(d, d);
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) out(perm[r], perm[c]) = rho_(r, c);
    rho_ = out;
}

void Register::depolarize_pair(int q1, int q2, double eps) {
    const long d = rho_.rows();
    const long m1 = 1L << (n_ - 1 - q1), m2 = 1L << (n_ - 1 - q2), mask = m1 | m2;
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(d, d);
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            if ((r & mask) != (c & mask)) continue;
            cplx tr = 0;
            for (long s : {0L, m1, m2, mask}) tr += rho_((r & ~mask) | s, (c & ~mask) | s);
            mixed(r, c) = tr / 4.0;
        }
    rho_ = (1 - eps) * rho_ + eps * mixed;
}

void Register::dephase(int q, double p) {
    const long d = rho_.rows();
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c)
            if (bit(r, q) != bit(c, q)) rho_(r, c) *= (1 - 2 * p);
}

void Register::project(int q, int outcome) {
    const long d = rho_.rows();
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c)
            if (bit(r, q) != outcome || bit(c, q) != outcome) rho_(r, c) = 0;
}

Mat4 Register::reduce(int q1, int q2) const {
    Mat4 out = Mat4::Zero();
    const long d = rho_.rows();
    for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) {
            // Other qubits must agree for the partial trace.
            bool same = true;
            for (int q = 0; q < n_ && same; ++q)
                if (q != q1 && q != q2 && bit(r, q) != bit(c, q)) same = false;
            if (!same) continue;
            out(2 * bit(r, q1) + bit(r, q2), 2 * bit(c, q1) + bit(c, q2)) += rho_(r, c);
        }
    return out;
}

namespace {

qrep::Mat2 hadamard() {
    qrep::Mat2 h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

void dephase_pair_state(Mat4& m, double p) {
    // Z on either qubit flips the sign of elements whose bit differs.
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if ((r >> 1) != (c >> 1)) m(r, c) *= (1 - 2 * p);
            if ((r & 1) != (c & 1)) m(r, c) *= (1 - 2 * p);
        }
}

}  // namespace

FuseOutcome fuse(const Mat4& a, const Mat4& b, bool rotate, double eps_nn, double store, double attempt) {
    Register reg = Register::product({a, b});
    if (rotate)
        for (int q = 0; q < 4; ++q) reg.unitary1(hadamard(), q);
    reg.cnot(0, 2);
    reg.depolarize_pair(0, 2, eps_nn);
    reg.cnot(1, 3);
    reg.depolarize_pair(1, 3, eps_nn);
    Register even = reg, odd = reg;
    even.project(2, 0);
    even.project(3, 0);
    odd.project(2, 1);
    odd.project(3, 1);
    Mat4 kept = even.reduce(0, 1) + odd.reduce(0, 1);
    const double p = kept.trace().real();
    kept /= p;
    dephase_pair_state(kept, store);
    dephase_pair_state(kept, attempt);
    return {kept, p};
}

Mat4 swap_chain(const std::vector<Mat4>& links, double eps_nn, double inner, double outer) {
    const int n = static_cast<int>(links.size());
    if (n == 1) return links[0];
    Register reg = Register::product(links);
    // Link i occupies qubits 2i (left end) and 2i + 1 (right end).
    for (int i = 1; i < n; ++i) {
        const int b = 2 * i - 1, c = 2 * i, d = 2 * i + 1;
        reg.dephase(b, inner);
        reg.dephase(c, inner);
        reg.cnot(b, c);
        reg.depolarize_pair(b, c, eps_nn);
        reg.unitary1(hadamard(), b);
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(reg.rho().rows(), reg.rho().cols());
        for (int mb = 0; mb < 2; ++mb)
            for (int mc = 0; mc < 2; ++mc) {
                Register branch = reg;
                branch.project(b, mb);
                branch.project(c, mc);
                if (mc) branch.unitary1(qrep::gates::pauli_x(), d);
                if (mb) branch.unitary1(qrep::gates::pauli_z(), d);
                // Reset the measured qubits to |0> so branches can be summed.
                if (mb) branch.unitary1(qrep::gates::pauli_x(), b);
                if (mc) branch.unitary1(qrep::gates::pauli_x(), c);
                sum += branch.rho();
            }
        reg.rho() = sum;
        reg.dephase(0, outer);
        reg.dephase(d, outer);
    }
    return reg.reduce(0, 2 * n - 1);
}

double expected_end_links(long m_s, int n_segments, double p_arm, double p_ee) {
    if (m_s == 0) return 0.0;
    boost::math::binomial_distribution<double> dist(static_cast<double>(m_s), p_arm);
    double sum = 0;
    for (long l = 1; l <= m_s; ++l) {
        // P(X >= l) = 1 - P(X <= l - 1)
        const double tail = boost::math::cdf(boost::math::complement(dist, static_cast<double>(l - 1)));
        sum += std::pow(tail, n_segments);
    }
    return std::pow(p_ee, n_segments - 1) * sum;
}

namespace {

struct GslWorkspace {
    explicit GslWorkspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
    ~GslWorkspace() { gsl_integration_workspace_free(w); }
    gsl_integration_workspace* w;
};

template <class F>
double gsl_call(double x, void* p) {
    return (*static_cast<F*>(p))(x);
}

template <class F>
gsl_function as_gsl(F& f) {
    return gsl_function{&gsl_call<F>, &f};
}

}  // namespace

cplx fourier_of_time_mode(const qrep::PhotonMode& mode, const qrep::FilterStage& filter, double omega) {
    gsl_set_error_handler_off();
    // Envelope without the carrier; the carrier shifts the transform by omega0.
    auto envelope = [&](double t) { return (qrep::filtered_time_mode(mode, filter, t) * std::exp(-cplx(0, mode.omega0) * t)).real(); };
    const double x = omega - mode.omega0;
    GslWorkspace w(5000), cyc(5000);
    double re = 0, im = 0, err = 0;
    if (x == 0.0) {
        auto f = envelope;
        gsl_function g = as_gsl(f);
        gsl_integration_qagiu(&g, 0.0, 1e-14, 1e-12, 5000, w.w, &re, &err);
    } else {
        gsl_integration_qawo_table* tc = gsl_integration_qawo_table_alloc(std::abs(x), 1.0, GSL_INTEG_COSINE, 200);
        gsl_integration_qawo_table* ts = gsl_integration_qawo_table_alloc(std::abs(x), 1.0, GSL_INTEG_SINE, 200);
        GslWorkspace w2(5000);
        auto f = envelope;
        gsl_function g = as_gsl(f);
        gsl_integration_qawf(&g, 0.0, 1e-14, 5000, w.w, cyc.w, tc, &re, &err);
        double s = 0;
        gsl_integration_qawf(&g, 0.0, 1e-14, 5000, w2.w, cyc.w, ts, &s, &err);
        im = -(x > 0 ? s : -s);
        gsl_integration_qawo_table_free(tc);
        gsl_integration_qawo_table_free(ts);
    }
    return {re, im};
}

double product_lorentzian_fwhm(double a, double b) {
    // (x^2 + a^2)(x^2 + b^2) = 2 a^2 b^2 solved for x^2.
    const double s = a * a + b * b;
    const double x2 = 0.5 * (-s + std::sqrt(s * s + 4 * a * a * b * b));
    return 2 * std::sqrt(x2);
}

double time_energy(const qrep::PhotonMode& mode, const qrep::FilterStage& filter) {
    gsl_set_error_handler_off();
    auto f = [&](double t) { return std::norm(qrep::filtered_time_mode(mode, filter, t)); };
    gsl_function g = as_gsl(f);
    GslWorkspace w(5000);
    double res = 0, err = 0;
    gsl_integration_qagiu(&g, 0.0, 0.0, 1e-12, 5000, w.w, &res, &err);
    return res;
}

double frequency_energy(const qrep::PhotonMode& mode, const qrep::FilterStage& filter) {
    gsl_set_error_handler_off();
    auto f = [&](double x) { return std::norm(qrep::filtered_spectrum(mode, filter, mode.omega0 + x)); };
    gsl_function g = as_gsl(f);
    GslWorkspace w(5000);
    double res = 0, err = 0;
    gsl_integration_qagi(&g, 0.0, 1e-12, 5000, w.w, &res, &err);
    return res / (2 * M_PI);
}

qrep::OverlapVector overlaps_midpoint(const qrep::PhotonMode& mode, const std::optional<qrep::FilterStage>& filter,
                                      const qrep::EmitterParams& emitter, const qrep::CavityConfig& cavity,
                                      int points) {
    // Normalized intensity weight in omega, integrated with omega = omega0 + s tan(u).
    const double s = mode.gamma / 2;
    double n1 = 0, n3 = 0;
    cplx n2 = 0;
    const double h = M_PI / points;
    for (int i = 0; i < points; ++i) {
        const double u = -M_PI / 2 + (i + 0.5) * h;
        const double w = mode.omega0 + s * std::tan(u);
        const double jac = s / (std::cos(u) * std::cos(u));
        double inten = std::norm(filter ? qrep::filtered_spectrum(mode, *filter, w) : qrep::spectrum(mode, w));
        inten *= jac * h;
        const cplx r1 = qrep::reflection(w, qrep::Branch::spin1, emitter, cavity);
        const cplx r2 = qrep::reflection(w, qrep::Branch::spin2, emitter, cavity);
        n1 += inten * std::norm(r1);
        n3 += inten * std::norm(r2);
        n2 += inten * r1 * std::conj(r2);
    }
    // Unfiltered lines are normalized by gamma, filtered ones by the target width.
    double scale;
    if (filter) scale = filter->target_bandwidth / (2 * M_PI * mode.epsilon0 * mode.epsilon0);
    else scale = mode.gamma / (2 * M_PI * mode.epsilon0 * mode.epsilon0);
    return qrep::OverlapVector::uniform(0.25 * scale * n1, 0.25 * scale * n2, 0.25 * scale * n3);
}

Mat4 random_density(std::mt19937_64& rng, int rank) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Matrix<cplx, 4, Eigen::Dynamic> a(4, rank);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < rank; ++j) a(i, j) = cplx(g(rng), g(rng));
    Mat4 m = a * a.adjoint();
    m /= m.trace().real();
    return 0.5 * (m + m.adjoint()).eval();
}

Mat4 random_bell_diagonal(std::mt19937_64& rng) {
    std::gamma_distribution<double> e(1.0, 1.0);
    double w[4];
    double tot = 0;
    for (double& x : w) tot += (x = e(rng));
    const double r = 1 / std::sqrt(2.0);
    qrep::Vec4 b[4];
    b[0] << r, 0, 0, r;
    b[1] << r, 0, 0, -r;
    b[2] << 0, r, r, 0;
    b[3] << 0, r, -r, 0;
    Mat4 m = Mat4::Zero();
    for (int i = 0; i < 4; ++i) m += (w[i] / tot) * b[i] * b[i].adjoint();
    return m;
}

Mat4 random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat4 a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Mat4> qr(a);
    Mat4 q = qr.householderQ();
    return q;
}

}  // namespace oracle
