#include "qrep/quantum_core.hpp"

#include "qrep/errors.hpp"

#include <cmath>
#include <string>

namespace qrep {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-9;
constexpr double kPosTol = 1e-10;

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

Mat4 embed(const Mat2& op, Qubit which) {
    return which == Qubit::first ? gates::kron(op, Mat2::Identity())
                                 : gates::kron(Mat2::Identity(), op);
}

}  // namespace

TwoQubitState::TwoQubitState(const Mat4& rho) : rho_(rho) {
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
    if (herm > kHermTol * scale) {
        throw ContractViolation("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double tr = rho_.trace().real();
    if (!(tr > 0.0) || tr > 1.0 + kTraceTol) {
        throw ContractViolation("density matrix trace outside (0, 1]: " + std::to_string(tr));
    }
    // Symmetrize away round-off so downstream eigen solves see an exact Hermitian matrix.
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
}

TwoQubitState TwoQubitState::bell() {
    const Vec4 b = bell_vector();
    return TwoQubitState(b * b.adjoint());
}

TwoQubitState TwoQubitState::maximally_mixed() { return TwoQubitState(Mat4::Identity() / 4.0); }

TwoQubitState TwoQubitState::pure(const Vec4& psi) {
    const Vec4 n = psi / psi.norm();
    return TwoQubitState(n * n.adjoint());
}

double TwoQubitState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

TwoQubitState TwoQubitState::normalized() const { return TwoQubitState(rho_ / trace()); }

void TwoQubitState::validate() const {
    const double ev = min_eigenvalue();
    if (ev < -kPosTol) {
        throw ContractViolation("density matrix not positive (min eigenvalue " + std::to_string(ev) + ")");
    }
}

namespace gates {

Mat2 ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

Mat2 pauli_x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}

Mat2 hadamard() {
    Mat2 m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Mat4 identity() { return Mat4::Identity(); }
Mat4 half_pi() { return kron(ry(M_PI / 2), ry(M_PI / 2)); }

Mat4 cphase() {
    Mat4 m = Mat4::Identity();
    m(3, 3) = -1;
    return m;
}

Mat4 cnot() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

Mat4 hadamard_pair() { return kron(hadamard(), hadamard()); }

}  // namespace gates

Vec4 bell_vector() {
    Vec4 b = Vec4::Zero();
    b(0) = b(3) = 1.0 / std::sqrt(2.0);
    return b;
}

TwoQubitState apply_gate(const TwoQubitState& state, const Mat4& gate) {
    const double dev = (gate * gate.adjoint() - Mat4::Identity()).cwiseAbs().maxCoeff();
    if (dev > 1e-9) throw ContractViolation("gate is not unitary (deviation " + std::to_string(dev) + ")");
    return TwoQubitState(gate * state.matrix() * gate.adjoint());
}

TwoQubitState depolarizing_channel(const TwoQubitState& state, double epsilon) {
    check_probability(epsilon, "depolarizing epsilon");
    const Mat4& r = state.matrix();
    return TwoQubitState((1 - epsilon) * r + epsilon * r.trace() * Mat4::Identity() / 4.0);
}

TwoQubitState dephasing_channel(const TwoQubitState& state, double p, Qubit which) {
    check_probability(p, "dephasing probability");
    const Mat4 z = embed(gates::pauli_z(), which);
    const Mat4& r = state.matrix();
    return TwoQubitState((1 - p) * r + p * z * r * z);
}

Mat4 depolarize_one(const Mat4& rho, double p, Qubit which) {
    // I/2 (x) tr_q(rho) equals the Pauli twirl average on that qubit.
    Mat4 twirl = Mat4::Zero();
    for (const Mat2& s : {Mat2(Mat2::Identity()), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()}) {
        const Mat4 u = embed(s, which);
        twirl += u * rho * u.adjoint();
    }
    return (1 - p) * rho + p * twirl / 4.0;
}

TwoQubitState single_qubit_depolarizing(const TwoQubitState& state, double p, Qubit which) {
    check_probability(p, "depolarizing probability");
    return TwoQubitState(depolarize_one(state.matrix(), p, which));
}

double bell_fidelity(const TwoQubitState& state) {
    if (std::abs(state.trace() - 1.0) > 1e-9) {
        throw ContractViolation("bell_fidelity expects a normalized state, trace " + std::to_string(state.trace()));
    }
    const Vec4 b = bell_vector();
    return (b.adjoint() * state.matrix() * b)(0, 0).real();
}

double binary_entropy(double q) {
    check_probability(q, "binary entropy argument");
    if (q == 0.0 || q == 1.0) return 0.0;
    return -q * std::log2(q) - (1 - q) * std::log2(1 - q);
}

}  // namespace qrep
