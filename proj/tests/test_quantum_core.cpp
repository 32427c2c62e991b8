#include "qrep/errors.hpp"
#include "qrep/quantum_core.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qrep;

namespace {

Mat4 bell_projector() {
    const Vec4 b = bell_vector();
    return b * b.adjoint();
}

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(TwoQubitState, RejectsNonHermitianAndNegative) {
    Mat4 m = Mat4::Identity() / 4.0;
    m(0, 1) = cplx(0.1, 0);
    EXPECT_THROW(TwoQubitState{m}, ContractViolation);
    Mat4 neg = Mat4::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(TwoQubitState{neg}.validate(), ContractViolation);
    EXPECT_THROW(TwoQubitState{2.0 * Mat4::Identity()}, ContractViolation);
}

TEST(Gates, AllUnitary) {
    for (const Mat4& u : {gates::half_pi(), gates::cphase(), gates::cnot(), gates::hadamard_pair()}) {
        EXPECT_LT(max_abs(u * u.adjoint() - Mat4::Identity()), 1e-12);
    }
    EXPECT_EQ(gates::cphase()(3, 3), cplx(-1, 0));
}

TEST(ApplyGate, IdentityLeavesStateAlone) {
    const TwoQubitState s = TwoQubitState::bell();
    EXPECT_LT(max_abs(apply_gate(s, gates::identity()).matrix() - s.matrix()), 1e-15);
}

TEST(ApplyGate, CphaseFlipsBellSign) {
    const TwoQubitState out = apply_gate(TwoQubitState::bell(), gates::cphase());
    EXPECT_NEAR(bell_fidelity(out), 0.0, 1e-12);
    Vec4 minus = Vec4::Zero();
    minus(0) = 1 / std::sqrt(2.0);
    minus(3) = -1 / std::sqrt(2.0);
    EXPECT_NEAR((minus.adjoint() * out.matrix() * minus)(0, 0).real(), 1.0, 1e-12);
}

TEST(ApplyGate, HalfPiSpreadsGroundState) {
    Vec4 g = Vec4::Zero();
    g(0) = 1;
    const Mat4 out = apply_gate(TwoQubitState::pure(g), gates::half_pi()).matrix();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) EXPECT_NEAR(std::abs(out(r, c)), 0.25, 1e-12);
}

TEST(ApplyGate, RejectsNonUnitary) {
    EXPECT_THROW(apply_gate(TwoQubitState::bell(), 2.0 * Mat4::Identity()), ContractViolation);
}

TEST(Depolarizing, EndpointsAndPhotonFidelity) {
    const TwoQubitState b = TwoQubitState::bell();
    EXPECT_LT(max_abs(depolarizing_channel(b, 0).matrix() - b.matrix()), 1e-15);
    EXPECT_LT(max_abs(depolarizing_channel(b, 1).matrix() - Mat4::Identity() / 4.0), 1e-15);
    EXPECT_NEAR(bell_fidelity(depolarizing_channel(b, 4 * (1 - 0.99) / 3)), 0.99, 1e-12);
    EXPECT_THROW(depolarizing_channel(b, 1.1), DomainError);
    EXPECT_THROW(depolarizing_channel(b, -0.1), DomainError);
}

TEST(Dephasing, KillsCoherenceAndScalesFidelity) {
    const TwoQubitState b = TwoQubitState::bell();
    const TwoQubitState half = dephasing_channel(b, 0.5, Qubit::first);
    EXPECT_NEAR(std::abs(half(0, 3)), 0.0, 1e-15);
    for (double p : {0.0, 0.1, 0.37, 1.0}) {
        EXPECT_NEAR(bell_fidelity(dephasing_channel(b, p, Qubit::second)), 1 - p, 1e-12);
    }
    const TwoQubitState d = dephasing_channel(b, 0.3, Qubit::first);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(d(i, i).real(), b(i, i).real(), 1e-15);
    EXPECT_THROW(dephasing_channel(b, 2, Qubit::first), DomainError);
}

TEST(SingleQubitDepolarizing, FullStrengthOnBothGivesMixed) {
    const TwoQubitState s =
        single_qubit_depolarizing(single_qubit_depolarizing(TwoQubitState::bell(), 1, Qubit::first), 1, Qubit::second);
    EXPECT_LT(max_abs(s.matrix() - Mat4::Identity() / 4.0), 1e-12);
}

TEST(BellFidelity, KnownStates) {
    EXPECT_NEAR(bell_fidelity(TwoQubitState::bell()), 1.0, 1e-15);
    EXPECT_NEAR(bell_fidelity(TwoQubitState::maximally_mixed()), 0.25, 1e-15);
    EXPECT_THROW(bell_fidelity(TwoQubitState(0.5 * bell_projector())), ContractViolation);
}

TEST(BinaryEntropy, Values) {
    EXPECT_EQ(binary_entropy(0), 0.0);
    EXPECT_EQ(binary_entropy(1), 0.0);
    EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
    const double q = 0.11;
    EXPECT_NEAR(binary_entropy(q), -q * std::log2(q) - (1 - q) * std::log2(1 - q), 1e-15);
    EXPECT_NEAR(binary_entropy(q), 0.4999, 1e-4);
    EXPECT_THROW(binary_entropy(-0.01), DomainError);
}
