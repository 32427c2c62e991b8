#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qrep {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

// Basis order |11>, |12>, |21>, |22>; the first label is the first qubit.
enum class Qubit { first = 0, second = 1 };

class TwoQubitState {
public:
    // Checks Hermiticity (1e-12 elementwise) and trace in (0, 1].
    // Positivity is checked by validate() since it needs an eigen solve.
    explicit TwoQubitState(const Mat4& rho);

    static TwoQubitState bell();
    static TwoQubitState maximally_mixed();
    static TwoQubitState pure(const Vec4& psi);

    const Mat4& matrix() const { return rho_; }
    cplx operator()(int r, int c) const { return rho_(r, c); }
    double trace() const { return rho_.trace().real(); }
    double min_eigenvalue() const;
    TwoQubitState normalized() const;

    // Throws ContractViolation if any eigenvalue is below -1e-10.
    void validate() const;

private:
    Mat4 rho_;
};

namespace gates {
Mat2 ry(double theta);
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
Mat4 identity();
Mat4 half_pi();        // R_y(pi/2) (x) R_y(pi/2)
Mat4 cphase();         // diag(1, 1, 1, -1)
Mat4 cnot();           // control = first qubit
Mat4 hadamard_pair();  // H (x) H
Mat4 kron(const Mat2& a, const Mat2& b);
}  // namespace gates

// Bell vector (|11> + |22>)/sqrt(2).
Vec4 bell_vector();

TwoQubitState apply_gate(const TwoQubitState& state, const Mat4& gate);

// rho -> (1 - eps) rho + eps tr(rho) I/4
TwoQubitState depolarizing_channel(const TwoQubitState& state, double epsilon);

// rho -> (1 - p) rho + p Z_q rho Z_q
TwoQubitState dephasing_channel(const TwoQubitState& state, double p, Qubit which);

// rho -> (1 - p) rho + p (I/2 (x) tr_q rho) on one qubit
TwoQubitState single_qubit_depolarizing(const TwoQubitState& state, double p, Qubit which);

// Raw matrix versions used on unnormalized intermediates.
Mat4 depolarize_one(const Mat4& rho, double p, Qubit which);

double bell_fidelity(const TwoQubitState& state);
double binary_entropy(double q);

}  // namespace qrep
