#include "swgate/space.hpp"

#include <cmath>

#include "swgate/errors.hpp"

namespace swgate {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

SpaceDescriptor build_space(int n_ions, int fock_cutoff) {
    if (n_ions != 1 && n_ions != 2)
        throw ValidationError("n_ions must be 1 or 2, got " + std::to_string(n_ions));
    if (fock_cutoff < 1)
        throw ValidationError("fock_cutoff must be >= 1, got " + std::to_string(fock_cutoff));
    return SpaceDescriptor{n_ions, fock_cutoff};
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix2cd sigma_plus() {
    Matrix2cd s = Matrix2cd::Zero();
    s(1, 0) = 1.0;
    return s;
}

Matrix2cd sigma_minus() { return sigma_plus().adjoint(); }

Matrix2cd sigma_phi(double phi) {
    // e^{i phi} sigma_+ + e^{-i phi} sigma_-
    Matrix2cd s = Matrix2cd::Zero();
    s(1, 0) = std::polar(1.0, phi);
    s(0, 1) = std::polar(1.0, -phi);
    return s;
}

Matrix2cd sigma_z() {
    Matrix2cd s = Matrix2cd::Zero();
    s(0, 0) = -1.0;
    s(1, 1) = 1.0;
    return s;
}

MatrixXcd spin_embed(const SpaceDescriptor& space, int ion, const Matrix2cd& op) {
    if (ion < 0 || ion >= space.n_ions) throw ValidationError("ion index out of range");
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int i = 0; i < space.n_ions; ++i)
        out = kron(out, i == ion ? MatrixXcd(op) : MatrixXcd(Matrix2cd::Identity()));
    return out;
}

OperatorMatrix spin_op(const SpaceDescriptor& space, SpinKind kind, double phase) {
    Matrix2cd single;
    switch (kind) {
        case SpinKind::plus: single = sigma_plus(); break;
        case SpinKind::minus: single = sigma_minus(); break;
        case SpinKind::phi: single = sigma_phi(phase); break;
    }
    MatrixXcd spin_sum = MatrixXcd::Zero(space.spin_dim(), space.spin_dim());
    for (int i = 0; i < space.n_ions; ++i) spin_sum += spin_embed(space, i, single);
    return {space, kron(spin_sum, MatrixXcd::Identity(space.motion_dim(), space.motion_dim()))};
}

MatrixXcd mode_annihilation(int motion_dim) {
    MatrixXcd a = MatrixXcd::Zero(motion_dim, motion_dim);
    for (int n = 1; n < motion_dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

std::pair<OperatorMatrix, OperatorMatrix> mode_ops(const SpaceDescriptor& space) {
    MatrixXcd a = mode_annihilation(space.motion_dim());
    MatrixXcd eye = MatrixXcd::Identity(space.spin_dim(), space.spin_dim());
    return {OperatorMatrix{space, kron(eye, a)}, OperatorMatrix{space, kron(eye, a.adjoint())}};
}

VectorXd fock_index_of_basis(const SpaceDescriptor& space) {
    VectorXd fock(space.dim());
    const int m = space.motion_dim();
    for (int k = 0; k < space.dim(); ++k) fock(k) = double(k % m);
    return fock;
}

StateVector basis_state(const SpaceDescriptor& space, int spin_index, int n) {
    if (spin_index < 0 || spin_index >= space.spin_dim() || n < 0 || n > space.fock_cutoff)
        throw ValidationError("basis_state index out of range");
    VectorXcd v = VectorXcd::Zero(space.dim());
    v(spin_index * space.motion_dim() + n) = 1.0;
    return {space, v};
}

StateVector spin_motion_ground(const SpaceDescriptor& space, const VectorXcd& spin_amps) {
    if (spin_amps.size() != space.spin_dim()) throw ValidationError("spin amplitude length mismatch");
    VectorXcd v = VectorXcd::Zero(space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) v(s * space.motion_dim()) = spin_amps(s);
    v.normalize();
    return {space, v};
}

double top_level_population(const StateVector& psi) {
    const int m = psi.space.motion_dim();
    double pop = 0.0;
    for (int s = 0; s < psi.space.spin_dim(); ++s) {
        pop += std::norm(psi.amps(s * m + m - 1));
        if (m >= 2) pop += std::norm(psi.amps(s * m + m - 2));
    }
    return pop;
}

MatrixXcd trace_out_motion(const StateVector& psi) {
    const int sd = psi.space.spin_dim();
    const int m = psi.space.motion_dim();
    MatrixXcd rho = MatrixXcd::Zero(sd, sd);
    for (int s = 0; s < sd; ++s)
        for (int t = 0; t < sd; ++t)
            for (int n = 0; n < m; ++n)
                rho(s, t) += psi.amps(s * m + n) * std::conj(psi.amps(t * m + n));
    return rho;
}

}  // namespace swgate
