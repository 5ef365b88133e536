#ifndef SWGATE_SPACE_HPP
#define SWGATE_SPACE_HPP

#include <complex>

#include <Eigen/Dense>

namespace swgate {

// Composite Hilbert space of n_ions two-level spins and one truncated oscillator.
// Basis ordering is spin-major, Fock-minor: index = spin_index * (fock_cutoff + 1) + n,
// with |down> = spin 0, |up> = spin 1, and for two ions spin_index = 2*s1 + s2.
struct SpaceDescriptor {
    int n_ions = 1;
    int fock_cutoff = 20;  // highest retained Fock index N

    int spin_dim() const { return 1 << n_ions; }
    int motion_dim() const { return fock_cutoff + 1; }
    int dim() const { return spin_dim() * motion_dim(); }

    bool operator==(const SpaceDescriptor&) const = default;
};

struct OperatorMatrix {
    SpaceDescriptor space;
    Eigen::MatrixXcd mat;
};

struct StateVector {
    SpaceDescriptor space;
    Eigen::VectorXcd amps;
};

enum class SpinKind { plus, minus, phi };

// Rejects n_ions outside {1,2} and fock_cutoff < 1.
SpaceDescriptor build_space(int n_ions, int fock_cutoff);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// sigma matrices in the |down>=0, |up>=1 basis; sigma_plus = |up><down|
Eigen::Matrix2cd sigma_plus();
Eigen::Matrix2cd sigma_minus();
Eigen::Matrix2cd sigma_phi(double phi);  // sigma_x cos(phi) + sigma_y sin(phi)
Eigen::Matrix2cd sigma_z();

// Single-ion operator embedded on the spin factor only: I x .. x op x .. x I  (no motion factor).
Eigen::MatrixXcd spin_embed(const SpaceDescriptor& space, int ion, const Eigen::Matrix2cd& op);

// Sum over ions of sigma_kind^(i), tensored with the motion identity.
OperatorMatrix spin_op(const SpaceDescriptor& space, SpinKind kind, double phase = 0.0);

// Truncated ladder operators embedded as 1_spin x (.); a_dagger|N> = 0.
std::pair<OperatorMatrix, OperatorMatrix> mode_ops(const SpaceDescriptor& space);

// Motion-only (motion_dim x motion_dim) ladder operator, |n-1><n| sqrt(n).
Eigen::MatrixXcd mode_annihilation(int motion_dim);

// Fock index of each composite basis state (length dim).
Eigen::VectorXd fock_index_of_basis(const SpaceDescriptor& space);

// |spin_index> x |n>
StateVector basis_state(const SpaceDescriptor& space, int spin_index, int n);

// spin_amps (length 2^n_ions) x |0>
StateVector spin_motion_ground(const SpaceDescriptor& space, const Eigen::VectorXcd& spin_amps);

// Population in the top two Fock levels {N-1, N}, summed over spin.
double top_level_population(const StateVector& psi);

// Reduced spin density matrix (motion traced out) of a pure state.
Eigen::MatrixXcd trace_out_motion(const StateVector& psi);

}  // namespace swgate

#endif
