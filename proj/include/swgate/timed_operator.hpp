#ifndef SWGATE_TIMED_OPERATOR_HPP
#define SWGATE_TIMED_OPERATOR_HPP

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "swgate/space.hpp"

namespace swgate {

// One interaction-picture term: contributes  z e^{-i d t} A + z* e^{+i d t} A†
// inside the rotating frame R(t) = exp(i omega_frame t n̂).
// A Hermitian A with real z and detunings ±d therefore encodes 2 z cos(d t) A.
struct RotatingTerm {
    std::complex<double> amplitude;  // z
    double detuning = 0.0;           // d
    Eigen::MatrixXcd op;             // A
};

// Hermitian operator-valued function of time,
//   H(t) = R(t) M(t) R(t)†,   M(t) = sum_j [ z_j e^{-i d_j t} A_j + h.c. ].
// When M(t) == f(t) B for a fixed Hermitian B (detected at construction), the
// eigendecomposition of B is precomputed so a propagation step is two mat-vecs.
class TimedOperator {
public:
    struct Factorized {
        Eigen::MatrixXcd generator;  // B
        Eigen::MatrixXcd eigvecs;    // W with B = W diag(eigvals) W†
        Eigen::VectorXd eigvals;
        double cos_freq = 0.0;       // f(t) = cos(cos_freq * t); 0 means f == 1
    };

    TimedOperator(SpaceDescriptor space, double frame_freq, std::vector<RotatingTerm> terms,
                  double rate_scale);

    const SpaceDescriptor& space() const { return space_; }
    double frame_freq() const { return frame_freq_; }
    const std::vector<RotatingTerm>& terms() const { return terms_; }
    // Fastest angular-frequency scale (used for the default step size).
    double rate_scale() const { return rate_scale_; }

    // Full Hermitian matrix at time t.
    Eigen::MatrixXcd eval(double t) const;
    // M(t) without the frame conjugation.
    Eigen::MatrixXcd frameless(double t) const;
    // Frame phase angles per basis index: R(t) = diag(exp(i * frame_angles * t)).
    const Eigen::VectorXd& frame_angles() const { return frame_angles_; }

    const Factorized* factorized() const { return factorized_ ? &*factorized_ : nullptr; }

private:
    void analyze();

    SpaceDescriptor space_;
    double frame_freq_;
    std::vector<RotatingTerm> terms_;
    double rate_scale_;
    Eigen::VectorXd frame_angles_;
    std::optional<Factorized> factorized_;
};

}  // namespace swgate

#endif
