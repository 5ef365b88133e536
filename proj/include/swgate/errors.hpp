#ifndef SWGATE_ERRORS_HPP
#define SWGATE_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace swgate {

// Bad physical parameters, config keys, or preconditions (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Step-halving failed to converge within max_refinements (CLI exit code 3).
// Carries the last two iterates so the caller can inspect how far apart they are.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, Eigen::VectorXcd coarse, Eigen::VectorXcd fine)
        : std::runtime_error(what), last_coarse(std::move(coarse)), last_fine(std::move(fine)) {}
    Eigen::VectorXcd last_coarse;
    Eigen::VectorXcd last_fine;
};

// Population leaked into the top Fock levels; caller should grow the cutoff and rerun.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double top_population)
        : std::runtime_error(what), top_population(top_population) {}
    double top_population;
};

// A least-squares fit diverged or its residual exceeded the stated threshold.
class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

}  // namespace swgate

#endif
