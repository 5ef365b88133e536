#ifndef SWGATE_NUMERICS_HPP
#define SWGATE_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace swgate {

// Golden-section maximization of a unimodal function on [a, b] to absolute width tol.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol);

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_rms = 0.0;  // rms of residuals
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

// Local power-law exponent: slope of log|y| against log|x| (x, y > 0 required).
double fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

// Adaptive Simpson quadrature on [a, b]; abs_tol is an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

// Gauss-Hermite nodes/weights for integrals of f against exp(-x^2) (physicists' form).
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

// E[f(X)] for X ~ N(0, sigma^2) by Gauss-Hermite quadrature.
double gaussian_expectation(const std::function<double(double)>& f, double sigma, int n = 64);

// Damped Gauss-Newton least squares: residuals r(p) of fixed size, numerical Jacobian.
// Returns the fitted parameters; throws FitError on divergence.
std::vector<double> fit_least_squares(
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> initial, int max_iter = 100, double step_tol = 1e-12);

// splitmix64: cheap deterministic per-index seed derivation for parallel sweeps.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace swgate

#endif
