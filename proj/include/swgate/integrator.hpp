#ifndef SWGATE_INTEGRATOR_HPP
#define SWGATE_INTEGRATOR_HPP

#include <functional>
#include <vector>

#include "swgate/envelope.hpp"
#include "swgate/space.hpp"
#include "swgate/timed_operator.hpp"

namespace swgate {

struct IntegratorConfig {
    double dt_init = 0.0;     // <= 0: (2 pi / fastest rate) / 200
    double tol = 1e-8;        // step-halving convergence tolerance (final-state 2-norm)
    int max_refinements = 6;
};

// Integrates i dpsi/dt = g(t) H(t) psi with midpoint exponential steps
// psi <- exp(-i g(tm) H(tm) dt) psi, halving dt until the final state moves by
// less than cfg.tol. Norm is preserved to 1e-10 and population reaching the top
// two Fock levels raises TruncationError.
StateVector evolve(const TimedOperator& h, const PulseEnvelope& env, const StateVector& psi0,
                   const IntegratorConfig& cfg);

// As evolve, but returns snapshots at the given (ascending) times; the last sample
// time bounds the integration window.
std::vector<StateVector> evolve_sampled(const TimedOperator& h, const PulseEnvelope& env,
                                        const StateVector& psi0, const IntegratorConfig& cfg,
                                        const std::vector<double>& times);

// Full unitary over [t0, t1] (default [0, t_total]); ||U U† - 1||_max < 1e-9.
OperatorMatrix propagator(const TimedOperator& h, const PulseEnvelope& env,
                          const IntegratorConfig& cfg, double t0 = 0.0, double t1 = -1.0);

// Serial reference integrator: identical midpoint scheme, but every step
// diagonalizes H(tm) from scratch (no structure reuse, no Taylor products).
// Kept for cross-validation of the production kernels.
StateVector evolve_reference(const TimedOperator& h, const PulseEnvelope& env,
                             const StateVector& psi0, const IntegratorConfig& cfg);

// Rebuilds on a grown Fock cutoff (N -> N+10) and reruns whenever the evolution
// leaks more than 1e-8 of population into the top two levels.
struct AdaptiveRun {
    std::vector<StateVector> states;  // one per requested sample (single final state if none)
    SpaceDescriptor space;
};
AdaptiveRun evolve_adaptive(
    const std::function<TimedOperator(const SpaceDescriptor&)>& h_builder,
    const std::function<StateVector(const SpaceDescriptor&)>& psi_builder,
    const PulseEnvelope& env, const IntegratorConfig& cfg, int n_ions, int fock_cutoff_init = 20,
    const std::vector<double>& sample_times = {});

}  // namespace swgate

#endif
