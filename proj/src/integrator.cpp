#include "swgate/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "swgate/errors.hpp"
#include "swgate/params.hpp"

namespace swgate {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

namespace {

constexpr complex<double> kI{0.0, 1.0};
constexpr double kTopPopLimit = 1e-8;

double default_dt(const TimedOperator& h) {
    double fastest = std::max(h.frame_freq(), h.rate_scale());
    for (const auto& t : h.terms()) fastest = std::max(fastest, std::abs(t.detuning));
    return (two_pi / std::max(fastest, two_pi)) / 200.0;
}

void frame_phases(const TimedOperator& h, double t, VectorXcd& out) {
    const Eigen::VectorXd& ang = h.frame_angles();
    out.resize(ang.size());
    for (Eigen::Index k = 0; k < ang.size(); ++k) out(k) = std::polar(1.0, ang(k) * t);
}

// exp(-i c M) v by Taylor series with sub-splitting when ||c M|| is large.
void apply_exponential_series(const MatrixXcd& m, double c, VectorXcd& v, VectorXcd& tmp,
                              VectorXcd& term) {
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff() * std::abs(c);
    const int splits = std::max(1, int(std::ceil(norm1 / 0.5)));
    const complex<double> z = -kI * (c / splits);
    for (int s = 0; s < splits; ++s) {
        term = v;
        for (int k = 1; k <= 40; ++k) {
            tmp.noalias() = m * term;
            term = (z / double(k)) * tmp;
            v += term;
            if (term.norm() <= 1e-16 * v.norm()) break;
        }
    }
}

struct StepContext {
    VectorXcd phases, u, tmp, term;
};

// Segment integral of g(t) f(t) by 5-point Gauss-Legendre; at our step sizes this
// is exact to machine precision, so a fixed-generator step carries no quadrature
// error beyond roundoff (the evolution of f(t) B is exp(-i (int g f) B) exactly).
double segment_coefficient(const PulseEnvelope& env, double cos_freq, double a, double b) {
    static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
    static const double weights[5] = {0.2369268850561891, 0.4786286704993665,
                                      0.5688888888888889, 0.4786286704993665,
                                      0.2369268850561891};
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double t = mid + half * nodes[i];
        const double f = cos_freq == 0.0 ? 1.0 : std::cos(cos_freq * t);
        // backward sub-steps of the composition may poke just past the pulse edges
        acc += weights[i] * envelope(std::clamp(t, 0.0, env.t_total), env) * f;
    }
    return acc * half;
}

// Exact kick of the fixed generator over [t, t+h], conjugated by the frame at the
// sub-interval midpoint. Composing these telescopes into a splitting of the
// constant-frame generator f(t) B - omega n, so a Suzuki-Yoshida (w1, w0, w1)
// composition of three kicks gives a 4th-order step at two extra mat-vecs.
void factorized_kick(const TimedOperator& h, const TimedOperator::Factorized& f,
                     const PulseEnvelope& env, double t, double hstep, VectorXcd& psi,
                     StepContext& ctx) {
    const double tm = t + 0.5 * hstep;
    frame_phases(h, tm, ctx.phases);
    ctx.u = ctx.phases.conjugate().cwiseProduct(psi);
    const double c = segment_coefficient(env, f.cos_freq, t, t + hstep);
    ctx.tmp.noalias() = f.eigvecs.adjoint() * ctx.u;
    for (Eigen::Index k = 0; k < ctx.tmp.size(); ++k)
        ctx.tmp(k) *= std::polar(1.0, -c * f.eigvals(k));
    ctx.u.noalias() = f.eigvecs * ctx.tmp;
    psi = ctx.phases.cwiseProduct(ctx.u);
}

// One step of the chosen scheme: a 4th-order kick composition when the generator
// is fixed, otherwise the midpoint exponential psi <- exp(-i g(tm) H(tm) dt) psi.
void step(const TimedOperator& h, const PulseEnvelope& env, double t, double dt, VectorXcd& psi,
          StepContext& ctx, bool reference) {
    if (!reference && h.factorized()) {
        static constexpr double w1 = 1.3512071919596578;  // 1/(2 - cbrt(2))
        static constexpr double w0 = 1.0 - 2.0 * w1;
        const auto* f = h.factorized();
        factorized_kick(h, *f, env, t, w1 * dt, psi, ctx);
        factorized_kick(h, *f, env, t + w1 * dt, w0 * dt, psi, ctx);
        factorized_kick(h, *f, env, t + (w1 + w0) * dt, w1 * dt, psi, ctx);
        return;
    }
    const double tm = t + 0.5 * dt;
    const double g = envelope(std::min(tm, env.t_total), env);
    frame_phases(h, tm, ctx.phases);
    ctx.u = ctx.phases.conjugate().cwiseProduct(psi);
    if (reference) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.frameless(tm));
        ctx.tmp.noalias() = es.eigenvectors().adjoint() * ctx.u;
        for (Eigen::Index k = 0; k < ctx.tmp.size(); ++k)
            ctx.tmp(k) *= std::polar(1.0, -g * dt * es.eigenvalues()(k));
        ctx.u.noalias() = es.eigenvectors() * ctx.tmp;
    } else {
        const MatrixXcd m = h.frameless(tm);
        apply_exponential_series(m, g * dt, ctx.u, ctx.tmp, ctx.term);
    }
    psi = ctx.phases.cwiseProduct(ctx.u);
}

double segment_top_population(const SpaceDescriptor& space, const VectorXcd& psi) {
    const int m = space.motion_dim();
    double pop = 0.0;
    for (int s = 0; s < space.spin_dim(); ++s)
        pop += std::norm(psi(s * m + m - 1)) + std::norm(psi(s * m + m - 2));
    return pop;
}

// Integrates [t0, t1] at fixed nominal dt, sampling at the requested times.
std::vector<VectorXcd> run_fixed(const TimedOperator& h, const PulseEnvelope& env,
                                 const VectorXcd& psi0, double dt,
                                 const std::vector<double>& times, bool reference) {
    StepContext ctx;
    VectorXcd psi = psi0;
    std::vector<VectorXcd> out;
    out.reserve(times.size());
    double t = 0.0;
    auto audit = [&](const VectorXcd& v) {
        const double pop = segment_top_population(h.space(), v);
        if (pop > kTopPopLimit)
            throw TruncationError("population reached the Fock truncation boundary", pop);
        if (std::abs(v.norm() - 1.0) > 1e-10)
            throw NonConvergenceError("norm drift exceeded 1e-10", v, v);
    };
    for (double target : times) {
        const double span = target - t;
        const int nseg = span > 0 ? std::max(1, int(std::ceil(span / dt))) : 0;
        const double hstep = nseg > 0 ? span / nseg : 0.0;
        for (int i = 0; i < nseg; ++i) {
            step(h, env, t + i * hstep, hstep, psi, ctx, reference);
            if ((i & 7) == 0) audit(psi);
        }
        t = target;
        audit(psi);
        out.push_back(psi);
    }
    return out;
}

std::vector<VectorXcd> run_refined(const TimedOperator& h, const PulseEnvelope& env,
                                   const VectorXcd& psi0, const IntegratorConfig& cfg,
                                   const std::vector<double>& times, bool reference) {
    if (times.empty()) throw ValidationError("no sample times given");
    if (times.back() > env.t_total * (1.0 + 1e-12))
        throw ValidationError("sample time beyond pulse end");
    double dt = cfg.dt_init > 0.0 ? cfg.dt_init : default_dt(h);
    std::vector<VectorXcd> coarse = run_fixed(h, env, psi0, dt, times, reference);
    for (int r = 0; r < cfg.max_refinements; ++r) {
        dt *= 0.5;
        std::vector<VectorXcd> fine = run_fixed(h, env, psi0, dt, times, reference);
        double diff = 0.0;
        for (size_t i = 0; i < times.size(); ++i)
            diff = std::max(diff, (fine[i] - coarse[i]).norm());
        if (diff < cfg.tol) return fine;
        coarse = std::move(fine);
    }
    std::vector<VectorXcd> fine = run_fixed(h, env, psi0, 0.5 * dt, times, reference);
    throw NonConvergenceError(
        "step-halving did not converge after " + std::to_string(cfg.max_refinements) +
            " refinements",
        coarse.back(), fine.back());
}

}  // namespace

StateVector evolve(const TimedOperator& h, const PulseEnvelope& env, const StateVector& psi0,
                   const IntegratorConfig& cfg) {
    if (psi0.space != h.space()) throw ValidationError("state and operator live on different spaces");
    auto states = run_refined(h, env, psi0.amps, cfg, {env.t_total}, false);
    return {h.space(), std::move(states.back())};
}

std::vector<StateVector> evolve_sampled(const TimedOperator& h, const PulseEnvelope& env,
                                        const StateVector& psi0, const IntegratorConfig& cfg,
                                        const std::vector<double>& times) {
    if (psi0.space != h.space()) throw ValidationError("state and operator live on different spaces");
    auto raw = run_refined(h, env, psi0.amps, cfg, times, false);
    std::vector<StateVector> out;
    out.reserve(raw.size());
    for (auto& v : raw) out.push_back({h.space(), std::move(v)});
    return out;
}

StateVector evolve_reference(const TimedOperator& h, const PulseEnvelope& env,
                             const StateVector& psi0, const IntegratorConfig& cfg) {
    if (psi0.space != h.space()) throw ValidationError("state and operator live on different spaces");
    auto states = run_refined(h, env, psi0.amps, cfg, {env.t_total}, true);
    return {h.space(), std::move(states.back())};
}

OperatorMatrix propagator(const TimedOperator& h, const PulseEnvelope& env,
                          const IntegratorConfig& cfg, double t0, double t1) {
    if (t1 < 0.0) t1 = env.t_total;
    const int d = h.space().dim();
    auto run_unitary = [&](double dt) {
        MatrixXcd u = MatrixXcd::Identity(d, d);
        const double span = t1 - t0;
        const int nseg = span > 0 ? std::max(1, int(std::ceil(span / dt))) : 0;
        const double hstep = nseg > 0 ? span / nseg : 0.0;
        VectorXcd phases(d);
        for (int i = 0; i < nseg; ++i) {
            const double tm = t0 + (i + 0.5) * hstep;
            const double g = envelope(std::min(tm, env.t_total), env);
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.frameless(tm));
            VectorXcd rot(d);
            for (int k = 0; k < d; ++k) rot(k) = std::polar(1.0, -g * hstep * es.eigenvalues()(k));
            frame_phases(h, tm, phases);
            const MatrixXcd estep = phases.asDiagonal() *
                                    (es.eigenvectors() * rot.asDiagonal() * es.eigenvectors().adjoint()) *
                                    phases.conjugate().asDiagonal();
            u = estep * u;
        }
        return u;
    };
    double dt = cfg.dt_init > 0.0 ? cfg.dt_init : default_dt(h);
    MatrixXcd coarse = run_unitary(dt);
    for (int r = 0; r < cfg.max_refinements; ++r) {
        dt *= 0.5;
        MatrixXcd fine = run_unitary(dt);
        if ((fine - coarse).cwiseAbs().maxCoeff() < cfg.tol) {
            const double unit_err =
                (fine.adjoint() * fine - MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
            if (unit_err > 1e-9)
                throw NonConvergenceError("propagator lost unitarity", coarse.col(0), fine.col(0));
            return {h.space(), std::move(fine)};
        }
        coarse = std::move(fine);
    }
    MatrixXcd fine = run_unitary(0.5 * dt);
    throw NonConvergenceError("propagator did not converge", coarse.col(0), fine.col(0));
}

AdaptiveRun evolve_adaptive(const std::function<TimedOperator(const SpaceDescriptor&)>& h_builder,
                            const std::function<StateVector(const SpaceDescriptor&)>& psi_builder,
                            const PulseEnvelope& env, const IntegratorConfig& cfg, int n_ions,
                            int fock_cutoff_init, const std::vector<double>& sample_times) {
    int cutoff = fock_cutoff_init;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const SpaceDescriptor space = build_space(n_ions, cutoff);
        try {
            const TimedOperator h = h_builder(space);
            const StateVector psi0 = psi_builder(space);
            std::vector<double> times = sample_times.empty()
                                            ? std::vector<double>{env.t_total}
                                            : sample_times;
            auto states = evolve_sampled(h, env, psi0, cfg, times);
            return {std::move(states), space};
        } catch (const TruncationError&) {
            cutoff += 10;
        }
    }
    throw ValidationError("Fock cutoff growth did not stabilize (raised past N=" +
                          std::to_string(cutoff) + ")");
}

}  // namespace swgate
