#include "swgate/gate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "swgate/errors.hpp"
#include "swgate/hamiltonians.hpp"
#include "swgate/numerics.hpp"
#include "swgate/space.hpp"
#include "swgate/sweep.hpp"

namespace swgate {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

namespace {

constexpr int kScanCutoff = 14;  // carrier-dominated scans barely leave |0>

// ---------------------------------------------------------------------------
// Static-frame evolution for monochromatic drives.
//
// For a single tone every coefficient is z e^{-i d t}; rotating the spins at d
// and undoing the motional interaction picture turns H(t) into the constant
//   H_chi = sum_j (z_j A_j + h.c.) + omega_z n_hat - (d/2) Z,
// valid because each A_j raises the total sigma_z by exactly 2. Populations in
// the z basis are unchanged by either frame, so a scan point costs one
// eigendecomposition instead of thousands of steps.
// ---------------------------------------------------------------------------

std::vector<int> spin_z_of_basis(const SpaceDescriptor& space) {
    std::vector<int> z(space.dim());
    const int m = space.motion_dim();
    for (int k = 0; k < space.dim(); ++k) {
        const int s = k / m;
        int zz = 0;
        for (int b = 0; b < space.n_ions; ++b) zz += (s >> b & 1) ? 1 : -1;
        z[k] = zz;
    }
    return z;
}

struct StaticFrame {
    MatrixXcd eigvecs;
    VectorXd eigvals;
};

StaticFrame build_static_frame(const TimedOperator& h) {
    const auto& terms = h.terms();
    if (terms.empty()) throw ValidationError("static frame needs at least one term");
    const double d = terms[0].detuning;
    const std::vector<int> z = spin_z_of_basis(h.space());
    const int dim = h.space().dim();
    MatrixXcd hc = MatrixXcd::Zero(dim, dim);
    for (const auto& term : terms) {
        if (term.detuning != d) throw ValidationError("static frame requires a single tone");
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (std::abs(term.op(r, c)) > 1e-14 && z[r] - z[c] != 2)
                    throw ValidationError("static frame requires spin-raising terms");
        hc.noalias() += term.amplitude * term.op;
        hc.noalias() += std::conj(term.amplitude) * term.op.adjoint();
    }
    const VectorXd fock = fock_index_of_basis(h.space());
    for (int k = 0; k < dim; ++k) hc(k, k) += h.frame_freq() * fock(k) - 0.5 * d * z[k];
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hc);
    return {es.eigenvectors(), es.eigenvalues()};
}

VectorXcd static_evolve(const StaticFrame& f, const VectorXcd& psi0, double t) {
    VectorXcd u = f.eigvecs.adjoint() * psi0;
    for (Eigen::Index k = 0; k < u.size(); ++k) u(k) *= std::polar(1.0, -f.eigvals(k) * t);
    return f.eigvecs * u;
}

std::vector<double> spin_populations(const SpaceDescriptor& space, const VectorXcd& psi) {
    const int m = space.motion_dim();
    std::vector<double> pops(space.spin_dim(), 0.0);
    for (int s = 0; s < space.spin_dim(); ++s)
        for (int n = 0; n < m; ++n) pops[s] += std::norm(psi(s * m + n));
    return pops;
}

// Populations after a monochromatic SW pulse of length t_pulse.
std::vector<double> sw_pulse_populations(const PhysParams& p, double t_pulse) {
    int cutoff = kScanCutoff;
    for (;;) {
        const SpaceDescriptor space = build_space(p.n_ions, cutoff);
        const TimedOperator h = h_sw_exact(p, space);
        const StaticFrame frame = build_static_frame(h);
        const StateVector psi0 = basis_state(space, 0, 0);
        StateVector out{space, static_evolve(frame, psi0.amps, t_pulse)};
        if (top_level_population(out) < 1e-8) return spin_populations(space, out.amps);
        cutoff += 10;
        if (cutoff > 84) throw TruncationError("scan population reached cutoff", 1.0);
    }
}

double matrix_element_rabi(const PhysParams& p, int n_to, int n_from) {
    const SpaceDescriptor space = build_space(1, kScanCutoff);
    const TimedOperator h = h_sw_exact(p, space);
    const MatrixXcd m = h.frameless(0.0);
    const int md = space.motion_dim();
    return 2.0 * std::abs(m(1 * md + n_to, 0 * md + n_from));
}

// Blue-sideband Rabi frequency 2|<up,1|H|down,0>| at the anti-node.
double sideband_rabi_max(const PhysParams& p) {
    return matrix_element_rabi(p.with_ions(1).with_dphi(0.0), 1, 0);
}

Eigen::Vector2cd spin_plus_eigvec(double phi) {
    // +1 eigenvector of sigma_phi: (|down> + e^{i phi} |up>)/sqrt(2)
    Eigen::Vector2cd v;
    v(0) = 1.0 / std::numbers::sqrt2;
    v(1) = std::polar(1.0 / std::numbers::sqrt2, phi);
    return v;
}

TimedOperator build_gate_model(GateModel model, const PhysParams& p, const SpaceDescriptor& space) {
    return model == GateModel::tw_ms ? h_tw_ms(p, space, 0.0) : h_sw_ms_exact(p, space);
}

// Catmull-Rom interpolation of a periodic uniform series over [0, 2pi).
double interp_periodic(const std::vector<double>& y, double x) {
    const int n = int(y.size());
    double u = x / two_pi * n;
    u -= std::floor(u / n) * n;
    const int i1 = int(std::floor(u)) % n;
    const double f = u - std::floor(u);
    const int i0 = (i1 + n - 1) % n, i2 = (i1 + 1) % n, i3 = (i1 + 2) % n;
    const double y0 = y[i0], y1 = y[i1], y2 = y[i2], y3 = y[i3];
    return y1 + 0.5 * f * (y2 - y0 + f * (2 * y0 - 5 * y1 + 4 * y2 - y3 +
                                          f * (3 * (y1 - y2) + y3 - y0)));
}

std::vector<double>& series_ref(ScanResult& scan, const std::string& name) {
    for (auto& [n, v] : scan.series)
        if (n == name) return v;
    throw ValidationError("no series named '" + name + "'");
}

}  // namespace

double carrier_rabi_max(const PhysParams& p) {
    return matrix_element_rabi(p.with_ions(1).with_dphi(std::numbers::pi), 0, 0);
}

double carrier_pi_time(const PhysParams& p) { return std::numbers::pi / carrier_rabi_max(p); }

ScanResult phase_scan(const PhysParams& p, double t_pulse, int n_ions, int n_points) {
    PhysParams base = p.with_ions(n_ions);
    base.delta = 0.0;
    base.validate();
    if (t_pulse <= 0.0) t_pulse = carrier_pi_time(base);
    if (n_points < 2) throw ValidationError("phase_scan needs at least 2 points");

    ScanResult scan;
    scan.axis_name = "dphi_rad";
    for (int i = 0; i < n_points; ++i)
        scan.axis_values.push_back(two_pi * double(i) / double(n_points - 1));

    const auto pops = parallel_map<std::vector<double>>(
        scan.axis_values.size(),
        [&](size_t i) { return sw_pulse_populations(base.with_dphi(scan.axis_values[i]), t_pulse); });

    if (n_ions == 1) {
        std::vector<double> transfer;
        for (const auto& v : pops) transfer.push_back(v[1]);
        scan.add_probability_series("p_transfer", std::move(transfer));
    } else {
        std::vector<double> p11, p_mixed, p00;
        for (const auto& v : pops) {
            p11.push_back(v[0]);  // both still bright (|down down>)
            p_mixed.push_back(v[1] + v[2]);
            p00.push_back(v[3]);
        }
        scan.add_probability_series("p11", std::move(p11));
        scan.add_probability_series("p01p10", std::move(p_mixed));
        scan.add_probability_series("p00", std::move(p00));
    }
    return scan;
}

ScanResult detuning_scan(const PhysParams& p, Placement placement, Resonance resonance,
                         double span, int n_points) {
    PhysParams base = p.with_ions(1);
    base = base.with_dphi(placement == Placement::node ? std::numbers::pi : 0.0);
    base.validate();
    const double center = resonance == Resonance::carrier ? 0.0 : base.omega_z;
    const double t_pulse = resonance == Resonance::carrier
                               ? carrier_pi_time(base)
                               : std::numbers::pi / sideband_rabi_max(base);

    ScanResult scan;
    scan.axis_name = "delta_rad_s";
    for (int i = 0; i < n_points; ++i)
        scan.axis_values.push_back(center - span + 2.0 * span * double(i) / double(n_points - 1));

    const auto pops = parallel_map<std::vector<double>>(scan.axis_values.size(), [&](size_t i) {
        PhysParams pt = base;
        pt.delta = scan.axis_values[i];
        return sw_pulse_populations(pt, t_pulse);
    });
    std::vector<double> transfer;
    for (const auto& v : pops) transfer.push_back(v[1]);
    scan.add_probability_series("p_transfer", std::move(transfer));
    return scan;
}

double extract_sdf(const PhysParams& p, GateModel model, double t_ramp) {
    PhysParams base = p.with_ions(1).with_dphi(0.0);
    base.delta = base.omega_z;  // resonant SDF
    base.validate();
    const double delta = base.delta;
    const double expected_force = model == GateModel::tw_ms
                                      ? std::abs(sdf_analytic(base.eta, base.omega_rabi, delta))
                                      : 2.0 * base.eta * base.omega_rabi;
    if (!(expected_force > 0.0)) throw ValidationError("expected force vanished");

    // Sample where the accumulated carrier-dressing phase Omega int g cos(delta t)
    // vanishes: sin(delta t_k) = -delta int_0^tR (g-1) cos(delta tau) dtau. A plain
    // stroboscopic grid leaves a constant dressed-basis rotation from the ramp and
    // biases the conditioned displacement.
    double theta0 = 0.0;
    if (t_ramp > 0.0) {
        const PulseEnvelope ramp_only = PulseEnvelope::sin2(t_ramp, 4.0 * t_ramp);
        const double c_ramp = integrate(
            [&](double t) { return (envelope(t, ramp_only) - 1.0) * std::cos(delta * t); }, 0.0,
            t_ramp, 1e-16);
        theta0 = std::asin(std::clamp(-delta * c_ramp, -1.0, 1.0));
    }

    const double period = two_pi / delta;
    const int k_first = int(std::ceil((t_ramp + 2.0 * period) / period)) + 1;
    const double t_max = t_ramp + 2.0 / expected_force;
    const int k_last = std::max(k_first + 8, int(std::floor(t_max / period)));
    const int max_samples = 20;
    std::vector<double> times;
    const int stride = std::max(1, (k_last - k_first + 1) / max_samples);
    for (int k = k_first; k <= k_last; k += stride) times.push_back((two_pi * k + theta0) / delta);

    const PulseEnvelope env =
        t_ramp > 0.0 ? PulseEnvelope::sin2(t_ramp, times.back() + t_ramp + period)
                     : PulseEnvelope::square(times.back());
    const double spin_phase = model == GateModel::tw_ms ? 0.0 : base.tilde_phi();
    const Eigen::Vector2cd spin0 = spin_plus_eigvec(spin_phase);

    IntegratorConfig cfg;
    const AdaptiveRun run = evolve_adaptive(
        [&](const SpaceDescriptor& space) { return build_gate_model(model, base, space); },
        [&](const SpaceDescriptor& space) { return spin_motion_ground(space, spin0); }, env, cfg,
        1, 20, times);

    std::vector<double> mags;
    for (const auto& state : run.states) {
        const int m = state.space.motion_dim();
        const MatrixXcd a = mode_annihilation(m);
        // condition on the prepared spin eigenstate, then <a> of that branch
        VectorXcd branch = VectorXcd::Zero(m);
        for (int n = 0; n < m; ++n)
            branch(n) =
                std::conj(spin0(0)) * state.amps(n) + std::conj(spin0(1)) * state.amps(m + n);
        const double nrm = branch.squaredNorm();
        if (nrm < 1e-12) throw FitError("conditioned norm vanished during extraction", 1.0);
        const complex<double> alpha = branch.dot(a * branch) / nrm;
        mags.push_back(std::abs(alpha));
    }
    const LinearFit fit = fit_linear(times, mags);
    const double scale = *std::max_element(mags.begin(), mags.end());
    if (scale <= 0.0 || fit.residual_rms > 0.02 * scale)
        throw FitError("displacement growth is not linear (off-resonant contamination)",
                       fit.residual_rms / std::max(scale, 1e-300));
    return 2.0 * fit.slope;
}

ScanResult sdf_curve(const PhysParams& p, const std::vector<double>& xs, double t_ramp) {
    ScanResult scan;
    scan.axis_name = "x_2omega_over_delta";
    scan.axis_values = xs;
    struct Point {
        double tw, sw, analytic;
    };
    const auto pts = parallel_map<Point>(xs.size(), [&](size_t i) {
        const double omega = 0.5 * xs[i] * p.omega_z;
        const PhysParams px = p.with_rabi(omega);
        Point pt;
        pt.tw = extract_sdf(px, GateModel::tw_ms, t_ramp) / (p.eta * omega);
        pt.sw = extract_sdf(px, GateModel::sw_ms, t_ramp) / (2.0 * p.eta * omega);
        pt.analytic = std::abs(std::cyl_bessel_j(0, xs[i]) + std::cyl_bessel_j(2, xs[i]));
        return pt;
    });
    std::vector<double> tw, sw, an;
    for (const auto& pt : pts) {
        tw.push_back(pt.tw);
        sw.push_back(pt.sw);
        an.push_back(pt.analytic);
    }
    scan.add_series("sdf_tw_norm", std::move(tw));
    scan.add_series("sdf_sw_norm", std::move(sw));
    scan.add_series("sdf_tw_analytic", std::move(an));
    return scan;
}

double bell_fidelity(GateModel model, const PhysParams& p, double delta_g,
                     const PulseEnvelope& env) {
    PhysParams base = p.with_ions(2);
    base.delta = base.omega_z + delta_g;
    base.validate();
    if (base.omega_rabi == 0.0) return 0.5;  // |dd> against the even Bell state
    IntegratorConfig cfg;
    const AdaptiveRun run = evolve_adaptive(
        [&](const SpaceDescriptor& space) { return build_gate_model(model, base, space); },
        [&](const SpaceDescriptor& space) {
            Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(space.spin_dim());
            amps(0) = 1.0;
            return spin_motion_ground(space, amps);
        },
        env, cfg, 2, 20);
    const MatrixXcd rho = trace_out_motion(run.states.back());
    return 0.5 * (rho(0, 0).real() + rho(3, 3).real()) + std::abs(rho(0, 3));
}

GateResult optimize_rabi(GateModel model, const PhysParams& p, double delta_g,
                         const PulseEnvelope& env, int n_coarse) {
    if (!(delta_g > 0.0)) throw ValidationError("optimize_rabi requires delta_g > 0");
    if (n_coarse < 40) n_coarse = 40;
    const double delta = p.omega_z + delta_g;
    const double lo = 0.05 * 0.5 * delta, hi = 3.0 * 0.5 * delta;
    std::vector<double> omegas(n_coarse);
    for (int i = 0; i < n_coarse; ++i)
        omegas[i] = lo + (hi - lo) * double(i) / double(n_coarse - 1);
    auto fidelity_at = [&](double omega) {
        return bell_fidelity(model, p.with_rabi(omega), delta_g, env);
    };
    const auto coarse =
        parallel_map<double>(omegas.size(), [&](size_t i) { return fidelity_at(omegas[i]); });
    const auto best_it = std::max_element(coarse.begin(), coarse.end());
    if (*best_it - *std::min_element(coarse.begin(), coarse.end()) < 1e-6)
        throw FitError("fidelity landscape is flat over the Rabi grid", *best_it);
    const int best = int(best_it - coarse.begin());
    const double bl = omegas[size_t(std::max(0, best - 1))];
    const double bh = omegas[size_t(std::min(n_coarse - 1, best + 1))];
    const double omega_star = golden_max(fidelity_at, bl, bh, 1e-3 * (hi - lo));
    const double f_star = fidelity_at(omega_star);
    GateResult res;
    res.delta_g = delta_g;
    res.t_gate_eff = two_pi / delta_g;
    if (f_star >= *best_it) {
        res.omega_star = omega_star;
        res.fidelity = f_star;
    } else {  // keep the grid point if refinement straddled a kink
        res.omega_star = omegas[best];
        res.fidelity = *best_it;
    }
    return res;
}

std::vector<GateResult> gate_duration_sweep(GateModel model, const PhysParams& p,
                                            const std::vector<double>& durations, double t_ramp) {
    std::vector<GateResult> out;
    for (double t_eff : durations) {
        const double delta_g = two_pi / t_eff;
        const PulseEnvelope env = t_ramp > 0.0 ? PulseEnvelope::sin2(t_ramp, t_eff + t_ramp)
                                               : PulseEnvelope::square(t_eff);
        out.push_back(optimize_rabi(model, p, delta_g, env));
    }
    return out;
}

ScanResult fidelity_vs_duration(GateModel model, const PhysParams& p,
                                const std::vector<double>& durations, double t_ramp) {
    const auto results = gate_duration_sweep(model, p, durations, t_ramp);
    ScanResult scan;
    scan.axis_name = "t_gate_eff_s";
    std::vector<double> om, fid;
    for (const auto& r : results) {
        scan.axis_values.push_back(r.t_gate_eff);
        om.push_back(r.omega_star);
        fid.push_back(r.fidelity);
    }
    scan.add_series("omega_star_rad_s", std::move(om));
    scan.add_probability_series("fidelity", std::move(fid));
    return scan;
}

ScanResult power_curves(const std::vector<GateResult>& sw, const std::vector<GateResult>& tw,
                        const PhysParams& p) {
    if (sw.size() != tw.size() || sw.empty())
        throw ValidationError("power_curves needs matching SW/TW sweeps");
    size_t slowest = 0;
    for (size_t i = 1; i < sw.size(); ++i)
        if (sw[i].t_gate_eff > sw[slowest].t_gate_eff) slowest = i;
    const double norm = 2.0 * sw[slowest].omega_star * sw[slowest].omega_star;

    ScanResult scan;
    scan.axis_name = "t_gate_eff_s";
    std::vector<double> psw, ptw, ratio, attain;
    for (size_t i = 0; i < sw.size(); ++i) {
        scan.axis_values.push_back(sw[i].t_gate_eff);
        const double rp_sw = 2.0 * sw[i].omega_star * sw[i].omega_star / norm;
        const double delta = p.omega_z + tw[i].delta_g;
        // single phase-space loop: required force delta_g/2 against the Bessel ceiling
        const bool ok = 0.5 * tw[i].delta_g <= sdf_peak(p.eta, delta).omega_sdf_star;
        const double rp_tw =
            ok ? tw[i].omega_star * tw[i].omega_star / norm : std::numeric_limits<double>::quiet_NaN();
        psw.push_back(rp_sw);
        ptw.push_back(rp_tw);
        ratio.push_back(rp_tw / rp_sw);
        attain.push_back(ok ? 1.0 : 0.0);
    }
    scan.add_series("rel_power_sw", std::move(psw));
    scan.add_series("rel_power_tw", std::move(ptw));
    scan.add_series("ratio_tw_sw", std::move(ratio));
    scan.add_series("tw_attainable", std::move(attain));
    return scan;
}

ScanResult power_curves(const PhysParams& p, const std::vector<double>& durations, double t_ramp) {
    const auto sw = gate_duration_sweep(GateModel::sw_ms, p, durations, t_ramp);
    const auto tw = gate_duration_sweep(GateModel::tw_ms, p, durations, t_ramp);
    return power_curves(sw, tw, p);
}

double spacing_fit(const ScanResult& scan) {
    const auto& dphi = scan.axis_values;
    const auto& p11 = scan.at("p11");
    const auto& pmix = scan.at("p01p10");
    const auto& p00 = scan.at("p00");
    // independent carrier flips: P_i = sin^2(theta0 sin(dphi_i/2)), ion 2 offset
    auto residuals = [&](const std::vector<double>& q) {
        const double theta0 = q[0], off = q[1];
        std::vector<double> r;
        r.reserve(3 * dphi.size());
        for (size_t j = 0; j < dphi.size(); ++j) {
            const double s1 = std::sin(theta0 * std::sin(0.5 * dphi[j]));
            const double s2 = std::sin(theta0 * std::sin(0.5 * (dphi[j] + off)));
            const double f1 = s1 * s1, f2 = s2 * s2;
            r.push_back((1.0 - f1) * (1.0 - f2) - p11[j]);
            r.push_back(f1 * (1.0 - f2) + (1.0 - f1) * f2 - pmix[j]);
            r.push_back(f1 * f2 - p00[j]);
        }
        return r;
    };
    const auto fitted = fit_least_squares(residuals, {0.5 * std::numbers::pi, 0.0}, 200);
    return fitted[1];
}

ScanResult bichromatic_tone_scan(const PhysParams& p, double delta_g, Tone tone, int n_points) {
    PhysParams base = p.with_ions(2);
    base.delta = (tone == Tone::blue ? 1.0 : -1.0) * (base.omega_z - delta_g);
    const double offset = tone == Tone::blue ? p.dphi_bd : p.dphi_rd;
    base.validate();
    const double rabi = carrier_rabi_max(base);
    const double t_pulse = std::numbers::pi / std::sqrt(rabi * rabi + base.delta * base.delta);

    ScanResult scan;
    scan.axis_name = "dphi_rad";
    for (int i = 0; i < n_points; ++i)
        scan.axis_values.push_back(two_pi * double(i) / double(n_points));  // periodic grid

    const auto pops = parallel_map<std::vector<double>>(scan.axis_values.size(), [&](size_t i) {
        return sw_pulse_populations(base.with_dphi(scan.axis_values[i] + offset), t_pulse);
    });
    std::vector<double> p11, pmix, p00;
    for (const auto& v : pops) {
        p11.push_back(v[0]);
        pmix.push_back(v[1] + v[2]);
        p00.push_back(v[3]);
    }
    scan.add_probability_series("p11", std::move(p11));
    scan.add_probability_series("p01p10", std::move(pmix));
    scan.add_probability_series("p00", std::move(p00));
    return scan;
}

double fringe_shift_fit(const ScanResult& measured, const ScanResult& reference) {
    auto objective = [&](double s) {
        double sse = 0.0;
        for (const auto& [name, vals] : measured.series) {
            if (!reference.has(name)) continue;
            const auto& ref = reference.at(name);
            for (size_t j = 0; j < vals.size(); ++j) {
                const double r = vals[j] - interp_periodic(ref, measured.axis_values[j] + s);
                sse += r * r;
            }
        }
        return -sse;
    };
    return golden_max(objective, -0.8, 0.8, 1e-7);
}

std::pair<double, double> bichromatic_offset_cal(const PhysParams& p, double delta_g,
                                                 int n_points) {
    PhysParams clean = p;
    clean.dphi_bd = 0.0;
    clean.dphi_rd = 0.0;
    const int n_ref = 512;
    const ScanResult ref_blue = bichromatic_tone_scan(clean, delta_g, Tone::blue, n_ref);
    const ScanResult ref_red = bichromatic_tone_scan(clean, delta_g, Tone::red, n_ref);
    const ScanResult meas_blue = bichromatic_tone_scan(p, delta_g, Tone::blue, n_points);
    const ScanResult meas_red = bichromatic_tone_scan(p, delta_g, Tone::red, n_points);
    return {fringe_shift_fit(meas_blue, ref_blue), fringe_shift_fit(meas_red, ref_red)};
}

double carrier_suppression(double rabi_imbalance_rel, double sigma_phi) {
    if (rabi_imbalance_rel < 0.0 || sigma_phi < 0.0)
        throw ValidationError("carrier_suppression inputs must be non-negative");
    const double imb = 0.5 * rabi_imbalance_rel;
    const double esin2 =
        sigma_phi == 0.0 ? 0.0 : gaussian_expectation(
                                     [](double x) {
                                         const double s = std::sin(0.5 * x);
                                         return s * s;
                                     },
                                     sigma_phi);
    const double floor2 = imb * imb + esin2;
    if (floor2 == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(floor2);
}

void add_projection_noise(ScanResult& scan, int shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto binom = [&](int n, double prob) {
        std::binomial_distribution<int> d(n, std::clamp(prob, 0.0, 1.0));
        return d(rng);
    };
    if (scan.has("p11")) {
        auto& p11 = series_ref(scan, "p11");
        auto& pmix = series_ref(scan, "p01p10");
        auto& p00 = series_ref(scan, "p00");
        for (size_t j = 0; j < p11.size(); ++j) {
            const int n11 = binom(shots, p11[j]);
            const int rest = shots - n11;
            const double q = p11[j] < 1.0 ? pmix[j] / (1.0 - p11[j]) : 0.0;
            const int nmix = rest > 0 ? binom(rest, q) : 0;
            p11[j] = double(n11) / shots;
            pmix[j] = double(nmix) / shots;
            p00[j] = double(shots - n11 - nmix) / shots;
        }
    } else if (scan.has("p_transfer")) {
        for (double& v : series_ref(scan, "p_transfer")) v = double(binom(shots, v)) / shots;
    } else {
        throw ValidationError("no probability series to add noise to");
    }
}

}  // namespace swgate
