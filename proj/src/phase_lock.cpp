#include "swgate/phase_lock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swgate/errors.hpp"
#include "swgate/params.hpp"

namespace swgate {

void LockConfig::validate() const {
    if (drift_rate < 0 || pd_offset_drift < 0 || pd_residual < 0)
        throw ValidationError("lock noise rates must be non-negative");
    if (m_feedback_shots < 1 || n_main_shots < 1)
        throw ValidationError("lock shot counts must be >= 1");
    if (shot_period <= 0 || duration <= 0)
        throw ValidationError("lock timing must be positive");
}

double ramsey_phase_estimate(double true_phi, int m_shots, std::mt19937_64& rng) {
    const double p = 0.5 * (1.0 + std::sin(true_phi));
    std::binomial_distribution<int> d(m_shots, std::clamp(p, 0.0, 1.0));
    const int k = d(rng);
    return std::asin(std::clamp(2.0 * double(k) / m_shots - 1.0, -1.0, 1.0));
}

LockTrace simulate_lock(const LockConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.rng_seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    const double step_sigma = std::sqrt(cfg.shot_period);

    double path_phase = 0.0;   // removed by the PD loop before every shot
    double pd_offset = 0.0;    // PD lock point vs ion, survives the fast loop
    double correction = 0.0;   // slow-loop correction applied to phi1

    LockTrace trace;
    const long total_shots = long(cfg.duration / cfg.shot_period);
    const long cycle = cfg.m_feedback_shots + cfg.n_main_shots;
    trace.times.reserve(size_t(total_shots / cycle + 1) * cfg.n_main_shots);
    trace.dphi.reserve(trace.times.capacity());

    long shot = 0;
    double sum_sq = 0.0;
    while (shot < total_shots) {
        // M ion-feedback shots, then the estimate is fed back onto phi1
        int k = 0;
        const int m = cfg.m_feedback_shots;
        for (int i = 0; i < m && shot < total_shots; ++i, ++shot) {
            path_phase += cfg.drift_rate * step_sigma * unit(rng);
            pd_offset += cfg.pd_offset_drift * step_sigma * unit(rng);
            const double at_ion = pd_offset + cfg.pd_residual * unit(rng) - correction;
            const double p = 0.5 * (1.0 + std::sin(at_ion));
            std::bernoulli_distribution flip(std::clamp(p, 0.0, 1.0));
            if (flip(rng)) ++k;
        }
        if (cfg.ion_feedback)
            correction += std::asin(std::clamp(2.0 * double(k) / m - 1.0, -1.0, 1.0));
        // N main shots, recording the residual phase at the ion
        for (int i = 0; i < cfg.n_main_shots && shot < total_shots; ++i, ++shot) {
            path_phase += cfg.drift_rate * step_sigma * unit(rng);
            pd_offset += cfg.pd_offset_drift * step_sigma * unit(rng);
            const double at_ion = pd_offset + cfg.pd_residual * unit(rng) - correction;
            trace.times.push_back(shot * cfg.shot_period);
            trace.dphi.push_back(at_ion);
            sum_sq += at_ion * at_ion;
        }
    }
    if (!trace.dphi.empty()) trace.rms = std::sqrt(sum_sq / trace.dphi.size());
    return trace;
}

HistogramFit histogram(const LockTrace& trace, int bins) {
    if (trace.dphi.size() < 100) throw ValidationError("histogram needs >= 100 samples");
    if (bins < 3) throw ValidationError("histogram needs >= 3 bins");
    double mean = 0.0;
    for (double v : trace.dphi) mean += v;
    mean /= trace.dphi.size();
    double var = 0.0;
    for (double v : trace.dphi) var += (v - mean) * (v - mean);
    var /= trace.dphi.size();
    if (var == 0.0) throw FitError("degenerate zero-variance trace", 0.0);
    const double spread = 3.5 * std::sqrt(var);
    const double lo = mean - spread, hi = mean + spread;
    const double width = (hi - lo) / bins;

    HistogramFit fit;
    fit.counts.assign(bins, 0.0);
    fit.bin_centers.resize(bins);
    for (int b = 0; b < bins; ++b) fit.bin_centers[b] = lo + (b + 0.5) * width;
    for (double v : trace.dphi) {
        const int b = int((v - lo) / width);
        if (b >= 0 && b < bins) fit.counts[b] += 1.0;
    }

    // Gaussian fit by binned maximum likelihood (count-weighted moments)
    double n = 0.0, m1 = 0.0;
    for (int b = 0; b < bins; ++b) {
        n += fit.counts[b];
        m1 += fit.counts[b] * fit.bin_centers[b];
    }
    if (n == 0.0) throw FitError("all samples fell outside the binning range", 0.0);
    m1 /= n;
    double m2 = 0.0;
    for (int b = 0; b < bins; ++b)
        m2 += fit.counts[b] * (fit.bin_centers[b] - m1) * (fit.bin_centers[b] - m1);
    fit.mean = m1;
    fit.sigma = std::sqrt(m2 / n);

    // residual of the fitted curve against the histogram, as the quality flag
    const double peak = *std::max_element(fit.counts.begin(), fit.counts.end());
    const double amp = n * width / (fit.sigma * std::sqrt(2.0 * std::numbers::pi));
    double ss = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double z = (fit.bin_centers[b] - fit.mean) / fit.sigma;
        const double model = amp * std::exp(-0.5 * z * z);
        ss += (model - fit.counts[b]) * (model - fit.counts[b]);
    }
    fit.residual_rel = std::sqrt(ss / bins) / std::max(peak, 1.0);
    fit.gaussian_like = fit.residual_rel < 0.1;
    return fit;
}

PositionFluctuation position_fluctuation(double sigma) {
    return {sigma / two_pi, sigma / (2.0 * two_pi)};
}

}  // namespace swgate
