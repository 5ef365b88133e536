#ifndef SWGATE_PHASE_LOCK_HPP
#define SWGATE_PHASE_LOCK_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace swgate {

// Two-loop stabilization of the standing-wave phase: a fast photodiode lock that
// resets the interferometer before every shot, plus slow feedback from zero-delay
// Ramsey experiments on the ion itself.
struct LockConfig {
    double drift_rate = 0.1;        // rad/sqrt(s), uncontrolled path-length phase
    double pd_offset_drift = 0.02;  // rad/sqrt(s), PD lock point vs ion position
    double pd_residual = 0.02;      // rad rms left by the fast loop, per shot
    int m_feedback_shots = 100;     // M
    int n_main_shots = 100;         // N
    double shot_period = 5e-3;      // s
    double duration = 3600.0;       // s
    std::uint64_t rng_seed = 1;
    bool ion_feedback = true;       // disable to reproduce the PD-only histogram

    void validate() const;
};

struct LockTrace {
    std::vector<double> times;  // s, at main shots
    std::vector<double> dphi;   // rad, phase at the ion during main shots
    double rms = 0.0;
};

// Zero-delay Ramsey estimate of the SW phase at the ion: k ~ Binomial(M, (1+sin phi)/2),
// estimate = asin(2k/M - 1). Valid in |phi| < pi/2.
double ramsey_phase_estimate(double true_phi, int m_shots, std::mt19937_64& rng);

LockTrace simulate_lock(const LockConfig& cfg);

struct HistogramFit {
    std::vector<double> bin_centers;
    std::vector<double> counts;
    double mean = 0.0;
    double sigma = 0.0;          // Gaussian fit width (binned maximum likelihood)
    double residual_rel = 0.0;   // rms misfit of the fitted curve over the peak count
    bool gaussian_like = true;   // residual_rel below 0.1
};

// Bins the trace and fits a Gaussian; throws on degenerate (zero-variance) data.
HistogramFit histogram(const LockTrace& trace, int bins);

// sigma/(2 pi) in units of the SW period, and of the optical wavelength (half the
// period): 0.12 rad maps to roughly lambda_SW/50 and lambda/100.
struct PositionFluctuation {
    double sw_period_fraction;
    double wavelength_fraction;
};
PositionFluctuation position_fluctuation(double sigma);

}  // namespace swgate

#endif
