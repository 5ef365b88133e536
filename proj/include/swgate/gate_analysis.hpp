#ifndef SWGATE_GATE_ANALYSIS_HPP
#define SWGATE_GATE_ANALYSIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "swgate/envelope.hpp"
#include "swgate/integrator.hpp"
#include "swgate/params.hpp"
#include "swgate/scan_result.hpp"
#include "swgate/timed_operator.hpp"

namespace swgate {

enum class GateModel { tw_ms, sw_ms };
enum class Placement { node, antinode };
enum class Resonance { carrier, sideband };
enum class Tone { blue, red };

struct GateResult {
    double t_gate_eff = 0.0;  // 2 pi / delta_g
    double delta_g = 0.0;
    double omega_star = 0.0;  // optimized single-beam Rabi frequency
    double fidelity = 0.0;
    double rel_power = 0.0;   // filled by power_curves
};

// Carrier Rabi frequency 2|<up,0|H|down,0>| of the monochromatic SW at maximal
// coupling (dphi = pi), and the corresponding pi-time.
double carrier_rabi_max(const PhysParams& p);
double carrier_pi_time(const PhysParams& p);

// Monochromatic SW resonant with the carrier, scanning dphi over [0, 2pi].
// One ion: p_transfer. Two ions: p11, p01p10, p00 starting from both-bright.
// t_pulse <= 0 selects the pi-time at maximal carrier coupling.
ScanResult phase_scan(const PhysParams& p, double t_pulse, int n_ions, int n_points = 81);

// Monochromatic SW detuning scan around the carrier (delta = 0) or the blue
// sideband (delta = omega_z), with the ion at a field node (dphi = pi) or
// anti-node (dphi = 0). Pulse length is the pi-time of the maximally coupled
// configuration for the chosen resonance.
ScanResult detuning_scan(const PhysParams& p, Placement placement, Resonance resonance,
                         double span = two_pi * 0.25e6, int n_points = 61);

// Resonant spin-dependent-force magnitude extracted from the linear growth of the
// spin-conditioned coherent displacement, Omega_SDF = 2 d|alpha|/dt. Single ion,
// delta = omega_z, amplitude ramped over t_ramp and then held.
double extract_sdf(const PhysParams& p, GateModel model, double t_ramp = 3.6e-6);

// extract_sdf over a grid of x = 2 Omega/delta for both models; series
// sdf_tw_norm (per eta Omega), sdf_sw_norm (per 2 eta Omega), sdf_tw_analytic.
ScanResult sdf_curve(const PhysParams& p, const std::vector<double>& xs, double t_ramp = 3.6e-6);

// Bell-state fidelity of the MS gate from |dd,0>: max_zeta <Phi_zeta|rho_spin|Phi_zeta>.
double bell_fidelity(GateModel model, const PhysParams& p, double delta_g,
                     const PulseEnvelope& env);

// Maximizes bell_fidelity over Omega: coarse grid of >= 40 points spanning
// [0.05, 3] x delta/2, then golden-section refinement to relative width 1e-3.
GateResult optimize_rabi(GateModel model, const PhysParams& p, double delta_g,
                         const PulseEnvelope& env, int n_coarse = 40);

// optimize_rabi over effective gate durations (envelope: sin^2 ramps of t_ramp,
// total length 2 pi/delta_g + t_ramp; square if t_ramp == 0).
std::vector<GateResult> gate_duration_sweep(GateModel model, const PhysParams& p,
                                            const std::vector<double>& durations, double t_ramp);
ScanResult fidelity_vs_duration(GateModel model, const PhysParams& p,
                                const std::vector<double>& durations, double t_ramp = 10e-6);

// Relative laser power at the ions: P ~ (per-beam Omega)^2 summed over beams
// (two for the SW, one for the TW), normalized to the SW value at the slowest
// duration. TW durations whose required force exceeds the Bessel ceiling are
// marked unattainable (tw_attainable = 0, powers NaN).
ScanResult power_curves(const std::vector<GateResult>& sw, const std::vector<GateResult>& tw,
                        const PhysParams& p);
ScanResult power_curves(const PhysParams& p, const std::vector<double>& durations,
                        double t_ramp = 10e-6);

// Least-squares fit of the two-ion phase-scan populations for the ion-spacing
// mismatch dphi_sp (model: independent carrier flips, free overall pulse area).
double spacing_fit(const ScanResult& two_ion_scan);

// Off-resonant monochromatic SW phase scan of one bichromatic tone at
// delta = +/-(omega_z - delta_g), as used to locate the tone's anti-node.
ScanResult bichromatic_tone_scan(const PhysParams& p, double delta_g, Tone tone,
                                 int n_points = 81);

// Least-squares fringe shift s with measured(dphi) = reference(dphi + s).
double fringe_shift_fit(const ScanResult& measured, const ScanResult& reference);

// Recovers (dphi_bd, dphi_rd) from per-tone fringe shifts against zero-offset
// reference scans.
std::pair<double, double> bichromatic_offset_cal(const PhysParams& p, double delta_g,
                                                 int n_points = 81);

// Predicted max:min carrier Rabi ratio 1/sqrt((dOmega/2Omega)^2 + E[sin^2(dphi/2)])
// with dphi ~ N(0, sigma^2) evaluated by Gauss-Hermite quadrature; infinite for an
// ideal SW.
double carrier_suppression(double rabi_imbalance_rel, double sigma_phi);

// Multinomial projection noise (fixed shots per point) applied to the probability
// series of a scan, in place.
void add_projection_noise(ScanResult& scan, int shots, std::uint64_t seed);

}  // namespace swgate

#endif
