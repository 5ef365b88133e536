#ifndef SWGATE_HAMILTONIANS_HPP
#define SWGATE_HAMILTONIANS_HPP

#include "swgate/params.hpp"
#include "swgate/space.hpp"
#include "swgate/timed_operator.hpp"

namespace swgate {

// Traveling monochromatic wave, exact exponential of the position operator:
//   (Omega/2) e^{i(phi1 + eta(a e^{-i wz t} + a† e^{i wz t}) - delta t)} S+  + h.c.
TimedOperator h_tw(const PhysParams& p, const SpaceDescriptor& space);

// Standing wave with the operator sine evaluated exactly:
//   Omega e^{i(phi_tilde - delta t)} S+ sin(eta(a e^{-i wz t}+a† e^{i wz t}) + dphi/2) + h.c.
// Ion 2 sees dphi + dphi_sp; a beam imbalance dOmega adds the cosine quadrature at
// amplitude dOmega/2 and spin phase phi_tilde - pi/2.
TimedOperator h_sw_exact(const PhysParams& p, const SpaceDescriptor& space);

// Lamb-Dicke truncation of the standing wave (first sideband + carrier only).
TimedOperator h_sw_lamb_dicke(const PhysParams& p, const SpaceDescriptor& space);

// Bichromatic traveling-wave Moelmer-Soerensen interaction,
//   eta Omega S_phi cos(dt)(a e^{-i wz t}+a† e^{i wz t}) + Omega S_{phi-pi/2} cos(dt).
TimedOperator h_tw_ms(const PhysParams& p, const SpaceDescriptor& space, double phi);
// Same interaction assembled from two exact traveling waves at ±delta (cross-check).
TimedOperator h_tw_ms_exact(const PhysParams& p, const SpaceDescriptor& space, double phi);

// Bichromatic standing-wave MS in the Lamb-Dicke form,
//   2 eta Omega S_pt cos(dt)(a e^{-i wz t}+a† e^{i wz t}) cos(dphi/2) + 2 Omega S_pt cos(dt) sin(dphi/2).
TimedOperator h_sw_ms(const PhysParams& p, const SpaceDescriptor& space);
// Exact-sine bichromatic SW: two h_sw_exact tones at ±delta with independent
// anti-node offsets dphi_bd / dphi_rd (and dphi_sp on ion 2). This is the default
// model for gate simulations.
TimedOperator h_sw_ms_exact(const PhysParams& p, const SpaceDescriptor& space);

// Spin-dependent force magnitude of the TW-MS interaction after moving into the
// interaction picture of the carrier:  eta Omega [J0(2 Omega/delta) + J2(2 Omega/delta)].
double sdf_analytic(double eta, double omega_rabi, double delta);

// Location and value of the global maximum of sdf_analytic over Omega at fixed delta.
struct SdfPeak {
    double x_star;           // 2 Omega / delta at the maximum
    double omega_sdf_star;   // peak force (rad/s)
};
SdfPeak sdf_peak(double eta, double delta);

// Motion-only helpers: sin/cos of (eta (a + a†) + theta) via one eigendecomposition
// of the Hermitian quadrature per call.
Eigen::MatrixXcd sin_quadrature(double eta, int motion_dim, double theta);
Eigen::MatrixXcd cos_quadrature(double eta, int motion_dim, double theta);
Eigen::MatrixXcd exp_i_quadrature(double eta, int motion_dim);  // e^{i eta (a+a†)}

}  // namespace swgate

#endif
