#include "swgate/hamiltonians.hpp"

#include <cmath>
#include <complex>

#include "swgate/errors.hpp"
#include "swgate/numerics.hpp"

namespace swgate {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;

namespace {

constexpr complex<double> kI{0.0, 1.0};

// Eigendecomposition of the quadrature eta (a + a†), shared by the operator
// sine/cosine/exponential below.
struct QuadratureEig {
    MatrixXd vecs;   // real symmetric tridiagonal
    VectorXd vals;
};

QuadratureEig quadrature_eig(double eta, int motion_dim) {
    MatrixXd q = MatrixXd::Zero(motion_dim, motion_dim);
    for (int n = 1; n < motion_dim; ++n) {
        const double v = eta * std::sqrt(double(n));
        q(n - 1, n) = v;
        q(n, n - 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(q);
    return {es.eigenvectors(), es.eigenvalues()};
}

template <typename F>
MatrixXcd quadrature_function(double eta, int motion_dim, F f) {
    const QuadratureEig eig = quadrature_eig(eta, motion_dim);
    VectorXd fv(motion_dim);
    for (int k = 0; k < motion_dim; ++k) fv(k) = f(eig.vals(k));
    return (eig.vecs * fv.asDiagonal() * eig.vecs.transpose()).cast<complex<double>>();
}

double rate_scale_of(const PhysParams& p) {
    return std::max({p.omega_z, std::abs(p.delta), p.omega_rabi, two_pi});
}

// Per-ion standing-wave phase at the ion position for a given tone offset.
double ion_dphi(const PhysParams& p, int ion, double tone_offset) {
    return p.dphi() + tone_offset + (ion == 1 ? p.dphi_sp : 0.0);
}

// Adds the exact-sine SW terms of one tone at detuning d:
//   Omega e^{i(pt - d t)} sum_i sigma_+^(i) sin(X0 + dphi_i/2)
//   + (dOmega/2) e^{i(pt - pi/2 - d t)} sum_i sigma_+^(i) cos(X0 + dphi_i/2)
void append_sw_tone(std::vector<RotatingTerm>& terms, const PhysParams& p,
                    const SpaceDescriptor& space, double detuning, double tone_offset) {
    const int md = space.motion_dim();
    MatrixXcd sin_part = MatrixXcd::Zero(space.dim(), space.dim());
    MatrixXcd cos_part = MatrixXcd::Zero(space.dim(), space.dim());
    for (int ion = 0; ion < space.n_ions; ++ion) {
        const double half = 0.5 * ion_dphi(p, ion, tone_offset);
        const MatrixXcd sp = spin_embed(space, ion, sigma_plus());
        sin_part.noalias() += kron(sp, sin_quadrature(p.eta, md, half));
        if (p.rabi_imbalance != 0.0)
            cos_part.noalias() += kron(sp, cos_quadrature(p.eta, md, half));
    }
    terms.push_back({p.omega_rabi * std::polar(1.0, p.tilde_phi()), detuning, std::move(sin_part)});
    if (p.rabi_imbalance != 0.0)
        terms.push_back({0.5 * p.rabi_imbalance * std::polar(1.0, p.tilde_phi() - 0.5 * std::numbers::pi),
                         detuning, std::move(cos_part)});
}

}  // namespace

MatrixXcd sin_quadrature(double eta, int motion_dim, double theta) {
    return quadrature_function(eta, motion_dim, [theta](double x) { return std::sin(x + theta); });
}

MatrixXcd cos_quadrature(double eta, int motion_dim, double theta) {
    return quadrature_function(eta, motion_dim, [theta](double x) { return std::cos(x + theta); });
}

MatrixXcd exp_i_quadrature(double eta, int motion_dim) {
    const QuadratureEig eig = quadrature_eig(eta, motion_dim);
    Eigen::VectorXcd ph(motion_dim);
    for (int k = 0; k < motion_dim; ++k) ph(k) = std::polar(1.0, eig.vals(k));
    return eig.vecs.cast<complex<double>>() * ph.asDiagonal() * eig.vecs.transpose().cast<complex<double>>();
}

TimedOperator h_tw(const PhysParams& p, const SpaceDescriptor& space) {
    p.validate();
    MatrixXcd op = MatrixXcd::Zero(space.dim(), space.dim());
    for (int ion = 0; ion < space.n_ions; ++ion)
        op.noalias() += kron(spin_embed(space, ion, sigma_plus()), exp_i_quadrature(p.eta, space.motion_dim()));
    std::vector<RotatingTerm> terms;
    terms.push_back({0.5 * p.omega_rabi * std::polar(1.0, p.phi1), p.delta, std::move(op)});
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

TimedOperator h_sw_exact(const PhysParams& p, const SpaceDescriptor& space) {
    p.validate();
    std::vector<RotatingTerm> terms;
    append_sw_tone(terms, p, space, p.delta, 0.0);
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

TimedOperator h_sw_lamb_dicke(const PhysParams& p, const SpaceDescriptor& space) {
    p.validate();
    const int md = space.motion_dim();
    const MatrixXcd x0 = mode_annihilation(md) + mode_annihilation(md).adjoint();
    const MatrixXcd eye = MatrixXcd::Identity(md, md);
    MatrixXcd sideband = MatrixXcd::Zero(space.dim(), space.dim());
    MatrixXcd carrier = MatrixXcd::Zero(space.dim(), space.dim());
    for (int ion = 0; ion < space.n_ions; ++ion) {
        const MatrixXcd sp = spin_embed(space, ion, sigma_plus());
        sideband.noalias() += kron(sp, x0);
        carrier.noalias() += kron(sp, eye);
    }
    const complex<double> phase = std::polar(1.0, p.tilde_phi());
    const double half = 0.5 * p.dphi();
    std::vector<RotatingTerm> terms;
    terms.push_back({p.eta * p.omega_rabi * std::cos(half) * phase, p.delta, std::move(sideband)});
    terms.push_back({p.omega_rabi * std::sin(half) * phase, p.delta, std::move(carrier)});
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

TimedOperator h_tw_ms(const PhysParams& p, const SpaceDescriptor& space, double phi) {
    p.validate();
    const int md = space.motion_dim();
    const MatrixXcd x0 = mode_annihilation(md) + mode_annihilation(md).adjoint();
    MatrixXcd force = MatrixXcd::Zero(space.dim(), space.dim());
    MatrixXcd carrier = MatrixXcd::Zero(space.dim(), space.dim());
    for (int ion = 0; ion < space.n_ions; ++ion) {
        force.noalias() += kron(spin_embed(space, ion, sigma_phi(phi)), x0);
        carrier.noalias() +=
            kron(spin_embed(space, ion, sigma_phi(phi - 0.5 * std::numbers::pi)), MatrixXcd::Identity(md, md));
    }
    // Hermitian A with real amplitude z at detuning d contributes 2 z cos(d t) A.
    std::vector<RotatingTerm> terms;
    terms.push_back({0.5 * p.eta * p.omega_rabi, p.delta, std::move(force)});
    terms.push_back({0.5 * p.omega_rabi, p.delta, std::move(carrier)});
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

TimedOperator h_tw_ms_exact(const PhysParams& p, const SpaceDescriptor& space, double phi) {
    p.validate();
    MatrixXcd op = MatrixXcd::Zero(space.dim(), space.dim());
    for (int ion = 0; ion < space.n_ions; ++ion)
        op.noalias() += kron(spin_embed(space, ion, sigma_plus()), exp_i_quadrature(p.eta, space.motion_dim()));
    // Both tones ride in beam b1 with optical phase phi - pi/2, so the first-order
    // sideband spin phase lands on phi as in the Lamb-Dicke form above.
    const complex<double> z = 0.5 * p.omega_rabi * std::polar(1.0, phi - 0.5 * std::numbers::pi);
    std::vector<RotatingTerm> terms;
    terms.push_back({z, p.delta, op});
    terms.push_back({z, -p.delta, std::move(op)});
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

TimedOperator h_sw_ms(const PhysParams& p, const SpaceDescriptor& space) {
    p.validate();
    const int md = space.motion_dim();
    const MatrixXcd x0 = mode_annihilation(md) + mode_annihilation(md).adjoint();
    MatrixXcd force = MatrixXcd::Zero(space.dim(), space.dim());
    MatrixXcd carrier = MatrixXcd::Zero(space.dim(), space.dim());
    for (int ion = 0; ion < space.n_ions; ++ion) {
        const MatrixXcd spt = spin_embed(space, ion, sigma_phi(p.tilde_phi()));
        force.noalias() += kron(spt, x0);
        carrier.noalias() += kron(spt, MatrixXcd::Identity(md, md));
    }
    const double half = 0.5 * p.dphi();
    std::vector<RotatingTerm> terms;
    terms.push_back({p.eta * p.omega_rabi * std::cos(half), p.delta, std::move(force)});
    terms.push_back({p.omega_rabi * std::sin(half), p.delta, std::move(carrier)});
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

TimedOperator h_sw_ms_exact(const PhysParams& p, const SpaceDescriptor& space) {
    p.validate();
    std::vector<RotatingTerm> terms;
    append_sw_tone(terms, p, space, p.delta, p.dphi_bd);    // blue-detuned tone
    append_sw_tone(terms, p, space, -p.delta, p.dphi_rd);   // red-detuned tone
    return TimedOperator(space, p.omega_z, std::move(terms), rate_scale_of(p));
}

double sdf_analytic(double eta, double omega_rabi, double delta) {
    if (!(delta > 0.0)) throw ValidationError("sdf_analytic requires delta > 0");
    const double x = 2.0 * omega_rabi / delta;
    return eta * omega_rabi * (std::cyl_bessel_j(0, x) + std::cyl_bessel_j(2, x));
}

SdfPeak sdf_peak(double eta, double delta) {
    // eta Omega (J0 + J2)(2 Omega/delta) = eta delta J1(x); maximize over x.
    auto f = [&](double x) { return eta * delta * std::cyl_bessel_j(1, x); };
    const double x_star = golden_max(f, 0.5, 3.5, 1e-10);
    return {x_star, f(x_star)};
}

}  // namespace swgate
