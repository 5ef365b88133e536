#ifndef SWGATE_PARAMS_HPP
#define SWGATE_PARAMS_HPP

#include <numbers>

namespace swgate {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// All rates are angular frequencies (rad/s); hbar is absorbed throughout.
struct PhysParams {
    double eta = 0.051;                   // Lamb-Dicke factor
    double omega_z = two_pi * 1.2e6;      // motional mode frequency
    double delta = 0.0;                   // detuning from qubit resonance
    double omega_rabi = two_pi * 50e3;    // single-beam Rabi frequency
    double phi1 = 0.0;                    // optical phase of beam b1
    double phi2 = 0.0;                    // optical phase of beam b2
    int n_ions = 1;
    double dphi_bd = 0.0;                 // blue-detuned SW anti-node offset
    double dphi_rd = 0.0;                 // red-detuned SW anti-node offset
    double rabi_imbalance = 0.0;          // beam amplitude difference dOmega (rad/s)
    double dphi_sp = 0.0;                 // ion-spacing phase mismatch seen by ion 2

    double dphi() const { return phi1 - phi2; }
    // mean optical phase; the factor i from the two-beam sum is absorbed here
    double tilde_phi() const { return 0.5 * (phi1 + phi2 + std::numbers::pi); }

    // Sets phi1 - phi2 = x, keeping phi2 (adjusting phi1, as the phase lock does).
    PhysParams with_dphi(double x) const {
        PhysParams p = *this;
        p.phi1 = p.phi2 + x;
        return p;
    }
    PhysParams with_rabi(double omega) const {
        PhysParams p = *this;
        p.omega_rabi = omega;
        return p;
    }
    PhysParams with_ions(int n) const {
        PhysParams p = *this;
        p.n_ions = n;
        return p;
    }

    // Throws ValidationError outside the Lamb-Dicke regime or for unphysical rates.
    void validate() const;
};

}  // namespace swgate

#endif
