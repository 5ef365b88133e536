#include "swgate/envelope.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "swgate/errors.hpp"

namespace swgate {

PulseEnvelope PulseEnvelope::square(double t_total) {
    PulseEnvelope env{0.0, t_total, Shape::square};
    env.validate();
    return env;
}

PulseEnvelope PulseEnvelope::sin2(double t_ramp, double t_total) {
    PulseEnvelope env{t_ramp, t_total, Shape::sin2_ramp};
    env.validate();
    return env;
}

void PulseEnvelope::validate() const {
    if (t_total < 0.0 || t_ramp < 0.0 || 2.0 * t_ramp > t_total * (1.0 + 1e-12))
        throw ValidationError("PulseEnvelope requires 0 <= 2 t_ramp <= t_total");
}

double envelope(double t, const PulseEnvelope& env) {
    if (t < 0.0 || t > env.t_total)
        throw ValidationError("envelope time outside [0, t_total]: t=" + std::to_string(t));
    if (env.shape == PulseEnvelope::Shape::square || env.t_ramp == 0.0) return 1.0;
    if (t < env.t_ramp) {
        const double s = std::sin(0.5 * std::numbers::pi * t / env.t_ramp);
        return s * s;
    }
    if (t > env.t_total - env.t_ramp) {
        const double s = std::sin(0.5 * std::numbers::pi * (env.t_total - t) / env.t_ramp);
        return s * s;
    }
    return 1.0;
}

}  // namespace swgate
