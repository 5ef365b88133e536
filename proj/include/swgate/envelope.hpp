#ifndef SWGATE_ENVELOPE_HPP
#define SWGATE_ENVELOPE_HPP

namespace swgate {

// Amplitude pulse shape g(t): sin^2 ramps of duration t_ramp at both ends of a
// pulse of length t_total, or a flat square pulse.
struct PulseEnvelope {
    enum class Shape { sin2_ramp, square };

    double t_ramp = 0.0;
    double t_total = 0.0;
    Shape shape = Shape::square;

    static PulseEnvelope square(double t_total);
    static PulseEnvelope sin2(double t_ramp, double t_total);

    void validate() const;  // 0 <= 2 t_ramp <= t_total
};

// g(t) in [0,1]; rejects t outside [0, t_total].
double envelope(double t, const PulseEnvelope& env);

}  // namespace swgate

#endif
