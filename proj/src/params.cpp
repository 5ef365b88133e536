#include "swgate/params.hpp"

#include <string>

#include "swgate/errors.hpp"

namespace swgate {

void PhysParams::validate() const {
    if (!(eta > 0.0 && eta <= 0.5))
        throw ValidationError("eta must be in (0, 0.5] (Lamb-Dicke regime), got " + std::to_string(eta));
    if (!(omega_z > 0.0)) throw ValidationError("omega_z must be positive");
    if (omega_rabi < 0.0) throw ValidationError("omega_rabi must be non-negative");
    if (rabi_imbalance < 0.0) throw ValidationError("rabi_imbalance must be non-negative");
    if (n_ions != 1 && n_ions != 2)
        throw ValidationError("n_ions must be 1 or 2, got " + std::to_string(n_ions));
}

}  // namespace swgate
