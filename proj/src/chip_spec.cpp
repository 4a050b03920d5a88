#include "plural/chip_spec.hpp"

#include <cmath>

#include "plural/errors.hpp"

namespace plural {

void ChipSpec::validate() const {
  if (!std::isfinite(area) || area <= 0.0)
    throw ValidationError("area", "must be a positive finite number");
  if (!std::isfinite(work) || work <= 0.0)
    throw ValidationError("work", "must be a positive finite number");
  if (!std::isfinite(cpi) || cpi <= 0.0)
    throw ValidationError("cpi", "must be a positive finite number");
  if (!(pollack_exponent > 0.0 && pollack_exponent < 1.0))
    throw ValidationError("pollack_exponent", "must lie in the open interval (0, 1)");
}

}  // namespace plural
