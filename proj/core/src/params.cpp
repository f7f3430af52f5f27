#include "amlab/params.hpp"

#include <cmath>

#include "amlab/error.hpp"

namespace amlab {

void PhysicalParams::validate() const {
  if (!std::isfinite(m) || !std::isfinite(e) || !std::isfinite(hbar) || !std::isfinite(c)) {
    throw PreconditionError("physical parameters must be finite");
  }
  if (m < 0.0) throw PreconditionError("mass must be non-negative");
  if (!(hbar > 0.0)) throw PreconditionError("hbar must be positive");
  if (!(c > 0.0)) throw PreconditionError("c must be positive");
}

}  // namespace amlab
