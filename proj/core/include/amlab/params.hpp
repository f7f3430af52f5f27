#pragma once

namespace amlab {

/// Physical constants in the working unit system. The defaults are natural
/// units (hbar = c = m = 1) with an electron-like negative charge. Electromagnetic
/// quantities follow Gaussian conventions: div E = 4 pi rho, field momentum
/// density (E x B) / (4 pi c).
struct PhysicalParams {
  double m = 1.0;
  double e = -1.0;
  double hbar = 1.0;
  double c = 1.0;

  double kappa() const { return m * c / hbar; }

  /// Throws PreconditionError unless m >= 0, hbar > 0, c > 0 and all finite.
  void validate() const;
};

}  // namespace amlab
