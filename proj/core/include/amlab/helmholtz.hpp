#pragma once

#include "amlab/convolution.hpp"
#include "amlab/field.hpp"

namespace amlab {

struct HelmholtzSplit {
  VectorField longitudinal;
  VectorField transverse;
  /// Interior L2 of div(transverse) over interior L2 of the gradient tensor of the input.
  double divergence_defect = 0.0;
  /// Interior L2 of curl(longitudinal), normalized the same way.
  double curl_defect = 0.0;
  /// Boundary magnitude exceeded 1e-3 of the peak: free-space assumptions are violated.
  bool non_decaying = false;
  /// Number of conjugate-gradient iterations used.
  int passes = 0;
};

struct HelmholtzOptions {
  ConvolutionOptions convolution{};
  /// Upper bound on conjugate-gradient iterations in transverse_projection.
  int max_passes = 40;
  /// Stop once the L2 norm of the discrete divergence left in the source region
  /// falls below this fraction of the L2 norm of the gradient tensor of the input.
  double tolerance = 1e-10;
};

/// Free-space split V = grad(theta) + V_t with laplacian(theta) = div V. The
/// potential is a Green's function convolution evaluated on a ghost-extended
/// grid. V is taken to vanish outside the box, and the discrete divergence left
/// in V_t is removed iteratively, so the projection is idempotent to solver
/// tolerance for smooth inputs whose transverse part also decays in the box.
HelmholtzSplit transverse_projection(const VectorField& v, const HelmholtzOptions& options = {});

struct CoulombField {
  ScalarField phi;
  VectorField E;
};

/// phi = integral rho(x') / |x - x'|, E = -grad phi.
CoulombField coulomb_field(const ScalarField& rho, const ConvolutionOptions& options = {});

struct MagnetostaticField {
  VectorField A;  ///< transverse vector potential
  VectorField B;  ///< curl A
};

/// Transverse solution of laplacian(A) = -(4 pi / c) j_t:
///   A = (1/c) [ G*j - grad Lambda ],  Lambda = (1/2) |x| * div j,
/// where G*j is the 1/r convolution. The |x| kernel supplies the longitudinal
/// part of G*j in closed form, so no iteration is needed.
MagnetostaticField magnetostatic_field(const VectorField& j, double c,
                                       const ConvolutionOptions& options = {});

/// A_t = (1/4 pi) curl integral B(x') / |x - x'|. Throws PreconditionError when
/// the normalized divergence of B exceeds 1e-2.
VectorField vector_potential_from_B(const VectorField& B, const ConvolutionOptions& options = {});

/// Dimensionless transversality measure: interior L2 of div V divided by the
/// interior L2 of the full gradient tensor dV_i/dx_j (0 for constant V).
double transversality_defect(const VectorField& v);

}  // namespace amlab
