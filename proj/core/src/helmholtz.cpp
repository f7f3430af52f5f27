#include "amlab/helmholtz.hpp"

#include <cmath>
#include <numbers>

#include "amlab/diff.hpp"
#include "amlab/reduce.hpp"

namespace amlab {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr int kGhost = kStencilHalfWidth;

VectorField convolve_components(const VectorField& v, Kernel kernel, ConvolutionOptions opt) {
  VectorField out(v.grid().extended(opt.margin));
  for (int c = 0; c < 3; ++c) {
    const ScalarField r = free_space_convolution(component_of(v, c), kernel, opt);
    std::copy(r.component(0).begin(), r.component(0).end(), out.component(c).begin());
  }
  return out;
}

double gradient_tensor_norm(const VectorField& v) {
  double s = 0.0;
  ScalarField d(v.grid());
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      derivative(v.component(c), d.component(0), v.grid(), a, Scheme::fd4);
      const double n = interior_l2(d, kGhost);
      s += n * n;
    }
  }
  return std::sqrt(s);
}

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double dot(const ScalarField& a, const ScalarField& b) {
  std::vector<double> prod(a.nodes());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a(0, i) * b(0, i);
  return pairwise_sum(prod);
}

HelmholtzSplit& finish(HelmholtzSplit& out, const VectorField& v) {
  const double scale = gradient_tensor_norm(v);
  out.divergence_defect = ratio_or_zero(interior_l2(divergence(out.transverse), kGhost), scale);
  out.curl_defect = ratio_or_zero(interior_l2(curl(out.longitudinal), kGhost), scale);
  return out;
}

// Potential theta = -(1/4 pi) G*s for a source on grid g, returned on
// g.extended(2 * kGhost) so that grad theta and div grad theta can be formed
// on g.extended(kGhost) and g with every stencil reading true exterior values.
ScalarField projection_potential(const ScalarField& s, const ConvolutionOptions& base) {
  ConvolutionOptions opt = base;
  opt.margin = 2 * kGhost;
  ScalarField theta = free_space_convolution(s, Kernel::inverse_distance, opt);
  theta *= -1.0 / kFourPi;
  return theta;
}

}  // namespace

double transversality_defect(const VectorField& v) {
  return ratio_or_zero(interior_l2(divergence(v), kGhost), gradient_tensor_norm(v));
}

HelmholtzSplit transverse_projection(const VectorField& v, const HelmholtzOptions& options) {
  require_finite(v, "transverse_projection");
  const Grid3& g = v.grid();
  HelmholtzSplit out{VectorField(g), v, 0.0, 0.0, boundary_ratio(v) > 1e-3, 0};

  // V vanishes outside the box, so its divergence is exact on the box plus one
  // stencil reach. That region carries the source s of theta = -(1/4 pi) G*s, and
  // s solves K s = div V with K s = div grad theta restricted to the region. G and
  // the lattice Laplacian are commuting symmetric convolutions, so K is symmetric
  // positive semidefinite and conjugate gradients apply; K is close to the
  // identity on smooth data, which makes the convergence fast.
  const ScalarField target = divergence(embed(v, kGhost));
  const double stop = options.tolerance * gradient_tensor_norm(v);
  if (!(l2_norm(target) > stop)) return finish(out, v);

  ScalarField r = target;
  ScalarField p = target;
  double rr = dot(r, r);
  for (int it = 0; it < options.max_passes; ++it) {
    const ScalarField theta = projection_potential(p, options.convolution);
    const VectorField grad_theta = crop(gradient(theta), kGhost);
    const ScalarField kp = crop(divergence(grad_theta), kGhost);
    const double pkp = dot(p, kp);
    if (!(pkp > 0.0)) break;
    const double alpha = rr / pkp;
    out.longitudinal += alpha * crop(grad_theta, 2 * kGhost);
    r -= alpha * kp;
    out.passes = it + 1;
    const double rr_next = dot(r, r);
    if (std::sqrt(rr_next * target.grid().cell_volume()) <= stop) break;
    p *= rr_next / rr;
    p += r;
    rr = rr_next;
  }
  out.transverse = v - out.longitudinal;
  return finish(out, v);
}

CoulombField coulomb_field(const ScalarField& rho, const ConvolutionOptions& options) {
  require_finite(rho, "coulomb_field");
  ConvolutionOptions opt = options;
  opt.margin = kGhost;
  const ScalarField phi_ext = free_space_convolution(rho, Kernel::inverse_distance, opt);
  VectorField E = crop(gradient(phi_ext), kGhost);
  E *= -1.0;
  return {crop(phi_ext, kGhost), std::move(E)};
}

MagnetostaticField magnetostatic_field(const VectorField& j, double c,
                                       const ConvolutionOptions& options) {
  require_finite(j, "magnetostatic_field");
  if (!(c > 0.0)) throw PreconditionError("c must be positive");
  ConvolutionOptions opt = options;
  opt.margin = 2 * kGhost;

  // Everything lives on a grid with 2*kGhost ghost layers: grad Lambda is exact
  // on the inner kGhost layers, and curl A is exact on the physical grid.
  const VectorField W = convolve_components(j, Kernel::inverse_distance, opt);
  ScalarField lambda = free_space_convolution(divergence(j), Kernel::distance, opt);
  lambda *= 0.5;
  VectorField A_ext = crop(W, kGhost) - crop(gradient(lambda), kGhost);
  A_ext *= 1.0 / c;

  MagnetostaticField out{crop(A_ext, kGhost), crop(curl(A_ext), kGhost)};
  return out;
}

VectorField vector_potential_from_B(const VectorField& B, const ConvolutionOptions& options) {
  require_finite(B, "vector_potential_from_B");
  const double defect = transversality_defect(B);
  if (defect > 1e-2) {
    throw PreconditionError("B is not solenoidal: normalized divergence " + std::to_string(defect) +
                            " exceeds 1e-2");
  }
  ConvolutionOptions opt = options;
  opt.margin = kGhost;
  VectorField A = crop(curl(convolve_components(B, Kernel::inverse_distance, opt)), kGhost);
  A *= 1.0 / kFourPi;
  return A;
}

}  // namespace amlab
