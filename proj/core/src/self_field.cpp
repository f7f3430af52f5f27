#include "amlab/self_field.hpp"

#include "amlab/dirac.hpp"
#include "amlab/helmholtz.hpp"

namespace amlab {

EMConfig self_fields(const SpinorField& psi, const PhysicalParams& params,
                     const SelfFieldOptions& options) {
  params.validate();
  const Grid3& g = psi.grid();
  EMConfig em(g);
  em.gauge_tag = GaugeTag::coulomb;
  if (params.e == 0.0) {
    require_finite(psi, "self_fields");
    em.E_long = VectorField(g);
    return em;
  }
  const SourceDensities src = densities(psi, params);
  CoulombField cf = coulomb_field(src.rho, options.convolution);
  MagnetostaticField mf = magnetostatic_field(src.j, params.c, options.convolution);
  em.phi = std::move(cf.phi);
  em.E_long = std::move(cf.E);
  em.A = std::move(mf.A);
  em.B = std::move(mf.B);
  if (options.far_field_closure) em.far_field = far_field_model(src.rho, src.j, params.c);
  return em;
}

EMConfig mix_fields(const EMConfig& a, const EMConfig& b, double a_weight) {
  a.validate();
  b.validate();
  a.phi.require_same_grid(b.phi);
  const double w = a_weight;
  const double v = 1.0 - a_weight;
  EMConfig out(a.grid());
  out.phi = w * a.phi + v * b.phi;
  out.A = w * a.A + v * b.A;
  out.B = w * a.B + v * b.B;
  VectorField el(a.grid());
  if (a.E_long) el += w * *a.E_long;
  if (b.E_long) el += v * *b.E_long;
  out.E_long = std::move(el);
  if (a.E_trans || b.E_trans) {
    VectorField et(a.grid());
    if (a.E_trans) et += w * *a.E_trans;
    if (b.E_trans) et += v * *b.E_trans;
    out.E_trans = std::move(et);
  }
  out.gauge_tag = a.gauge_tag;
  return out;
}

}  // namespace amlab
