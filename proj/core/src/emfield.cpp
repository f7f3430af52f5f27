#include "amlab/emfield.hpp"

#include <numbers>

#include "amlab/diff.hpp"
#include "amlab/helmholtz.hpp"
#include "amlab/reduce.hpp"

namespace amlab {

namespace {

double four_pi_c(double c) { return 4.0 * std::numbers::pi * c; }

void require_transverse(const VectorField& v, double tol, const char* what) {
  const double d = transversality_defect(v);
  if (d > tol) {
    throw PreconditionError(std::string(what) + " is not transverse: normalized divergence " +
                            std::to_string(d) + " exceeds " + std::to_string(tol));
  }
}

}  // namespace

std::string to_string(GaugeTag t) { return t == GaugeTag::coulomb ? "coulomb" : "transformed"; }

EMConfig::EMConfig(const Grid3& g) : phi(g), A(g), B(g) {}

VectorField EMConfig::E() const {
  VectorField e(grid());
  if (E_long) e += *E_long;
  if (E_trans) e += *E_trans;
  return e;
}

void EMConfig::validate() const {
  const Grid3& g = grid();
  A.require_same_grid(g);
  B.require_same_grid(g);
  if (E_long) E_long->require_same_grid(g);
  if (E_trans) E_trans->require_same_grid(g);
}

Vec3 field_J_total(const VectorField& E, const VectorField& B, double c, const FarFieldModel* far) {
  E.require_same_grid(B);
  const Vec3 box = integrate_vec(E.grid(), [&](std::size_t i, const Vec3& x) {
                     return cross(x, cross(at(E, i), at(B, i)));
                   }) /
                   four_pi_c(c);
  if (far == nullptr) return box;
  return box + field_tail(*far, E.grid()).angular;
}

Vec3 field_J_bound(const ScalarField& rho, const VectorField& A_t, double c, double transverse_tol) {
  rho.require_same_grid(A_t);
  require_transverse(A_t, transverse_tol, "A_t");
  return integrate_vec(rho.grid(),
                       [&](std::size_t i, const Vec3& x) { return rho(0, i) * cross(x, at(A_t, i)); }) /
         c;
}

Vec3 field_J_bound_from_fields(const VectorField& E_long, const VectorField& B, double c,
                               const FarFieldModel* far) {
  return field_J_total(E_long, B, c, far);
}

RadiativeSplit field_J_radiative_split(const VectorField& E_trans, const VectorField& A_t, double c,
                                       double transverse_tol) {
  E_trans.require_same_grid(A_t);
  require_transverse(E_trans, transverse_tol, "E_trans");
  require_transverse(A_t, transverse_tol, "A_t");
  RadiativeSplit out;
  out.spin = integrate_vec(E_trans.grid(), [&](std::size_t i, const Vec3&) {
               return cross(at(E_trans, i), at(A_t, i));
             }) /
             four_pi_c(c);
  const std::array<VectorField, 3> dA{gradient(component_of(A_t, 0)), gradient(component_of(A_t, 1)),
                                      gradient(component_of(A_t, 2))};
  out.orbital = integrate_vec(E_trans.grid(), [&](std::size_t i, const Vec3& x) {
                  Vec3 s;
                  for (int k = 0; k < 3; ++k) s += E_trans(k, i) * cross(x, at(dA[k], i));
                  return s;
                }) /
                four_pi_c(c);
  return out;
}

FieldAngularMomentum field_angular_momentum(const EMConfig& em, const ScalarField& rho, double c) {
  em.validate();
  if (!em.E_long) throw PreconditionError("configuration has no longitudinal electric field");
  const FarFieldModel* far = em.far_field ? &*em.far_field : nullptr;
  FieldAngularMomentum out;
  out.total = field_J_total(em.E(), em.B, c, far);
  out.bound_from_fields = field_J_bound_from_fields(*em.E_long, em.B, c, far);
  if (em.gauge_tag == GaugeTag::coulomb) {
    try {
      out.bound_from_rho_At = field_J_bound(rho, em.A, c);
    } catch (const PreconditionError&) {
      out.bound_from_rho_At.reset();
    }
  }
  out.radiative = out.total - out.bound_from_fields;
  if (em.E_trans && out.bound_from_rho_At) {
    const RadiativeSplit s = field_J_radiative_split(*em.E_trans, em.A, c);
    out.rad_spin = s.spin;
    out.rad_orbital = s.orbital;
  }
  out.rad_boundary_residual = out.radiative - out.rad_spin - out.rad_orbital;
  return out;
}

Vec3 field_P_total(const VectorField& E, const VectorField& B, double c, const FarFieldModel* far) {
  E.require_same_grid(B);
  const Vec3 box =
      integrate_vec(E.grid(), [&](std::size_t i, const Vec3&) { return cross(at(E, i), at(B, i)); }) /
      four_pi_c(c);
  if (far == nullptr) return box;
  return box + field_tail(*far, E.grid()).linear;
}

Vec3 field_P_bound(const ScalarField& rho, const VectorField& A_t, double c) {
  rho.require_same_grid(A_t);
  return integrate_vec(rho.grid(), [&](std::size_t i, const Vec3&) { return rho(0, i) * at(A_t, i); }) /
         c;
}

}  // namespace amlab
