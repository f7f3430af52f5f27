#pragma once

#include <optional>
#include <string>

#include "amlab/farfield.hpp"
#include "amlab/field.hpp"

namespace amlab {

enum class GaugeTag { coulomb, transformed };

std::string to_string(GaugeTag t);

/// Potentials and fields on one grid. E is carried as its Helmholtz parts;
/// either part may be absent (treated as zero by E()), but operations that need
/// a specific part throw PreconditionError when it is missing.
struct EMConfig {
  ScalarField phi;
  VectorField A;
  std::optional<VectorField> E_long;
  std::optional<VectorField> E_trans;
  VectorField B;
  GaugeTag gauge_tag = GaugeTag::coulomb;
  std::string chi_id;  ///< identifier of the gauge function for transformed configurations
  /// Multipole model of the generating source, used to close the field
  /// integrals over the region outside the box. Absent means fields are
  /// assumed to vanish there.
  std::optional<FarFieldModel> far_field;

  explicit EMConfig(const Grid3& g);
  const Grid3& grid() const { return phi.grid(); }
  VectorField E() const;
  /// Throws ShapeError if the members live on different grids.
  void validate() const;
};

/// (1/4 pi c) integral x cross (E x B), plus the far-field closure when a model is given.
Vec3 field_J_total(const VectorField& E, const VectorField& B, double c,
                   const FarFieldModel* far = nullptr);

/// (1/c) integral rho x cross A_t. Throws PreconditionError if A_t is not transverse
/// (transversality_defect above `transverse_tol`).
Vec3 field_J_bound(const ScalarField& rho, const VectorField& A_t, double c,
                   double transverse_tol = 1e-2);

/// (1/4 pi c) integral x cross (E_long x B), with the same closure as field_J_total.
Vec3 field_J_bound_from_fields(const VectorField& E_long, const VectorField& B, double c,
                               const FarFieldModel* far = nullptr);

struct RadiativeSplit {
  Vec3 spin;     ///< (1/4 pi c) integral E_t x A_t
  Vec3 orbital;  ///< (1/4 pi c) integral sum_i E_t,i (x cross grad) A_t,i
};

/// Throws PreconditionError for non-transverse input.
RadiativeSplit field_J_radiative_split(const VectorField& E_trans, const VectorField& A_t, double c,
                                       double transverse_tol = 1e-2);

struct FieldAngularMomentum {
  Vec3 total;
  Vec3 bound_from_fields;
  std::optional<Vec3> bound_from_rho_At;  ///< absent when A is not transverse
  Vec3 radiative;
  Vec3 rad_spin;
  Vec3 rad_orbital;
  Vec3 rad_boundary_residual;
};

/// All field angular-momentum terms of a configuration. rho is the source
/// charge density used by the rho A_t route.
FieldAngularMomentum field_angular_momentum(const EMConfig& em, const ScalarField& rho, double c);

/// (1/4 pi c) integral E x B, plus the far-field closure when a model is given.
Vec3 field_P_total(const VectorField& E, const VectorField& B, double c,
                   const FarFieldModel* far = nullptr);

/// (1/c) integral rho A_t
Vec3 field_P_bound(const ScalarField& rho, const VectorField& A_t, double c);

}  // namespace amlab
