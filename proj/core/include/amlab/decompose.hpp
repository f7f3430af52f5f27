#pragma once

#include <optional>
#include <string>
#include <variant>

#include "amlab/dirac.hpp"
#include "amlab/emfield.hpp"
#include "amlab/self_field.hpp"

namespace amlab {

/// Tolerances in units of hbar (angular momentum) or of |p| scale (momentum).
struct Tolerances {
  double cancel = 0.01;
  double eq7 = 0.01;
};

struct SelfField {};
using FieldSource = std::variant<SelfField, EMConfig>;

struct DecomposeOptions {
  Scheme scheme = Scheme::fd4;
  Tolerances tolerances{};
  SelfFieldOptions self{};
};

/// Angular-momentum decomposition; every vector is in units of hbar.
///   J_total_eq4 = L_orbital + L_gauge + S_spin + J_field_total
///   J_eq7       = L_orbital + S_spin
///   cancellation_residual = L_gauge + J_field_bound_from_fields
///   eq7_residual          = J_total_eq4 - J_eq7
struct DecompositionReport {
  Vec3 L_orbital;
  Vec3 L_orbital_imaginary;
  bool orbital_warning = false;
  Vec3 L_gauge;
  Vec3 S_spin;
  Vec3 J_field_total;
  Vec3 J_field_bound_from_fields;
  std::optional<Vec3> J_field_bound_from_rho_At;
  Vec3 J_field_radiative;
  Vec3 rad_spin;
  Vec3 rad_orbital;
  Vec3 rad_boundary_residual;
  Vec3 J_total_eq4;
  Vec3 J_eq7;
  Vec3 cancellation_residual;
  Vec3 eq7_residual;

  // Diagnostics and provenance.
  std::string field_source;  ///< "self-field" or "explicit"
  GaugeTag gauge_tag = GaugeTag::coulomb;
  std::string chi_id;
  bool far_field_closure = false;
  Vec3 far_field_correction;  ///< closure added to J_field_total (hbar units)
  double psi_boundary_ratio = 0.0;
  double A_transversality_defect = 0.0;
  double norm = 0.0;  ///< psi^dagger psi integrated
  bool static_reduction = true;
  PhysicalParams params;
  Grid3 grid = Grid3::cube(Grid3::kMinPoints, 1.0);
  Scheme scheme = Scheme::fd4;
  Tolerances tolerances;
};

/// Throws PreconditionError for an explicit configuration without E_long.
DecompositionReport decompose(const SpinorField& psi, const PhysicalParams& params,
                              const FieldSource& source, const DecomposeOptions& options = {});

struct CancellationVerdict {
  bool pass = false;
  double cancellation = 0.0;  ///< |cancellation_residual|
  double eq7 = 0.0;           ///< |eq7_residual|
};

/// Uses the tolerances recorded in the report. Throws PreconditionError unless
/// the report was produced in Coulomb gauge.
CancellationVerdict verify_cancellation(const DecompositionReport& report);
CancellationVerdict verify_cancellation(const DecompositionReport& report, const Tolerances& tol);

/// Linear-momentum analogue, in units of the momentum unit hbar / length.
///   P_total = P_kinetic + P_gauge + P_field_total
///   cancellation_residual = P_gauge + P_field_bound_from_fields
struct MomentumReport {
  Vec3 P_kinetic;  ///< -i hbar integral psi^dagger grad psi (real part)
  Vec3 P_kinetic_imaginary;
  Vec3 P_gauge;    ///< -(1/c) integral rho A
  Vec3 P_field_total;
  Vec3 P_field_bound_from_fields;
  std::optional<Vec3> P_field_bound_from_rho_At;
  Vec3 P_total;
  Vec3 cancellation_residual;
  std::string field_source;
  GaugeTag gauge_tag = GaugeTag::coulomb;
  PhysicalParams params;
  Grid3 grid = Grid3::cube(Grid3::kMinPoints, 1.0);
  Scheme scheme = Scheme::fd4;
};

MomentumReport momentum_decompose(const SpinorField& psi, const PhysicalParams& params,
                                  const FieldSource& source, const DecomposeOptions& options = {});

/// nu = 0 row of the symmetric energy-momentum tensor in the static reduction
/// (i hbar d/dt psi replaced by H psi):
///   T00 = Re psi^dagger H psi + (E^2 + B^2) / 8 pi
///   T0i = (c/2) Re[ psi^dagger pi_i psi + psi^dagger alpha_i (alpha.pi + beta m c) psi ]
///         + (E x B)_i / 4 pi,   pi = -i hbar grad - (e/c) A
struct StressEnergySlice {
  ScalarField T00;
  VectorField T0i;
};

StressEnergySlice stress_energy(const SpinorField& psi, const EMConfig& em,
                                const PhysicalParams& params, Scheme scheme = Scheme::fd4);

}  // namespace amlab
