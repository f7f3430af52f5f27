#pragma once

#include <array>
#include <vector>

#include "amlab/field.hpp"

namespace amlab {

/// Cartesian multipole description of the fields of a localized static source,
/// taken about `center`, through octupole order:
///   phi = sum_l (-1)^l / l!  M_{a1..al}    d_{a1..al} (1/r),  M = integral rho r_a1 .. r_al
///   A_i = sum_l (-1)^l / l!  N_{i,a1..al}  d_{a1..al} (1/r) / c,  N = integral j_i r_a1 .. r_al
/// The named members are the familiar low-order summaries of the same moments.
struct FarFieldModel {
  static constexpr int kOrder = 3;

  Vec3 center;
  double charge = 0.0;
  Vec3 dipole;
  Mat3 quadrupole{};     ///< Q_ij = integral rho (3 r_i r_j - r^2 delta_ij)
  Vec3 current;          ///< integral j
  Vec3 magnetic_moment;  ///< (1/2c) integral (x - center) cross j
  double c = 1.0;

  /// M^(l) flattened with a1 slowest, 3^l entries.
  std::array<std::vector<double>, kOrder + 1> charge_moments;
  /// N^(l) flattened as i * 3^l + flat(a1..al).
  std::array<std::vector<double>, kOrder + 1> current_moments;
};

/// Moments of rho and j. The center is the centroid of |rho| (origin if rho = 0).
FarFieldModel far_field_model(const ScalarField& rho, const VectorField& j, double c);

Vec3 far_E(const FarFieldModel& m, const Vec3& x);
Vec3 far_B(const FarFieldModel& m, const Vec3& x);

/// Contribution of the region outside the box, and of the quadrature error near
/// the box faces, to the field integrals
///   angular = (1/4 pi c) integral x cross (E x B),  linear = (1/4 pi c) integral E x B,
/// evaluated for the multipole fields. With a smooth cutoff w(r) that vanishes
/// for r < r_inner and is 1 for r > r_outer, the closure is
///   integral_{R^3} w f_far - sum_box w f_far dV,
/// where the first integral is done per homogeneous term as a radial integral
/// (closed-form tail beyond r_outer) times a Gauss-Legendre x trapezoid angular
/// integral. Terms of degree -3 or slower have vanishing angular integrals and are skipped.
struct FieldTail {
  Vec3 angular;
  Vec3 linear;
  double r_inner = 0.0;
  double r_outer = 0.0;
  bool applied = false;  ///< false when the center lies outside the box
};

FieldTail field_tail(const FarFieldModel& model, const Grid3& grid);

}  // namespace amlab
