#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amlab/dirac.hpp"
#include "amlab/emfield.hpp"

namespace amlab {

struct GaussianBump {
  Vec3 center;
  double width = 1.0;
  double amplitude = 0.0;
};

/// Static gauge function with an analytic gradient.
struct GaugeFunction {
  ScalarField chi;
  VectorField grad_chi;
  std::string id;
};

/// chi = sum amplitude exp(-|x - center|^2 / (2 width^2)), gradient in closed form.
GaugeFunction gauge_from_bumps(const Grid3& grid, const std::vector<GaussianBump>& bumps,
                               const std::string& id);

/// Bumps of trial `trial` of the seeded generator. Each trial draws three bumps
/// from std::mt19937_64(seed), after skipping the draws of earlier trials:
/// centers uniform in the central cube of half-width L/8 around the grid center,
/// widths uniform in [0.0875 L, 0.125 L], amplitudes uniform in [-0.5, 0.5],
/// where L is the smallest box half-extent. Uniform variates are (u64 >> 11) * 2^-53.
std::vector<GaussianBump> random_bumps(const Grid3& grid, std::uint64_t seed, int trial);
GaugeFunction random_gauge(const Grid3& grid, std::uint64_t seed, int trial);

/// Interior max-norm of gradient(chi) - grad_chi, relative to max |grad_chi|.
double gauge_consistency(const GaugeFunction& g);

struct GaugedState {
  SpinorField psi;
  EMConfig em;
};

/// A' = A + grad chi, psi' = exp(+i e chi / (hbar c)) psi; phi, E and B are
/// unchanged for a static chi. The sign makes D = grad - i (e / hbar c) A
/// covariant: D' psi' = exp(i e chi / hbar c) D psi. Throws PreconditionError if
/// chi does not decay to 1e-10 of its peak on the boundary.
GaugedState apply_gauge(const SpinorField& psi, const EMConfig& em, const GaugeFunction& g,
                        const PhysicalParams& params);

/// || D' psi' - phase D psi || / || D psi ||, summed over the three directions.
double covariance_defect(const SpinorField& psi, const VectorField& A, const GaugeFunction& g,
                         const PhysicalParams& params, Scheme scheme = Scheme::fd4);

struct GaugeTrial {
  int trial = 0;
  std::string chi_id;
  Vec3 J_before;
  Vec3 J_after;
  double deviation = 0.0;       ///< |J_after - J_before|
  Vec3 shift_orbital;
  Vec3 shift_gauge;
  Vec3 shift_spin;
  Vec3 shift_field;
  double pair_deviation = 0.0;  ///< |shift of orbital + gauge|
  double density_deviation = 0.0;
};

struct GaugeScanReport {
  int n_trials = 0;
  std::uint64_t seed = 0;
  std::vector<GaugeTrial> trials;
  double max_deviation = 0.0;
  double max_pair_deviation = 0.0;
  double max_density_deviation = 0.0;
};

/// Total angular momentum before and after each seeded random gauge transformation.
GaugeScanReport gauge_scan(const SpinorField& psi, const EMConfig& em, const PhysicalParams& params,
                           int n_trials, std::uint64_t seed, Scheme scheme = Scheme::fd4);

/// Largest pointwise change of rho and j between two states, relative to max |rho|.
double density_deviation(const SpinorField& a, const SpinorField& b, const PhysicalParams& params);

}  // namespace amlab
