#pragma once

#include <string>
#include <vector>

#include "amlab/dirac.hpp"

namespace amlab {

/// Named test states. Localized states use the envelope g = exp(-|x - center|^2 / (2 width^2)).
///
///   gaussian-spin-up / -spin-down / -spin-x   upper components g * chi_s
///   torus-m1-spin-up, torus-m-1-spin-up        upper (x' +- i y') g, spin up
///   torus-superposition                        (m = +1 + m = -1) / sqrt 2, spin up
///   plane-wave                                 u(p, helicity) exp(i p.x / hbar), p snapped to the box lattice
///   boosted-gaussian                           g u(p, +) exp(i p.x / hbar)
///
/// For the localized families the lower components are the kinetic-balance partner
/// -i balance (hbar / 2mc) (sigma . grad) of the upper ones, evaluated analytically.
/// balance = 1 gives a state whose current carries the spin magnetization;
/// balance = 0 gives the pure upper-component profile. Every state is a J_z
/// eigenstate where its label says so, and is normalized on the grid.
struct ScenarioSpec {
  std::string name = "gaussian-spin-up";
  double width = 1.0;
  double balance = 1.0;
  Vec3 center{};
  Vec3 momentum{};
  int helicity = 1;
};

std::vector<std::string> scenario_catalog();

/// Throws ScenarioError for unknown names (the message lists the catalog) or bad parameters.
SpinorField scenario(const ScenarioSpec& spec, const Grid3& grid, const PhysicalParams& params);

/// Nearest momentum whose plane wave is periodic on the grid: p_a = 2 pi hbar k_a / (n_a h_a).
Vec3 lattice_momentum(const Vec3& p, const Grid3& grid, const PhysicalParams& params);

/// Unit-norm positive-energy free spinor u(p) with helicity +-1 along p
/// (along z when p = 0).
Spinor free_spinor(const Vec3& p, int helicity, const PhysicalParams& params);

/// E = sqrt(m^2 c^4 + p^2 c^2)
double free_energy(const Vec3& p, const PhysicalParams& params);

}  // namespace amlab
