#include "amlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace amlab {

namespace {

using Two = std::array<cplx, 2>;

// Scalar envelope f and its gradient at a point.
struct Profile {
  cplx f;
  std::array<cplx, 3> df;
};

using ProfileFn = std::function<Profile(const Vec3&)>;

ProfileFn gaussian(const Vec3& c, double s) {
  return [c, s](const Vec3& x) {
    const Vec3 r = x - c;
    const double g = std::exp(-dot(r, r) / (2.0 * s * s));
    const double k = -g / (s * s);
    return Profile{g, {k * r.x, k * r.y, k * r.z}};
  };
}

// (x' + i m y') g for m = +-1.
ProfileFn torus(const Vec3& c, double s, int m) {
  return [c, s, m](const Vec3& x) {
    const Vec3 r = x - c;
    const double g = std::exp(-dot(r, r) / (2.0 * s * s));
    const cplx w(r.x, m * r.y);
    const cplx f = w * g;
    const double inv = -1.0 / (s * s);
    return Profile{f, {g + inv * r.x * f, cplx(0.0, m) * g + inv * r.y * f, inv * r.z * f}};
  };
}

ProfileFn superpose(ProfileFn a, ProfileFn b) {
  return [a, b](const Vec3& x) {
    const Profile pa = a(x);
    const Profile pb = b(x);
    const double k = 1.0 / std::numbers::sqrt2;
    return Profile{k * (pa.f + pb.f),
                   {k * (pa.df[0] + pb.df[0]), k * (pa.df[1] + pb.df[1]), k * (pa.df[2] + pb.df[2])}};
  };
}

// sigma_k acting on a two-spinor.
Two sigma(int k, const Two& s) {
  switch (k) {
    case 0:
      return {s[1], s[0]};
    case 1:
      return {cplx(0.0, -1.0) * s[1], cplx(0.0, 1.0) * s[0]};
    default:
      return {s[0], -s[1]};
  }
}

SpinorField balanced(const Grid3& grid, const ProfileFn& prof, const Two& chi, double balance,
                     const PhysicalParams& params) {
  if (balance != 0.0 && !(params.m > 0.0)) {
    throw ScenarioError("kinetic balance needs a positive mass; use balance 0 for m = 0");
  }
  const cplx lower_pref =
      balance == 0.0 ? cplx{} : cplx(0.0, -balance * params.hbar / (2.0 * params.m * params.c));
  SpinorField psi(grid);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Profile p = prof(grid.node(idx));
    Two low{};
    for (int k = 0; k < 3; ++k) {
      const Two sk = sigma(k, chi);
      low[0] += p.df[k] * sk[0];
      low[1] += p.df[k] * sk[1];
    }
    psi(0, idx) = p.f * chi[0];
    psi(1, idx) = p.f * chi[1];
    psi(2, idx) = lower_pref * low[0];
    psi(3, idx) = lower_pref * low[1];
  }
  return psi;
}

SpinorField modulated(const Grid3& grid, const Spinor& u, const Vec3& p, double hbar,
                      const std::function<double(const Vec3&)>& envelope) {
  SpinorField psi(grid);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Vec3 x = grid.node(idx);
    const cplx w = envelope(x) * std::polar(1.0, dot(p, x) / hbar);
    for (int c = 0; c < 4; ++c) psi(c, idx) = w * u[c];
  }
  return psi;
}

void normalize(SpinorField& psi) {
  const double n2 = norm2(psi);
  if (!(n2 > 0.0)) throw ScenarioError("scenario produced a zero field on this grid");
  psi *= 1.0 / std::sqrt(n2);
}

std::string catalog_text() {
  std::string out;
  for (const auto& n : scenario_catalog()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

std::vector<std::string> scenario_catalog() {
  return {"gaussian-spin-up",  "gaussian-spin-down", "gaussian-spin-x",
          "torus-m1-spin-up",  "torus-m-1-spin-up",  "torus-superposition",
          "plane-wave",        "boosted-gaussian"};
}

double free_energy(const Vec3& p, const PhysicalParams& params) {
  const double mc2 = params.m * params.c * params.c;
  return std::sqrt(mc2 * mc2 + dot(p, p) * params.c * params.c);
}

Spinor free_spinor(const Vec3& p, int helicity, const PhysicalParams& params) {
  if (helicity != 1 && helicity != -1) throw ScenarioError("helicity must be +1 or -1");
  const double pn = norm(p);
  double theta = 0.0;
  double phi = 0.0;
  if (pn > 0.0) {
    theta = std::acos(std::clamp(p.z / pn, -1.0, 1.0));
    phi = std::atan2(p.y, p.x);
  }
  Two chi;
  if (helicity == 1) {
    chi = {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
  } else {
    chi = {-std::polar(std::sin(0.5 * theta), -phi), std::cos(0.5 * theta)};
  }
  const double E = free_energy(p, params);
  const double mc2 = params.m * params.c * params.c;
  const double denom = E + mc2;
  if (!(denom > 0.0)) throw ScenarioError("free spinor undefined for m = 0 and p = 0");
  const double a = std::sqrt(denom / (2.0 * E));
  Two low{};
  for (int k = 0; k < 3; ++k) {
    const Two sk = sigma(k, chi);
    low[0] += p[k] * sk[0];
    low[1] += p[k] * sk[1];
  }
  const double b = params.c / denom;
  return {a * chi[0], a * chi[1], a * b * low[0], a * b * low[1]};
}

Vec3 lattice_momentum(const Vec3& p, const Grid3& grid, const PhysicalParams& params) {
  Vec3 out;
  for (int a = 0; a < 3; ++a) {
    const double unit = 2.0 * std::numbers::pi * params.hbar / (grid.n()[a] * grid.h()[a]);
    out[a] = std::round(p[a] / unit) * unit;
  }
  return out;
}

SpinorField scenario(const ScenarioSpec& spec, const Grid3& grid, const PhysicalParams& params) {
  params.validate();
  if (!(spec.width > 0.0) || !std::isfinite(spec.width)) {
    throw ScenarioError("scenario width must be positive");
  }
  if (!is_finite(spec.center) || !is_finite(spec.momentum) || !std::isfinite(spec.balance)) {
    throw ScenarioError("scenario parameters must be finite");
  }
  const Two up{1.0, 0.0};
  const Two down{0.0, 1.0};
  const Two x_up{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
  const auto& c = spec.center;
  const double s = spec.width;

  SpinorField psi(grid);
  if (spec.name == "gaussian-spin-up") {
    psi = balanced(grid, gaussian(c, s), up, spec.balance, params);
  } else if (spec.name == "gaussian-spin-down") {
    psi = balanced(grid, gaussian(c, s), down, spec.balance, params);
  } else if (spec.name == "gaussian-spin-x") {
    psi = balanced(grid, gaussian(c, s), x_up, spec.balance, params);
  } else if (spec.name == "torus-m1-spin-up") {
    psi = balanced(grid, torus(c, s, 1), up, spec.balance, params);
  } else if (spec.name == "torus-m-1-spin-up") {
    psi = balanced(grid, torus(c, s, -1), up, spec.balance, params);
  } else if (spec.name == "torus-superposition") {
    psi = balanced(grid, superpose(torus(c, s, 1), torus(c, s, -1)), up, spec.balance, params);
  } else if (spec.name == "plane-wave") {
    const Vec3 p = lattice_momentum(spec.momentum, grid, params);
    psi = modulated(grid, free_spinor(p, spec.helicity, params), p, params.hbar,
                    [](const Vec3&) { return 1.0; });
  } else if (spec.name == "boosted-gaussian") {
    const Vec3 p = spec.momentum;
    psi = modulated(grid, free_spinor(p, spec.helicity, params), p, params.hbar,
                    [c, s](const Vec3& x) {
                      const Vec3 r = x - c;
                      return std::exp(-dot(r, r) / (2.0 * s * s));
                    });
  } else {
    throw ScenarioError("unknown scenario '" + spec.name + "'; catalog: " + catalog_text());
  }
  normalize(psi);
  return psi;
}

}  // namespace amlab
