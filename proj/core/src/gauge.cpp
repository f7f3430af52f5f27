#include "amlab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "amlab/reduce.hpp"

namespace amlab {

namespace {

constexpr int kBumpsPerTrial = 3;
constexpr int kDrawsPerBump = 5;

double uniform01(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

Vec3 grid_center(const Grid3& g) { return 0.5 * (g.lower_corner() + g.upper_corner()); }

double min_half_extent(const Grid3& g) {
  const Vec3 d = g.upper_corner() - g.lower_corner();
  return 0.5 * std::min({d.x, d.y, d.z});
}

}  // namespace

GaugeFunction gauge_from_bumps(const Grid3& grid, const std::vector<GaussianBump>& bumps,
                               const std::string& id) {
  GaugeFunction g{ScalarField(grid), VectorField(grid), id};
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Vec3 x = grid.node(idx);
    double chi = 0.0;
    Vec3 grad;
    for (const auto& b : bumps) {
      const Vec3 r = x - b.center;
      const double v = b.amplitude * std::exp(-dot(r, r) / (2.0 * b.width * b.width));
      chi += v;
      grad -= (v / (b.width * b.width)) * r;
    }
    g.chi(0, idx) = chi;
    set(g.grad_chi, idx, grad);
  }
  return g;
}

std::vector<GaussianBump> random_bumps(const Grid3& grid, std::uint64_t seed, int trial) {
  std::mt19937_64 eng(seed);
  eng.discard(static_cast<unsigned long long>(trial) * kBumpsPerTrial * kDrawsPerBump);
  const double L = min_half_extent(grid);
  const Vec3 c0 = grid_center(grid);
  std::vector<GaussianBump> out;
  for (int b = 0; b < kBumpsPerTrial; ++b) {
    GaussianBump bump;
    for (int a = 0; a < 3; ++a) bump.center[a] = c0[a] + (2.0 * uniform01(eng) - 1.0) * L / 8.0;
    bump.width = (0.0875 + 0.0375 * uniform01(eng)) * L;
    bump.amplitude = uniform01(eng) - 0.5;
    out.push_back(bump);
  }
  return out;
}

GaugeFunction random_gauge(const Grid3& grid, std::uint64_t seed, int trial) {
  std::ostringstream id;
  id << "seed" << seed << "-trial" << trial;
  return gauge_from_bumps(grid, random_bumps(grid, seed, trial), id.str());
}

double gauge_consistency(const GaugeFunction& g) {
  VectorField diff = gradient(g.chi) - g.grad_chi;
  const double scale = interior_max_abs(g.grad_chi, 0);
  return scale > 0.0 ? interior_max_abs(diff, kStencilHalfWidth) / scale : 0.0;
}

GaugedState apply_gauge(const SpinorField& psi, const EMConfig& em, const GaugeFunction& g,
                        const PhysicalParams& params) {
  em.validate();
  psi.require_same_grid(em.grid());
  g.chi.require_same_grid(em.grid());
  const double ratio = boundary_ratio(g.chi);
  if (ratio >= 1e-10) {
    throw PreconditionError("gauge function is not localized: boundary/peak ratio " +
                            std::to_string(ratio) + " is not below 1e-10");
  }
  GaugedState out{psi, em};
  out.em.A += g.grad_chi;
  out.em.gauge_tag = GaugeTag::transformed;
  out.em.chi_id = g.id;
  if (params.e != 0.0) {
    const double k = params.e / (params.hbar * params.c);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(psi.nodes());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto idx = static_cast<std::size_t>(s);
      const cplx phase = std::polar(1.0, k * g.chi(0, idx));
      for (int c = 0; c < 4; ++c) out.psi(c, idx) *= phase;
    }
  }
  return out;
}

double covariance_defect(const SpinorField& psi, const VectorField& A, const GaugeFunction& g,
                         const PhysicalParams& params, Scheme scheme) {
  EMConfig em(psi.grid());
  em.A = A;
  const GaugedState t = apply_gauge(psi, em, g, params);
  const cplx ik(0.0, params.e / (params.hbar * params.c));
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(psi.nodes());
  double num = 0.0;
  double den = 0.0;
  for (int a = 0; a < 3; ++a) {
    const SpinorField d = derivative(psi, a, scheme);
    const SpinorField dt = derivative(t.psi, a, scheme);
    SpinorField diff(psi.grid());
    SpinorField ref(psi.grid());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto idx = static_cast<std::size_t>(s);
      const cplx phase = std::polar(1.0, ik.imag() * g.chi(0, idx));
      for (int c = 0; c < 4; ++c) {
        const cplx D = d(c, idx) - ik * A(a, idx) * psi(c, idx);
        const cplx Dt = dt(c, idx) - ik * t.em.A(a, idx) * t.psi(c, idx);
        ref(c, idx) = D;
        diff(c, idx) = Dt - phase * D;
      }
    }
    num += norm2(diff);
    den += norm2(ref);
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

double density_deviation(const SpinorField& a, const SpinorField& b, const PhysicalParams& params) {
  PhysicalParams unit = params;
  unit.e = 1.0;
  const SourceDensities da = densities(a, unit);
  const SourceDensities db = densities(b, unit);
  const double scale = interior_max_abs(da.rho, 0);
  if (!(scale > 0.0)) return 0.0;
  const double d = std::max(interior_max_abs(ScalarField(da.rho - db.rho), 0),
                            interior_max_abs(VectorField(da.j - db.j), 0));
  return d / scale;
}

GaugeScanReport gauge_scan(const SpinorField& psi, const EMConfig& em, const PhysicalParams& params,
                           int n_trials, std::uint64_t seed, Scheme scheme) {
  GaugeScanReport rep;
  rep.n_trials = std::max(n_trials, 0);
  rep.seed = seed;
  if (rep.n_trials == 0) return rep;

  const FarFieldModel* far = em.far_field ? &*em.far_field : nullptr;
  const Vec3 field = field_J_total(em.E(), em.B, params.c, far);
  const Vec3 orb0 = orbital_term(psi, params, scheme).value;
  const Vec3 gau0 = gauge_term(psi, em.A, params);
  const Vec3 spin0 = spin_term(psi, params);
  const Vec3 J0 = orb0 + gau0 + spin0 + field;

  for (int t = 0; t < rep.n_trials; ++t) {
    const GaugeFunction g = random_gauge(psi.grid(), seed, t);
    const GaugedState s = apply_gauge(psi, em, g, params);
    GaugeTrial tr;
    tr.trial = t;
    tr.chi_id = g.id;
    const Vec3 orb = orbital_term(s.psi, params, scheme).value;
    const Vec3 gau = gauge_term(s.psi, s.em.A, params);
    const Vec3 spin = spin_term(s.psi, params);
    // E and B are untouched by a static gauge transformation.
    const Vec3 fld = field;
    tr.J_before = J0;
    tr.J_after = orb + gau + spin + fld;
    tr.deviation = norm(tr.J_after - tr.J_before);
    tr.shift_orbital = orb - orb0;
    tr.shift_gauge = gau - gau0;
    tr.shift_spin = spin - spin0;
    tr.shift_field = fld - field;
    tr.pair_deviation = norm(tr.shift_orbital + tr.shift_gauge);
    tr.density_deviation = density_deviation(psi, s.psi, params);
    rep.max_deviation = std::max(rep.max_deviation, tr.deviation);
    rep.max_pair_deviation = std::max(rep.max_pair_deviation, tr.pair_deviation);
    rep.max_density_deviation = std::max(rep.max_density_deviation, tr.density_deviation);
    rep.trials.push_back(std::move(tr));
  }
  return rep;
}

}  // namespace amlab
