#include <doctest.h>

#include <cmath>

#include "amlab/diff.hpp"
#include "amlab/dirac.hpp"
#include "amlab/gauge.hpp"
#include "amlab/scenario.hpp"
#include "amlab/self_field.hpp"
#include "support.hpp"

using namespace amlab;
using namespace amlab::test;

namespace {

struct State {
  SpinorField psi;
  EMConfig em;
};

State self_state(const Grid3& g, const std::string& name, const PhysicalParams& p) {
  ScenarioSpec spec;
  spec.name = name;
  SpinorField psi = scenario(spec, g, p);
  EMConfig em = self_fields(psi, p);
  return {std::move(psi), std::move(em)};
}

// Localized to below 1e-10 of the peak on a box of half-width 6.
const std::vector<GaussianBump> kBumps{{{0.3, -0.2, 0.1}, 0.75, 0.4}, {{-0.5, 0.4, 0.0}, 0.7, -0.3}};

}  // namespace

TEST_SUITE("gauge") {
  TEST_CASE("zero gauge function is the identity") {
    const Grid3 g = Grid3::cube(24, 6.0);
    const PhysicalParams p;
    const State s = self_state(g, "gaussian-spin-up", p);
    const GaugedState out = apply_gauge(s.psi, s.em, gauge_from_bumps(g, {}, "zero"), p);
    CHECK(bitwise_equal(out.psi, s.psi));
    CHECK(bitwise_equal(out.em.A, s.em.A));
    CHECK(bitwise_equal(out.em.phi, s.em.phi));
    CHECK(bitwise_equal(out.em.B, s.em.B));
  }

  TEST_CASE("zero charge leaves psi alone and shifts A by the gradient") {
    const Grid3 g = Grid3::cube(24, 6.0);
    PhysicalParams p;
    p.e = 0.0;
    const State s = self_state(g, "torus-m1-spin-up", p);
    const GaugeFunction chi = gauge_from_bumps(g, kBumps, "pair");
    const GaugedState out = apply_gauge(s.psi, s.em, chi, p);
    CHECK(bitwise_equal(out.psi, s.psi));
    CHECK(bitwise_equal(out.em.A, s.em.A + chi.grad_chi));
    CHECK(out.em.gauge_tag == GaugeTag::transformed);
    CHECK(out.em.chi_id == "pair");
  }

  TEST_CASE("analytic gradient is consistent with the differenced one at fourth order") {
    double prev = 0.0;
    for (const int n : {32, 64}) {
      const GaugeFunction chi = gauge_from_bumps(Grid3::cube(n, 6.0), kBumps, "pair");
      const double d = gauge_consistency(chi);
      if (n == 64) {
        CHECK(d <= 1e-2);
        CHECK(prev / d >= 12.0);
      }
      prev = d;
    }
  }

  TEST_CASE("covariant derivative transforms with the phase at fourth order") {
    PhysicalParams p;
    p.e = 1.0;
    double prev = 0.0;
    for (const int n : {32, 64}) {
      const Grid3 g = Grid3::cube(n, 6.0);
      const State s = self_state(g, "gaussian-spin-up", p);
      const double d = covariance_defect(s.psi, s.em.A, gauge_from_bumps(g, kBumps, "pair"), p);
      MESSAGE("n=" << n << " covariance defect " << d);
      if (n == 64) {
        CHECK(d <= 1e-3);
        CHECK(prev / d >= 12.0);
      }
      prev = d;
    }
  }

  TEST_CASE("covariance fixes the phase sign") {
    const Grid3 g = Grid3::cube(32, 6.0);
    for (const double e : {1.0, -1.0}) {
      PhysicalParams p;
      p.e = e;
      const State s = self_state(g, "gaussian-spin-up", p);
      const GaugeFunction chi = gauge_from_bumps(g, kBumps, "pair");
      const double right = covariance_defect(s.psi, s.em.A, chi, p);

      // The opposite convention psi' = exp(-i e chi / hbar c) psi with the same A'.
      const double k = e / (p.hbar * p.c);
      SpinorField wrong = s.psi;
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (int c = 0; c < 4; ++c) wrong(c, i) *= std::polar(1.0, -k * chi.chi(0, i));
      }
      const VectorField A2 = s.em.A + chi.grad_chi;
      double num = 0.0;
      double den = 0.0;
      for (int a = 0; a < 3; ++a) {
        const SpinorField d = derivative(s.psi, a);
        const SpinorField dw = derivative(wrong, a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const cplx phase = std::polar(1.0, -k * chi.chi(0, i));
          for (int c = 0; c < 4; ++c) {
            const cplx D = d(c, i) - cplx(0.0, k) * s.em.A(a, i) * s.psi(c, i);
            const cplx Dw = dw(c, i) - cplx(0.0, k) * A2(a, i) * wrong(c, i);
            num += std::norm(Dw - phase * D);
            den += std::norm(D);
          }
        }
      }
      const double opposite = std::sqrt(num / den);
      MESSAGE("e=" << e << " defect " << right << " opposite convention " << opposite);
      CHECK(opposite >= 10.0 * right);
    }
  }

  TEST_CASE("densities are unchanged pointwise") {
    const Grid3 g = Grid3::cube(32, 6.0);
    const PhysicalParams p;
    for (const char* name : {"gaussian-spin-x", "torus-superposition", "boosted-gaussian"}) {
      const State s = self_state(g, name, p);
      const GaugedState out = apply_gauge(s.psi, s.em, gauge_from_bumps(g, kBumps, "pair"), p);
      CHECK(density_deviation(s.psi, out.psi, p) <= 1e-12);
    }
  }

  TEST_CASE("successive transformations compose") {
    const Grid3 g = Grid3::cube(32, 6.0);
    const PhysicalParams p;
    const State s = self_state(g, "torus-m1-spin-up", p);
    const GaugeFunction c1 = gauge_from_bumps(g, {kBumps[0]}, "one");
    const GaugeFunction c2 = gauge_from_bumps(g, {kBumps[1]}, "two");
    const GaugeFunction both = gauge_from_bumps(g, kBumps, "both");
    const GaugedState step = apply_gauge(s.psi, s.em, c1, p);
    const GaugedState twice = apply_gauge(step.psi, step.em, c2, p);
    const GaugedState once = apply_gauge(s.psi, s.em, both, p);
    CHECK(max_abs_diff(twice.psi, once.psi) <= 1e-12);
    CHECK(max_abs_diff(twice.em.A, once.em.A) <= 1e-12);
  }

  TEST_CASE("orbital plus gauge term is gauge invariant") {
    const PhysicalParams p;
    const GaussianBump bump{{0.2, 0.1, -0.1}, 0.8, 0.5};
    double prev = 0.0;
    for (const int n : {32, 64}) {
      const Grid3 g = Grid3::cube(n, 6.0);
      const State s = self_state(g, "torus-m1-spin-up", p);
      const GaugedState out = apply_gauge(s.psi, s.em, gauge_from_bumps(g, {bump}, "broad"), p);
      const Vec3 shift = gauge_term(out.psi, out.em.A, p) - gauge_term(s.psi, s.em.A, p);
      CHECK(norm(shift) >= 1e-3);
      for (const Scheme scheme : {Scheme::fd4, Scheme::spectral}) {
        const Vec3 before = orbital_term(s.psi, p, scheme).value + gauge_term(s.psi, s.em.A, p);
        const Vec3 after = orbital_term(out.psi, p, scheme).value + gauge_term(out.psi, out.em.A, p);
        const double dev = norm(after - before);
        MESSAGE("n=" << n << " " << to_string(scheme) << " pair deviation " << dev);
        if (scheme == Scheme::spectral) {
          CHECK(dev <= 1e-6 * p.hbar);
        } else {
          if (n == 64) CHECK(prev / dev >= 12.0);
          prev = dev;
        }
      }
    }
  }

  TEST_CASE("non-localized gauge functions are rejected") {
    const Grid3 g = Grid3::cube(24, 6.0);
    const PhysicalParams p;
    const State s = self_state(g, "gaussian-spin-up", p);
    const GaugeFunction wide = gauge_from_bumps(g, {{{}, 4.0, 1.0}}, "wide");
    CHECK_THROWS_AS(apply_gauge(s.psi, s.em, wide, p), PreconditionError);
  }

  TEST_CASE("random bumps follow the documented ranges and are reproducible") {
    const Grid3 g = Grid3::cube(32, 8.0);
    for (int t = 0; t < 5; ++t) {
      const auto bumps = random_bumps(g, 42, t);
      REQUIRE(bumps.size() == 3);
      for (const GaussianBump& b : bumps) {
        CHECK(std::abs(b.center.x) <= 1.0);
        CHECK(std::abs(b.center.y) <= 1.0);
        CHECK(std::abs(b.center.z) <= 1.0);
        CHECK(b.width >= 0.7);
        CHECK(b.width <= 1.0);
        CHECK(std::abs(b.amplitude) <= 0.5);
      }
      const auto again = random_bumps(g, 42, t);
      for (std::size_t i = 0; i < 3; ++i) CHECK(bitwise_equal(again[i].center, bumps[i].center));
    }
    CHECK_FALSE(bitwise_equal(random_bumps(g, 42, 0)[0].center, random_bumps(g, 42, 1)[0].center));
    CHECK_FALSE(bitwise_equal(random_bumps(g, 42, 0)[0].center, random_bumps(g, 43, 0)[0].center));
  }

  TEST_CASE("scan with no trials is empty") {
    const Grid3 g = Grid3::cube(16, 6.0);
    const PhysicalParams p;
    const State s = self_state(g, "gaussian-spin-up", p);
    const GaugeScanReport r = gauge_scan(s.psi, s.em, p, 0, 42);
    CHECK(r.n_trials == 0);
    CHECK(r.trials.empty());
    CHECK(r.max_deviation == 0.0);
  }

  TEST_CASE("scan without charge leaves J identical") {
    const Grid3 g = Grid3::cube(24, 6.0);
    PhysicalParams p;
    p.e = 0.0;
    const State s = self_state(g, "torus-m1-spin-up", p);
    const GaugeScanReport r = gauge_scan(s.psi, s.em, p, 3, 7);
    REQUIRE(r.trials.size() == 3);
    CHECK(r.max_deviation <= 1e-13);
    for (const GaugeTrial& t : r.trials) CHECK(norm(t.J_after - t.J_before) <= 1e-13);
  }

  TEST_CASE("scan is deterministic for a seed and ordered by trial") {
    const Grid3 g = Grid3::cube(24, 6.0);
    const PhysicalParams p;
    const State s = self_state(g, "gaussian-spin-up", p);
    const GaugeScanReport a = gauge_scan(s.psi, s.em, p, 3, 42);
    const GaugeScanReport b = gauge_scan(s.psi, s.em, p, 3, 42);
    REQUIRE(a.trials.size() == 3);
    for (int t = 0; t < 3; ++t) {
      CHECK(a.trials[t].trial == t);
      CHECK(a.trials[t].chi_id == b.trials[t].chi_id);
      CHECK(bitwise_equal(a.trials[t].J_after, b.trials[t].J_after));
      CHECK(bitwise_equal(a.trials[t].shift_gauge, b.trials[t].shift_gauge));
    }
    CHECK(bitwise_equal(a.max_deviation, b.max_deviation));
    CHECK(a.max_density_deviation <= 1e-12);
  }
}
