#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>

#include "amlab/decompose.hpp"
#include "amlab/gauge.hpp"
#include "amlab/helmholtz.hpp"
#include "amlab/reduce.hpp"
#include "amlab/report_json.hpp"
#include "amlab/scenario.hpp"
#include "support.hpp"

using namespace amlab;
using namespace amlab::test;

namespace {

SpinorField make(const Grid3& g, const std::string& name, const PhysicalParams& p, Vec3 momentum = {}) {
  ScenarioSpec spec;
  spec.name = name;
  spec.momentum = momentum;
  return scenario(spec, g, p);
}

PhysicalParams with_charge(double e) {
  PhysicalParams p;
  p.e = e;
  return p;
}

}  // namespace

TEST_SUITE("decompose") {
  TEST_CASE("report sums hold exactly") {
    const Grid3 g = Grid3::cube(32, 6.0);
    const PhysicalParams p;
    const DecompositionReport r = decompose(make(g, "torus-m1-spin-up", p), p, SelfField{});
    CHECK(bitwise_equal(r.J_total_eq4, r.L_orbital + r.L_gauge + r.S_spin + r.J_field_total));
    CHECK(bitwise_equal(r.J_eq7, r.L_orbital + r.S_spin));
    CHECK(bitwise_equal(r.cancellation_residual, r.L_gauge + r.J_field_bound_from_fields));
    CHECK(bitwise_equal(r.eq7_residual, r.J_total_eq4 - r.J_eq7));
    CHECK(bitwise_equal(r.J_field_radiative, r.J_field_total - r.J_field_bound_from_fields));
    for (const Vec3& v : {r.L_orbital, r.L_gauge, r.S_spin, r.J_field_total, r.J_total_eq4}) CHECK(is_finite(v));
    CHECK(r.field_source == "self-field");
    CHECK(r.far_field_closure);
    CHECK(std::abs(r.norm - 1.0) <= 1e-12);
  }

  TEST_CASE("spin-up Gaussian carries hbar/2 and the bound field cancels the gauge term") {
    const Grid3 g = Grid3::cube(48, 6.0);
    const PhysicalParams p;
    const DecompositionReport r = decompose(make(g, "gaussian-spin-up", p), p, SelfField{});
    MESSAGE("J_z " << r.J_total_eq4.z << " cancellation " << norm(r.cancellation_residual));
    CHECK(std::abs(r.J_total_eq4.z - 0.5) <= 0.005);
    CHECK(std::hypot(r.J_total_eq4.x, r.J_total_eq4.y) <= 1e-3);
    const CancellationVerdict v = verify_cancellation(r);
    CHECK(v.pass);
    CHECK(v.cancellation <= 0.01);
    REQUIRE(r.J_field_bound_from_rho_At.has_value());
    CHECK(norm(*r.J_field_bound_from_rho_At - r.J_field_bound_from_fields) <= 0.01);
  }

  TEST_CASE("torus orbital has J_eq7 of 3 hbar / 2") {
    const Grid3 g = Grid3::cube(48, 6.0);
    const PhysicalParams p;
    const DecompositionReport r = decompose(make(g, "torus-m1-spin-up", p), p, SelfField{});
    CHECK(std::abs(r.J_eq7.z - 1.5) <= 0.015);
  }

  TEST_CASE("zero coupling passes with exactly zero residuals") {
    const Grid3 g = Grid3::cube(24, 6.0);
    const PhysicalParams p = with_charge(0.0);
    const DecompositionReport r = decompose(make(g, "gaussian-spin-up", p), p, SelfField{});
    CHECK(norm(r.L_gauge) == 0.0);
    CHECK(norm(r.J_field_total) == 0.0);
    CHECK(norm(r.J_field_bound_from_fields) == 0.0);
    CHECK(norm(r.cancellation_residual) == 0.0);
    CHECK(norm(r.eq7_residual) == 0.0);
    const CancellationVerdict v = verify_cancellation(r);
    CHECK(v.pass);
    CHECK(v.cancellation == 0.0);
    CHECK(v.eq7 == 0.0);
  }

  TEST_CASE("a non-transverse vector potential fails the cancellation") {
    const Grid3 g = Grid3::cube(32, 6.0);
    const PhysicalParams p;
    const SpinorField psi = make(g, "gaussian-spin-up", p);
    EMConfig em = self_fields(psi, p);
    // Shear perturbation g (y, 0, 0): divergence y dg/dx, torque -integral rho y^2 g.
    em.A += sample_vec(g, [](const Vec3& x) { return 0.2 * gauss(x, {}, 1.5) * Vec3{x.y, 0.0, 0.0}; });
    const DecompositionReport r = decompose(psi, p, em);
    CHECK(r.field_source == "explicit");
    CHECK(r.A_transversality_defect > 1e-2);
    const CancellationVerdict v = verify_cancellation(r);
    CHECK_FALSE(v.pass);
    CHECK(v.cancellation > 0.01);
    CHECK_FALSE(r.J_field_bound_from_rho_At.has_value());
  }

  TEST_CASE("cancellation is only defined in Coulomb gauge") {
    const Grid3 g = Grid3::cube(24, 6.0);
    const PhysicalParams p;
    const SpinorField psi = make(g, "gaussian-spin-up", p);
    const EMConfig em = self_fields(psi, p);
    const GaugedState t = apply_gauge(psi, em, gauge_from_bumps(g, {{{}, 0.7, 0.3}}, "bump"), p);
    const DecompositionReport r = decompose(t.psi, p, t.em);
    CHECK(r.gauge_tag == GaugeTag::transformed);
    CHECK(r.chi_id == "bump");
    CHECK_THROWS_AS(verify_cancellation(r), PreconditionError);
  }

  TEST_CASE("explicit configuration without a longitudinal field is rejected") {
    const Grid3 g = Grid3::cube(16, 6.0);
    const PhysicalParams p;
    const EMConfig em(g);
    CHECK_THROWS_AS(decompose(make(g, "gaussian-spin-up", p), p, em), PreconditionError);
    CHECK_THROWS_AS(momentum_decompose(make(g, "gaussian-spin-up", p), p, em), PreconditionError);
  }

  TEST_CASE("momentum of a state at rest vanishes") {
    const Grid3 g = Grid3::cube(32, 6.0);
    const PhysicalParams p;
    const MomentumReport r = momentum_decompose(make(g, "gaussian-spin-up", p), p, SelfField{});
    CHECK(norm(r.P_total) <= 1e-3);
    CHECK(norm(r.P_kinetic) <= 1e-3);
    CHECK(norm(r.cancellation_residual) <= 1e-3);
  }

  TEST_CASE("plane wave momentum in the periodic box") {
    const Grid3 g = Grid3::cube(16, 4.0);
    const PhysicalParams p = with_charge(0.0);
    const SpinorField psi = make(g, "plane-wave", p, {0.0, 0.0, 0.7});
    const Vec3 k = lattice_momentum({0.0, 0.0, 0.7}, g, p);
    DecomposeOptions opt;
    opt.scheme = Scheme::spectral;
    const MomentumReport r = momentum_decompose(psi, p, SelfField{}, opt);
    CHECK(norm(r.P_total - norm2(psi) * k) <= 1e-10);
    CHECK(norm(r.P_kinetic_imaginary) <= 1e-10);
  }

  TEST_CASE("static Coulomb field energy equals half integral rho phi") {
    const Grid3 g = Grid3::cube(64, 8.0);
    const PhysicalParams p;
    const ScalarField rho = sample(g, [](const Vec3& x) {
      return gauss_charge(x, {0.0, 0.0, 0.6}, 0.6, 1.0) + gauss_charge(x, {0.0, 0.0, -0.6}, 0.6, -1.0);
    });
    const CoulombField cf = coulomb_field(rho);
    EMConfig em(g);
    em.phi = cf.phi;
    em.E_long = cf.E;
    const StressEnergySlice t = stress_energy(SpinorField(g), em, p);
    const double field = integrate(t.T00);
    ScalarField rho_phi = rho;
    for (std::size_t i = 0; i < g.size(); ++i) rho_phi(0, i) *= cf.phi(0, i);
    const double identity = 0.5 * integrate(rho_phi);
    MESSAGE("field energy " << field << " half rho phi " << identity);
    CHECK(std::abs(field - identity) <= 1e-2 * std::abs(identity));
    CHECK(*std::min_element(t.T00.data().begin(), t.T00.data().end()) >= 0.0);
  }

  TEST_CASE("rest plane wave energy is m c^2") {
    const Grid3 g = Grid3::cube(16, 4.0);
    PhysicalParams p = with_charge(0.0);
    p.c = 3.0;
    p.m = 0.8;
    const SpinorField psi = make(g, "plane-wave", p);
    const StressEnergySlice t = stress_energy(psi, EMConfig(g), p, Scheme::spectral);
    CHECK(std::abs(integrate(t.T00) - p.m * p.c * p.c * norm2(psi)) <= 1e-10);
  }

  TEST_CASE("momentum density integrates to the kinetic momentum") {
    const Grid3 g = Grid3::cube(48, 6.0);
    const PhysicalParams p = with_charge(0.0);
    const SpinorField psi = make(g, "boosted-gaussian", p, {0.3, -0.2, 0.8});
    const StressEnergySlice t = stress_energy(psi, EMConfig(g), p);
    const Vec3 density = integrate(t.T0i) / p.c;
    const MomentumReport r = momentum_decompose(psi, p, SelfField{});
    for (int a = 0; a < 3; ++a) CHECK(std::abs(density[a] - r.P_kinetic[a]) <= 1e-6 * norm(r.P_kinetic));
  }

  TEST_CASE("momentum density integrates to the total momentum with self fields") {
    const Grid3 g = Grid3::cube(48, 6.0);
    const PhysicalParams p;
    const SpinorField psi = make(g, "boosted-gaussian", p, {0.0, 0.0, 0.8});
    const EMConfig em = self_fields(psi, p);
    const StressEnergySlice t = stress_energy(psi, em, p);
    DecomposeOptions opt;
    const MomentumReport r = momentum_decompose(psi, p, em, opt);
    const Vec3 box = r.P_kinetic + r.P_gauge + field_P_total(em.E(), em.B, p.c);
    CHECK(rel(integrate(t.T0i) / p.c, box) <= 1e-3);
  }

  TEST_CASE("self fields vanish without charge and B flips with the spin") {
    const Grid3 g = Grid3::cube(24, 6.0);
    const PhysicalParams zero = with_charge(0.0);
    const EMConfig none = self_fields(make(g, "gaussian-spin-up", zero), zero);
    CHECK(max_abs(none.phi) == 0.0);
    CHECK(max_abs(none.A) == 0.0);
    CHECK(max_abs(none.B) == 0.0);
    REQUIRE(none.E_long.has_value());
    CHECK(max_abs(*none.E_long) == 0.0);

    const PhysicalParams p;
    const EMConfig up = self_fields(make(g, "gaussian-spin-up", p), p);
    const EMConfig down = self_fields(make(g, "gaussian-spin-down", p), p);
    CHECK(max_abs(up.B) > 0.0);
    CHECK(max_abs_diff(up.B, -1.0 * VectorField(down.B)) <= 1e-12 * max_abs(up.B));
    CHECK(max_abs_diff(*up.E_long, *down.E_long) <= 1e-12 * max_abs(*up.E_long));
  }

  TEST_CASE("report serializes every term") {
    const Grid3 g = Grid3::cube(16, 6.0);
    const PhysicalParams p;
    const DecompositionReport r = decompose(make(g, "gaussian-spin-up", p), p, SelfField{});
    const nlohmann::json j = r;
    for (const char* key :
         {"L_orbital", "L_gauge", "S_spin", "J_field_total", "J_field_bound_from_fields",
          "J_field_bound_from_rho_At", "J_field_radiative", "J_total_eq4", "J_eq7", "cancellation_residual",
          "eq7_residual", "params", "grid", "tolerances", "scheme", "gauge_tag", "field_source"}) {
      CHECK_MESSAGE(j.contains(key), key);
    }
    CHECK(j["J_total_eq4"].size() == 3);
    CHECK(j["tolerances"]["cancel"].get<double>() == 0.01);
    const nlohmann::json m = momentum_decompose(make(g, "gaussian-spin-up", p), p, SelfField{});
    for (const char* key : {"P_kinetic", "P_gauge", "P_field_total", "P_total", "cancellation_residual"}) {
      CHECK_MESSAGE(m.contains(key), key);
    }
  }
}
