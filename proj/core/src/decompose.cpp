#include "amlab/decompose.hpp"

#include <cmath>
#include <numbers>

#include "amlab/helmholtz.hpp"
#include "amlab/reduce.hpp"

namespace amlab {

namespace {

struct Resolved {
  EMConfig em;
  std::string source;
};

Resolved resolve(const SpinorField& psi, const PhysicalParams& params, const FieldSource& source,
                 const DecomposeOptions& options) {
  if (std::holds_alternative<SelfField>(source)) {
    return {self_fields(psi, params, options.self), "self-field"};
  }
  const EMConfig& em = std::get<EMConfig>(source);
  em.validate();
  psi.require_same_grid(em.grid());
  if (!em.E_long) {
    throw PreconditionError("explicit field configuration lacks the longitudinal electric field");
  }
  return {em, "explicit"};
}

// (x cross) applied to psi^dagger grad psi, integrated: returns integral psi^dagger grad psi.
std::array<cplx, 3> gradient_expectation(const SpinorField& psi, Scheme scheme) {
  std::array<cplx, 3> out{};
  for (int a = 0; a < 3; ++a) out[a] = inner(psi, derivative(psi, a, scheme));
  return out;
}

}  // namespace

DecompositionReport decompose(const SpinorField& psi, const PhysicalParams& params,
                              const FieldSource& source, const DecomposeOptions& options) {
  params.validate();
  require_finite(psi, "decompose");
  const Resolved r = resolve(psi, params, source, options);
  const EMConfig& em = r.em;
  const Grid3& g = psi.grid();
  const double inv_hbar = 1.0 / params.hbar;

  DecompositionReport rep;
  rep.field_source = r.source;
  rep.gauge_tag = em.gauge_tag;
  rep.chi_id = em.chi_id;
  rep.params = params;
  rep.grid = g;
  rep.scheme = options.scheme;
  rep.tolerances = options.tolerances;
  rep.norm = norm2(psi);
  rep.psi_boundary_ratio = boundary_ratio(psi);
  rep.A_transversality_defect = transversality_defect(em.A);

  const OrbitalTerm orb = orbital_term(psi, params, options.scheme);
  rep.L_orbital = inv_hbar * orb.value;
  rep.L_orbital_imaginary = inv_hbar * orb.imaginary;
  rep.orbital_warning = orb.warning;
  rep.L_gauge = inv_hbar * gauge_term(psi, em.A, params);
  rep.S_spin = inv_hbar * spin_term(psi, params);

  FieldTail tail;
  if (em.far_field) tail = field_tail(*em.far_field, g);
  rep.far_field_closure = tail.applied;
  rep.far_field_correction = inv_hbar * tail.angular;

  const VectorField E = em.E();
  rep.J_field_total = inv_hbar * (field_J_total(E, em.B, params.c) + tail.angular);
  rep.J_field_bound_from_fields =
      inv_hbar * (field_J_bound_from_fields(*em.E_long, em.B, params.c) + tail.angular);
  if (em.gauge_tag == GaugeTag::coulomb && params.e != 0.0) {
    const ScalarField rho = params.e * probability_density(psi);
    try {
      rep.J_field_bound_from_rho_At = inv_hbar * field_J_bound(rho, em.A, params.c);
    } catch (const PreconditionError&) {
      rep.J_field_bound_from_rho_At.reset();
    }
  } else if (em.gauge_tag == GaugeTag::coulomb) {
    rep.J_field_bound_from_rho_At = Vec3{};
  }
  rep.J_field_radiative = rep.J_field_total - rep.J_field_bound_from_fields;
  if (em.E_trans) {
    try {
      const RadiativeSplit s = field_J_radiative_split(*em.E_trans, em.A, params.c);
      rep.rad_spin = inv_hbar * s.spin;
      rep.rad_orbital = inv_hbar * s.orbital;
    } catch (const PreconditionError&) {
      rep.rad_spin = {};
      rep.rad_orbital = {};
    }
  }
  rep.rad_boundary_residual = rep.J_field_radiative - rep.rad_spin - rep.rad_orbital;

  rep.J_total_eq4 = rep.L_orbital + rep.L_gauge + rep.S_spin + rep.J_field_total;
  rep.J_eq7 = rep.L_orbital + rep.S_spin;
  rep.cancellation_residual = rep.L_gauge + rep.J_field_bound_from_fields;
  rep.eq7_residual = rep.J_total_eq4 - rep.J_eq7;
  return rep;
}

CancellationVerdict verify_cancellation(const DecompositionReport& report) {
  return verify_cancellation(report, report.tolerances);
}

CancellationVerdict verify_cancellation(const DecompositionReport& report, const Tolerances& tol) {
  if (report.gauge_tag != GaugeTag::coulomb) {
    throw PreconditionError("cancellation holds in Coulomb gauge only; report is tagged '" +
                            to_string(report.gauge_tag) + "'");
  }
  CancellationVerdict v;
  v.cancellation = norm(report.cancellation_residual);
  v.eq7 = norm(report.eq7_residual);
  v.pass = v.cancellation <= tol.cancel && v.eq7 <= tol.eq7;
  return v;
}

MomentumReport momentum_decompose(const SpinorField& psi, const PhysicalParams& params,
                                  const FieldSource& source, const DecomposeOptions& options) {
  params.validate();
  require_finite(psi, "momentum_decompose");
  const Resolved r = resolve(psi, params, source, options);
  const EMConfig& em = r.em;
  const Grid3& g = psi.grid();

  MomentumReport rep;
  rep.field_source = r.source;
  rep.gauge_tag = em.gauge_tag;
  rep.params = params;
  rep.grid = g;
  rep.scheme = options.scheme;

  const auto ge = gradient_expectation(psi, options.scheme);
  for (int a = 0; a < 3; ++a) {
    rep.P_kinetic[a] = params.hbar * ge[a].imag();
    rep.P_kinetic_imaginary[a] = -params.hbar * ge[a].real();
  }
  if (params.e != 0.0) {
    const ScalarField rho = params.e * probability_density(psi);
    rep.P_gauge = -1.0 * field_P_bound(rho, em.A, params.c);
    if (em.gauge_tag == GaugeTag::coulomb) rep.P_field_bound_from_rho_At = -1.0 * rep.P_gauge;
  } else if (em.gauge_tag == GaugeTag::coulomb) {
    rep.P_field_bound_from_rho_At = Vec3{};
  }

  FieldTail tail;
  if (em.far_field) tail = field_tail(*em.far_field, g);
  rep.P_field_total = field_P_total(em.E(), em.B, params.c) + tail.linear;
  rep.P_field_bound_from_fields = field_P_total(*em.E_long, em.B, params.c) + tail.linear;
  rep.P_total = rep.P_kinetic + rep.P_gauge + rep.P_field_total;
  rep.cancellation_residual = rep.P_gauge + rep.P_field_bound_from_fields;
  return rep;
}

StressEnergySlice stress_energy(const SpinorField& psi, const EMConfig& em,
                                const PhysicalParams& params, Scheme scheme) {
  em.validate();
  psi.require_same_grid(em.grid());
  const Grid3& g = psi.grid();
  const auto& dm = build_matrices();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
  const VectorField E = em.E();

  const SpinorField Hpsi = apply_hamiltonian(psi, &em.A, &em.phi, params, scheme);
  SpinorField H0psi = apply_hamiltonian(psi, &em.A, nullptr, params, scheme);
  H0psi *= 1.0 / params.c;  // (alpha.pi + beta m c) psi

  StressEnergySlice out{ScalarField(g), VectorField(g)};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    const Vec3 e = at(E, idx);
    const Vec3 b = at(em.B, idx);
    cplx v{};
    for (int c = 0; c < 4; ++c) v += std::conj(psi(c, idx)) * Hpsi(c, idx);
    out.T00(0, idx) = v.real() + (dot(e, e) + dot(b, b)) / (8.0 * std::numbers::pi);
    const Vec3 exb = cross(e, b) / (4.0 * std::numbers::pi);
    const Spinor sp = spinor_at(psi, idx);
    const Spinor h0 = spinor_at(H0psi, idx);
    for (int i = 0; i < 3; ++i) {
      out.T0i(i, idx) = 0.5 * params.c * sandwich(sp, dm.alpha[i], h0).real() + exb[i];
    }
  }

  const cplx mih(0.0, -params.hbar);
  for (int a = 0; a < 3; ++a) {
    const SpinorField d = derivative(psi, a, scheme);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto idx = static_cast<std::size_t>(s);
      cplx v{};
      for (int c = 0; c < 4; ++c) {
        const cplx pi_psi = mih * d(c, idx) - (params.e / params.c) * em.A(a, idx) * psi(c, idx);
        v += std::conj(psi(c, idx)) * pi_psi;
      }
      out.T0i(a, idx) += 0.5 * params.c * v.real();
    }
  }
  return out;
}

}  // namespace amlab
