#include "amlab/report_json.hpp"

namespace amlab {

using nlohmann::json;

namespace {

json opt(const std::optional<Vec3>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void to_json(json& j, const Vec3& v) { j = json::array({v.x, v.y, v.z}); }

void to_json(json& j, const Grid3& g) {
  j = json{{"n", g.n()}, {"h", g.h()}, {"origin", g.origin()}};
}

void to_json(json& j, const PhysicalParams& p) {
  j = json{{"m", p.m}, {"e", p.e}, {"hbar", p.hbar}, {"c", p.c}};
}

void to_json(json& j, const Tolerances& t) { j = json{{"cancel", t.cancel}, {"eq7", t.eq7}}; }

void to_json(json& j, const FarFieldModel& m) {
  j = json{{"center", m.center},
           {"charge", m.charge},
           {"dipole", m.dipole},
           {"quadrupole", m.quadrupole},
           {"current", m.current},
           {"magnetic_moment", m.magnetic_moment}};
}

void to_json(json& j, const DecompositionReport& r) {
  j = json{
      {"L_orbital", r.L_orbital},
      {"L_orbital_imaginary", r.L_orbital_imaginary},
      {"orbital_warning", r.orbital_warning},
      {"L_gauge", r.L_gauge},
      {"S_spin", r.S_spin},
      {"J_field_total", r.J_field_total},
      {"J_field_bound_from_fields", r.J_field_bound_from_fields},
      {"J_field_bound_from_rho_At", opt(r.J_field_bound_from_rho_At)},
      {"J_field_radiative", r.J_field_radiative},
      {"J_field_radiative_spin", r.rad_spin},
      {"J_field_radiative_orbital", r.rad_orbital},
      {"J_field_radiative_boundary_residual", r.rad_boundary_residual},
      {"J_total_eq4", r.J_total_eq4},
      {"J_eq7", r.J_eq7},
      {"cancellation_residual", r.cancellation_residual},
      {"eq7_residual", r.eq7_residual},
      {"units", "hbar"},
      {"field_source", r.field_source},
      {"gauge_tag", to_string(r.gauge_tag)},
      {"chi_id", r.chi_id.empty() ? json(nullptr) : json(r.chi_id)},
      {"far_field_closure", r.far_field_closure},
      {"far_field_correction", r.far_field_correction},
      {"psi_boundary_ratio", r.psi_boundary_ratio},
      {"A_transversality_defect", r.A_transversality_defect},
      {"norm", r.norm},
      {"static_reduction", r.static_reduction},
      {"params", r.params},
      {"grid", r.grid},
      {"scheme", to_string(r.scheme)},
      {"tolerances", r.tolerances},
  };
}

void to_json(json& j, const MomentumReport& r) {
  j = json{
      {"P_kinetic", r.P_kinetic},
      {"P_kinetic_imaginary", r.P_kinetic_imaginary},
      {"P_gauge", r.P_gauge},
      {"P_field_total", r.P_field_total},
      {"P_field_bound_from_fields", r.P_field_bound_from_fields},
      {"P_field_bound_from_rho_At", opt(r.P_field_bound_from_rho_At)},
      {"P_total", r.P_total},
      {"cancellation_residual", r.cancellation_residual},
      {"field_source", r.field_source},
      {"gauge_tag", to_string(r.gauge_tag)},
      {"params", r.params},
      {"grid", r.grid},
      {"scheme", to_string(r.scheme)},
  };
}

void to_json(json& j, const GaugeTrial& t) {
  j = json{{"trial", t.trial},
           {"chi_id", t.chi_id},
           {"J_before", t.J_before},
           {"J_after", t.J_after},
           {"deviation", t.deviation},
           {"shift_orbital", t.shift_orbital},
           {"shift_gauge", t.shift_gauge},
           {"shift_spin", t.shift_spin},
           {"shift_field", t.shift_field},
           {"pair_deviation", t.pair_deviation},
           {"density_deviation", t.density_deviation}};
}

void to_json(json& j, const GaugeScanReport& r) {
  j = json{{"n_trials", r.n_trials},
           {"seed", r.seed},
           {"trials", r.trials},
           {"max_deviation", r.max_deviation},
           {"max_pair_deviation", r.max_pair_deviation},
           {"max_density_deviation", r.max_density_deviation}};
}

void to_json(json& j, const ScfRecord& r) {
  j = json{{"iteration", r.iteration},
           {"energy", r.energy},
           {"residual", r.residual},
           {"step", r.step},
           {"mix", r.mix}};
}

json scf_summary(const ScfState& s) {
  return json{{"energy", s.energy},       {"residual", s.residual},
              {"iteration", s.iteration}, {"step", s.step},
              {"converged", s.converged}, {"stagnated", s.stagnated},
              {"norm", norm2(s.psi)}};
}

}  // namespace amlab
