#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "amlab/amf.hpp"
#include "amlab/gauge.hpp"
#include "amlab/helmholtz.hpp"
#include "amlab/parallel.hpp"
#include "amlab/report_json.hpp"
#include "amlab/scf.hpp"

namespace amlab::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kGaugeTol = 1e-3;
constexpr double kDensityTol = 1e-12;
constexpr double kBoundTol = 1e-2;
constexpr double kMinRatio = 4.0;
constexpr double kMinOrder = 3.5;
constexpr double kMaxOrder = 4.5;

const std::vector<std::string> kSuites{"gamma", "identities", "commutators", "gauge",
                                       "cancellation"};

json scenario_json(const ScenarioSpec& s) {
  return json{{"name", s.name},         {"width", s.width},       {"balance", s.balance},
              {"center", s.center},     {"momentum", s.momentum}, {"helicity", s.helicity}};
}

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw UsageError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ScenarioSpec scenario_from(const json& j) {
  ScenarioSpec s;
  for (const auto& [k, v] : j.items()) {
    if (k == "name") s.name = v.get<std::string>();
    else if (k == "width") s.width = v.get<double>();
    else if (k == "balance") s.balance = v.get<double>();
    else if (k == "center") s.center = vec_from(v);
    else if (k == "momentum") s.momentum = vec_from(v);
    else if (k == "helicity") s.helicity = v.get<int>();
    else throw UsageError("unknown scenario key '" + k + "'");
  }
  return s;
}

PhysicalParams params_of(const RunConfig& cfg, double e) {
  PhysicalParams p;
  p.m = cfg.mass;
  p.hbar = cfg.hbar;
  p.c = cfg.c;
  p.e = e;
  return p;
}

Scheme scheme_of(const RunConfig& cfg) {
  if (cfg.scheme == "auto") {
    return cfg.scenario.name == "plane-wave" ? Scheme::spectral : Scheme::fd4;
  }
  try {
    return parse_scheme(cfg.scheme);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<int> ladder(const RunConfig& cfg, std::vector<int> fallback) {
  return cfg.n.empty() ? fallback : cfg.n;
}

int single_n(const RunConfig& cfg, int fallback) { return cfg.n.empty() ? fallback : cfg.n.front(); }

Grid3 grid_of(const RunConfig& cfg, int n) {
  if (n < Grid3::kMinPoints) {
    throw UsageError("--n must be at least " + std::to_string(Grid3::kMinPoints));
  }
  if (!(cfg.half_width > 0.0)) throw UsageError("--half-width must be positive");
  return Grid3::cube(n, cfg.half_width);
}

SpinorField make_state(const RunConfig& cfg, const ScenarioSpec& spec, int n) {
  if (!cfg.input.empty()) return read_field_as<SpinorField>(cfg.input);
  try {
    return scenario(spec, grid_of(cfg, n), params_of(cfg, cfg.coupling));
  } catch (const ScenarioError& e) {
    throw UsageError(e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

/// JSON document to --out, or to the console when no path is configured.
void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_text(cfg.output, text);
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(const Vec3& v) { return "(" + fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z) + ")"; }

// ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) throw UsageError("generate requires --out");
  const int n = single_n(cfg, 64);
  const SpinorField psi = make_state(cfg, cfg.scenario, n);
  write_field(AnyField(psi), std::filesystem::path(cfg.output));
  const double nrm = norm2(psi);
  json meta{{"config", to_json(cfg)}, {"norm", nrm}, {"grid", psi.grid()}};
  write_text(cfg.output + ".json", meta.dump(2) + "\n");
  out << "wrote " << cfg.output << ": scenario " << cfg.scenario.name << ", n = " << n
      << ", h = " << fmt(psi.grid().h().x) << ", norm = " << fmt(nrm) << "\n";
  return kOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  const int n = single_n(cfg, 64);
  const SpinorField psi = make_state(cfg, cfg.scenario, n);
  const std::vector<double> es = cfg.e_scan.empty() ? std::vector<double>{cfg.coupling} : cfg.e_scan;

  DecomposeOptions opts;
  opts.scheme = scheme_of(cfg);
  opts.tolerances = cfg.tolerances;
  opts.self.far_field_closure = cfg.far_field;

  std::ostringstream summary;
  json reports = json::array();
  bool pass = true;
  std::optional<Vec3> jmin;
  Vec3 lo;
  Vec3 hi;
  for (const double e : es) {
    const PhysicalParams p = params_of(cfg, e);
    FieldSource src = SelfField{};
    if (!cfg.self_field) {
      EMConfig free(psi.grid());
      free.E_long = VectorField(psi.grid());
      src = free;
    }
    const DecompositionReport r = decompose(psi, p, src, opts);
    const CancellationVerdict v = verify_cancellation(r);
    pass = pass && v.pass;
    json item{{"e", e},
              {"decomposition", r},
              {"verdict", {{"pass", v.pass}, {"cancellation", v.cancellation}, {"eq7", v.eq7}}}};
    if (cfg.momentum) item["momentum"] = momentum_decompose(psi, p, src, opts);
    reports.push_back(item);
    if (!jmin) {
      lo = hi = r.J_total_eq4;
      jmin = lo;
    }
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], r.J_total_eq4[a]);
      hi[a] = std::max(hi[a], r.J_total_eq4[a]);
    }
    summary << "e = " << fmt(e) << ": J_total_eq4 = " << fmt(r.J_total_eq4)
        << ", |cancellation| = " << fmt(v.cancellation) << ", |eq7| = " << fmt(v.eq7)
        << (v.pass ? "  pass" : "  FAIL") << "\n";
  }
  const double spread = norm(hi - lo);
  const bool spread_ok = spread <= cfg.tolerances.cancel;
  json doc{{"config", to_json(cfg)}, {"reports", reports}};
  if (es.size() > 1) {
    doc["J_total_spread"] = spread;
    summary << "J_total_eq4 spread over " << es.size() << " couplings: " << fmt(spread)
        << (spread_ok ? "  pass" : "  FAIL") << "\n";
    pass = pass && spread_ok;
  }
  doc["pass"] = pass;
  emit(cfg, doc, out);
  if (!cfg.output.empty()) out << summary.str();
  return cfg.check && !pass ? kCheckFailed : kOk;
}

int cmd_gauge_scan(const RunConfig& cfg, std::ostream& out) {
  if (cfg.trials < 0) throw UsageError("--trials must be non-negative");
  const int n = single_n(cfg, 64);
  const SpinorField psi = make_state(cfg, cfg.scenario, n);
  const PhysicalParams p = params_of(cfg, cfg.coupling);
  SelfFieldOptions so;
  so.far_field_closure = cfg.far_field;
  const EMConfig em = self_fields(psi, p, so);
  const GaugeScanReport r = gauge_scan(psi, em, p, cfg.trials, cfg.seed, scheme_of(cfg));
  const bool pass = r.max_deviation <= kGaugeTol && r.max_density_deviation <= kDensityTol;
  emit(cfg, json{{"config", to_json(cfg)}, {"report", r}, {"pass", pass}}, out);
  if (!cfg.output.empty()) {
    out << r.n_trials << " gauge trials, seed " << r.seed << ": max |dJ| = " << fmt(r.max_deviation)
        << ", max density change = " << fmt(r.max_density_deviation)
        << (pass ? "  pass" : "  FAIL") << "\n";
  }
  return cfg.check && !pass ? kCheckFailed : kOk;
}

int cmd_scf(const RunConfig& cfg, std::ostream& out) {
  const int n = single_n(cfg, 24);
  const SpinorField psi = make_state(cfg, cfg.scenario, n);
  ScfParams sp;
  sp.mix = cfg.mix;
  sp.tol = cfg.tol;
  sp.max_iter = cfg.max_iter;
  sp.step = cfg.step;
  sp.scheme = scheme_of(cfg);
  sp.self.far_field_closure = false;
  try {
    sp.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const ScfResult res = scf_iterate(psi, sp, params_of(cfg, cfg.coupling));
  std::ostringstream csv;
  write_history_csv(res.history, csv);
  const bool pass = res.state.converged || res.history.back().residual < res.history.front().residual;
  if (cfg.output.empty()) {
    out << csv.str();
  } else {
    write_text(cfg.output, csv.str());
    json doc{{"config", to_json(cfg)},
             {"summary", scf_summary(res.state)},
             {"history", res.history},
             {"pass", pass}};
    write_text(cfg.output + ".json", doc.dump(2) + "\n");
    out << "scf: " << res.state.iteration << " iterations, residual "
        << fmt(res.history.front().residual) << " -> " << fmt(res.state.residual)
        << (res.state.converged ? ", converged" : "") << (res.state.stagnated ? ", stagnated" : "")
        << "\n";
  }
  return cfg.check && !pass ? kCheckFailed : kOk;
}

// ---------------------------------------------------------------------------
// verify

struct Row {
  std::string suite;
  std::string property;
  std::string detail;
  bool pass = false;
};

double ratio_order(double coarse, double fine, int n0, int n1) {
  if (!(fine > 0.0) || !(coarse > 0.0)) return 0.0;
  return std::log(coarse / fine) / std::log(static_cast<double>(n1) / n0);
}

std::string ladder_text(const std::vector<int>& ns, const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    s += (i ? ", " : "") + std::to_string(ns[i]) + ": " + fmt(v[i]);
  }
  return s;
}

bool decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

void suite_gamma(std::vector<Row>& rows) {
  for (const auto& c : check_algebra()) rows.push_back({"gamma", c.name, "exact", c.pass});
}

void suite_identities(const RunConfig& cfg, std::vector<Row>& rows) {
  const std::vector<int> ns = ladder(cfg, {48, 96});
  const PhysicalParams p = params_of(cfg, cfg.coupling);
  SelfFieldOptions so;
  so.far_field_closure = cfg.far_field;
  const std::vector<std::string> localized{"gaussian-spin-up", "gaussian-spin-x",
                                           "torus-m1-spin-up", "torus-m-1-spin-up",
                                           "torus-superposition"};
  for (const auto& name : localized) {
    ScenarioSpec spec = cfg.scenario;
    spec.name = name;
    std::vector<double> res;
    bool p2 = true;
    bool p4 = true;
    for (const int n : ns) {
      const SpinorField psi = scenario(spec, grid_of(cfg, n), p);
      const EMConfig em = self_fields(psi, p, so);
      const SourceDensities src = densities(psi, p);
      const FarFieldModel* far = em.far_field ? &*em.far_field : nullptr;
      const Vec3 from_fields = field_J_bound_from_fields(*em.E_long, em.B, p.c, far);
      const Vec3 from_rho = field_J_bound(src.rho, em.A, p.c);
      res.push_back(norm(from_fields - from_rho) / std::max(norm(from_rho), 1e-300));
      // P2: total = bound + radiative for an added transverse field.
      const VectorField& Et = em.B;
      const Vec3 total = field_J_total(*em.E_long + Et, em.B, p.c);
      const Vec3 split = field_J_total(*em.E_long, em.B, p.c) + field_J_total(Et, em.B, p.c);
      p2 = p2 && norm(total - split) <= 1e-12 * std::max(norm(total), 1.0);
      // P4: rho -> -rho with regenerated E_long flips the bound term exactly.
      const CoulombField flipped = coulomb_field(-1.0 * src.rho);
      const Vec3 neg = field_J_bound_from_fields(flipped.E, em.B, p.c);
      const Vec3 pos = field_J_bound_from_fields(*em.E_long, em.B, p.c);
      p4 = p4 && neg == -1.0 * pos;
    }
    const double ratio = res.front() / res.back();
    const bool ok = res.back() <= kBoundTol && decreasing(res) && (ns.size() < 2 || ratio >= kMinRatio);
    rows.push_back({"identities", "P1 bound identity " + name,
                    ladder_text(ns, res) + (ns.size() > 1 ? ", ratio " + fmt(ratio) : ""), ok});
    rows.push_back({"identities", "P2 linear split " + name, "to 1e-12", p2});
    rows.push_back({"identities", "P4 charge sign flip " + name, "exact", p4});
  }

  // P3 on a moving packet.
  ScenarioSpec spec = cfg.scenario;
  spec.name = "boosted-gaussian";
  if (spec.momentum == Vec3{}) spec.momentum = {0.1, 0.0, 0.5};
  std::vector<double> res;
  DecomposeOptions opts;
  opts.self = so;
  for (const int n : ns) {
    const SpinorField psi = scenario(spec, grid_of(cfg, n), p);
    const MomentumReport m = momentum_decompose(psi, p, SelfField{}, opts);
    const double scale = m.P_field_bound_from_rho_At ? norm(*m.P_field_bound_from_rho_At) : 0.0;
    res.push_back(scale > 0.0 ? norm(m.cancellation_residual) / scale : 0.0);
  }
  const double ratio = res.back() > 0.0 ? res.front() / res.back() : 0.0;
  const bool ok = res.back() <= kBoundTol && (ns.size() < 2 || (decreasing(res) && ratio >= kMinRatio));
  rows.push_back({"identities", "P3 momentum bound identity boosted-gaussian",
                  ladder_text(ns, res) + (ns.size() > 1 ? ", ratio " + fmt(ratio) : ""), ok});
}

void suite_commutators(const RunConfig& cfg, std::vector<Row>& rows) {
  const std::vector<int> ns = ladder(cfg, {32, 64});
  const PhysicalParams p = params_of(cfg, cfg.coupling);
  ScenarioSpec spec = cfg.scenario;
  spec.name = "torus-m1-spin-up";
  std::vector<double> d;
  for (const int n : ns) d.push_back(commutator_defect(scenario(spec, grid_of(cfg, n), p), p));
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const double order = ratio_order(d[i - 1], d[i], ns[i - 1], ns[i]);
    rows.push_back({"commutators",
                    "[J_x, J_y] - i hbar J_z, " + std::to_string(ns[i - 1]) + " -> " +
                        std::to_string(ns[i]),
                    fmt(d[i - 1]) + " -> " + fmt(d[i]) + ", ratio " + fmt(d[i - 1] / d[i]) +
                        ", order " + fmt(order),
                    order >= kMinOrder && order <= kMaxOrder});
  }
  if (ns.size() < 2) rows.push_back({"commutators", "defect", fmt(d.front()), true});
}

void suite_gauge(const RunConfig& cfg, std::vector<Row>& rows) {
  const std::vector<int> ns = ladder(cfg, {32, 64});
  const PhysicalParams p = params_of(cfg, cfg.coupling);
  SelfFieldOptions so;
  so.far_field_closure = cfg.far_field;
  std::vector<double> dev;
  double dens = 0.0;
  for (const int n : ns) {
    const SpinorField psi = scenario(cfg.scenario, grid_of(cfg, n), p);
    const EMConfig em = self_fields(psi, p, so);
    const GaugeScanReport r = gauge_scan(psi, em, p, cfg.trials, cfg.seed, scheme_of(cfg));
    dev.push_back(r.max_deviation);
    dens = std::max(dens, r.max_density_deviation);
  }
  rows.push_back({"gauge", "total J invariance", ladder_text(ns, dev), dev.back() <= kGaugeTol});
  rows.push_back({"gauge", "density invariance", fmt(dens), dens <= kDensityTol});
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const double order = ratio_order(dev[i - 1], dev[i], ns[i - 1], ns[i]);
    rows.push_back({"gauge", "refinement order " + std::to_string(ns[i - 1]) + " -> " +
                                 std::to_string(ns[i]),
                    fmt(order), order >= kMinOrder});
  }
}

void suite_cancellation(const RunConfig& cfg, std::vector<Row>& rows) {
  const std::vector<int> ns = ladder(cfg, {48, 96});
  const PhysicalParams p = params_of(cfg, cfg.coupling);
  DecomposeOptions opts;
  opts.scheme = scheme_of(cfg);
  opts.tolerances = cfg.tolerances;
  opts.self.far_field_closure = cfg.far_field;
  std::vector<double> canc;
  std::vector<double> eq7;
  bool pass = true;
  for (const int n : ns) {
    const SpinorField psi = scenario(cfg.scenario, grid_of(cfg, n), p);
    const CancellationVerdict v = verify_cancellation(decompose(psi, p, SelfField{}, opts));
    canc.push_back(v.cancellation);
    eq7.push_back(v.eq7);
    pass = pass && v.pass;
  }
  rows.push_back({"cancellation", "L_gauge + J_field_bound", ladder_text(ns, canc), pass});
  rows.push_back({"cancellation", "J_total_eq4 - J_eq7", ladder_text(ns, eq7), pass});
  if (ns.size() > 1) {
    const double r = canc.back() > 0.0 ? canc.front() / canc.back() : INFINITY;
    rows.push_back({"cancellation", "refinement ratio", fmt(r), r >= kMinRatio});
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> suites;
  if (cfg.suite == "all") {
    suites = kSuites;
  } else if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) != kSuites.end()) {
    suites = {cfg.suite};
  } else {
    throw UsageError("unknown suite '" + cfg.suite +
                     "' (expected gamma|identities|commutators|gauge|cancellation|all)");
  }
  std::vector<Row> rows;
  for (const auto& s : suites) {
    if (s == "gamma") suite_gamma(rows);
    if (s == "identities") suite_identities(cfg, rows);
    if (s == "commutators") suite_commutators(cfg, rows);
    if (s == "gauge") suite_gauge(cfg, rows);
    if (s == "cancellation") suite_cancellation(cfg, rows);
  }
  bool pass = true;
  json jr = json::array();
  for (const auto& r : rows) {
    pass = pass && r.pass;
    out << (r.pass ? "pass  " : "FAIL  ") << r.suite << "  " << r.property << "  [" << r.detail
        << "]\n";
    jr.push_back({{"suite", r.suite}, {"property", r.property}, {"detail", r.detail}, {"pass", r.pass}});
  }
  out << (pass ? "all properties pass" : "verification failed") << "\n";
  if (!cfg.output.empty()) {
    write_text(cfg.output, json{{"config", to_json(cfg)}, {"rows", jr}, {"pass", pass}}.dump(2) + "\n");
  }
  return pass ? kOk : kCheckFailed;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j.contains("config") ? j["config"] : j);
}

}  // namespace

json to_json(const RunConfig& c) {
  return json{{"command", c.command},
              {"scenario", scenario_json(c.scenario)},
              {"n", c.n},
              {"half_width", c.half_width},
              {"scheme", c.scheme},
              {"coupling", c.coupling},
              {"e_scan", c.e_scan},
              {"mass", c.mass},
              {"hbar", c.hbar},
              {"c", c.c},
              {"self_field", c.self_field},
              {"far_field", c.far_field},
              {"check", c.check},
              {"momentum", c.momentum},
              {"tolerances", c.tolerances},
              {"seed", c.seed},
              {"trials", c.trials},
              {"suite", c.suite},
              {"mix", c.mix},
              {"tol", c.tol},
              {"max_iter", c.max_iter},
              {"step", c.step},
              {"input", c.input},
              {"output", c.output}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("run configuration must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "command") c.command = v.get<std::string>();
      else if (k == "scenario") c.scenario = scenario_from(v);
      else if (k == "n") c.n = v.get<std::vector<int>>();
      else if (k == "half_width") c.half_width = v.get<double>();
      else if (k == "scheme") c.scheme = v.get<std::string>();
      else if (k == "coupling") c.coupling = v.get<double>();
      else if (k == "e_scan") c.e_scan = v.get<std::vector<double>>();
      else if (k == "mass") c.mass = v.get<double>();
      else if (k == "hbar") c.hbar = v.get<double>();
      else if (k == "c") c.c = v.get<double>();
      else if (k == "self_field") c.self_field = v.get<bool>();
      else if (k == "far_field") c.far_field = v.get<bool>();
      else if (k == "check") c.check = v.get<bool>();
      else if (k == "momentum") c.momentum = v.get<bool>();
      else if (k == "tolerances") {
        c.tolerances.cancel = v.at("cancel").get<double>();
        c.tolerances.eq7 = v.at("eq7").get<double>();
      } else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "trials") c.trials = v.get<int>();
      else if (k == "suite") c.suite = v.get<std::string>();
      else if (k == "mix") c.mix = v.get<double>();
      else if (k == "tol") c.tol = v.get<double>();
      else if (k == "max_iter") c.max_iter = v.get<int>();
      else if (k == "step") c.step = v.get<double>();
      else if (k == "input") c.input = v.get<std::string>();
      else if (k == "output") c.output = v.get<std::string>();
      else throw UsageError("unknown configuration key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed configuration: ") + e.what());
  }
  return c;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "generate") return cmd_generate(cfg, out);
    if (cfg.command == "decompose") return cmd_decompose(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "gauge-scan") return cmd_gauge_scan(cfg, out);
    if (cfg.command == "scf") return cmd_scf(cfg, out);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

namespace {

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--scenario", c.scenario.name, "scenario name")->capture_default_str();
  sub->add_option("--width", c.scenario.width, "envelope width")->capture_default_str();
  sub->add_option("--balance", c.scenario.balance, "kinetic-balance factor")->capture_default_str();
  sub->add_option("--helicity", c.scenario.helicity, "plane-wave helicity (+1 or -1)");
  sub->add_option("--n", c.n, "points per axis; comma list for a ladder")->delimiter(',');
  sub->add_option("--half-width", c.half_width, "box half-width")->capture_default_str();
  sub->add_option("--scheme", c.scheme, "auto|fd4|spectral")->capture_default_str();
  sub->add_option("--coupling,-e", c.coupling, "charge e")->capture_default_str();
  sub->add_option("--mass", c.mass)->capture_default_str();
  sub->add_option("--hbar", c.hbar)->capture_default_str();
  sub->add_option("--c", c.c)->capture_default_str();
  sub->add_option("--in", c.input, "AMF1 spinor file (instead of --scenario)");
  sub->add_option("--out", c.output, "output path");
}

void add_vec3(CLI::App* sub, const std::string& name, Vec3& v, const std::string& help) {
  sub->add_option_function<std::vector<double>>(
         name,
         [&v, name](const std::vector<double>& xs) {
           if (xs.size() != 3) throw CLI::ValidationError(name, "expects three values x,y,z");
           v = {xs[0], xs[1], xs[2]};
         },
         help)
      ->delimiter(',');
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  int threads = 0;
  bool timing = false;
  std::string replay_path;

  CLI::App app{"amlab: angular momentum of the Dirac field and its self-fields"};
  app.require_subcommand(1);
  app.add_option("--threads", threads, "worker threads (0 = runtime default)");
  app.add_flag("--timing", timing, "print wall time to stderr");

  auto* gen = app.add_subcommand("generate", "write a scenario spinor as an AMF1 file");
  auto* dec = app.add_subcommand("decompose", "angular-momentum decomposition report");
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  auto* gs = app.add_subcommand("gauge-scan", "seeded random gauge transformations");
  auto* scf = app.add_subcommand("scf", "self-consistent field iteration");
  auto* rep = app.add_subcommand("replay", "rerun a command from an echoed configuration");

  for (auto* s : {gen, dec, ver, gs, scf}) {
    add_common(s, c);
    s->add_flag("--no-far-field{false}", c.far_field, "disable the exterior field closure");
  }
  for (auto* s : {gen, dec, gs, scf}) {
    add_vec3(s, "--center", c.scenario.center, "packet center x,y,z");
    add_vec3(s, "--momentum", c.scenario.momentum, "packet momentum x,y,z");
  }
  dec->add_flag("--self-field", c.self_field, "use the self-fields of the spinor");
  dec->add_flag("--check", c.check, "exit 1 unless the cancellation holds");
  dec->add_flag("--momentum-report", c.momentum, "add the linear-momentum report");
  dec->add_option("--e-scan", c.e_scan, "comma list of couplings")->delimiter(',');
  for (auto* s : {dec, ver}) {
    s->add_option("--tol-cancel", c.tolerances.cancel)->capture_default_str();
    s->add_option("--tol-eq7", c.tolerances.eq7)->capture_default_str();
  }
  ver->add_option("--suite", c.suite, "gamma|identities|commutators|gauge|cancellation|all")
      ->capture_default_str();
  for (auto* s : {gs, ver}) {
    s->add_option("--trials", c.trials)->capture_default_str();
    s->add_option("--seed", c.seed)->capture_default_str();
  }
  gs->add_flag("--check", c.check, "exit 1 unless invariance holds");
  scf->add_option("--mix", c.mix)->capture_default_str();
  scf->add_option("--tol", c.tol)->capture_default_str();
  scf->add_option("--max-iter", c.max_iter)->capture_default_str();
  scf->add_option("--step", c.step)->capture_default_str();
  scf->add_flag("--check", c.check, "exit 1 if the residual did not decrease");
  rep->add_option("config", replay_path, "JSON file holding a configuration echo")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream ee;
    const int code = app.exit(e, o, ee);
    out << o.str();
    err << ee.str();
    return code == 0 ? kOk : kUsage;
  }

  set_thread_count(threads);
  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  if (rep->parsed()) {
    try {
      c = load_config(replay_path);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kRuntime;
    }
  } else {
    c.command = app.get_subcommands().front()->get_name();
  }
  code = execute(c, out, err);
  if (timing) {
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << "wall time " << fmt(dt) << " s\n";
  }
  return code;
}

}  // namespace amlab::cli
