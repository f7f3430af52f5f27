// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "amlab/decompose.hpp"
#include "amlab/dirac.hpp"
#include "amlab/emfield.hpp"
#include "amlab/gauge.hpp"
#include "amlab/scenario.hpp"
#include "amlab/scf.hpp"
#include "amlab/self_field.hpp"
#include "cli.hpp"

using namespace amlab;
namespace fs = std::filesystem;

namespace {

constexpr double kHalfWidth = 8.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [FAIL]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string vec(const Vec3& v) { return "(" + num(v.x) + ", " + num(v.y) + ", " + num(v.z) + ")"; }

Grid3 box(int n) { return Grid3::cube(n, kHalfWidth); }

SpinorField make(const std::string& name, int n, const PhysicalParams& p, Vec3 momentum = {}) {
  ScenarioSpec spec;
  spec.name = name;
  spec.momentum = momentum;
  return scenario(spec, box(n), p);
}

PhysicalParams charge(double e) {
  PhysicalParams p;
  p.e = e;
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double order(double coarse, double fine, int n0, int n1) {
  return std::log(coarse / fine) / std::log(static_cast<double>(n1) / n0);
}

Outcome ac1_headline() {
  Outcome o;
  const PhysicalParams p = charge(-1.0);
  const auto t0 = std::chrono::steady_clock::now();
  const DecompositionReport r64 = decompose(make("gaussian-spin-up", 64, p), p, SelfField{});
  const double runtime = seconds_since(t0);
  const DecompositionReport r128 = decompose(make("gaussian-spin-up", 128, p), p, SelfField{});
  const double half = 0.5 * p.hbar;
  o.require(norm(r64.J_total_eq4 - Vec3{0.0, 0.0, half}) <= 0.01 * p.hbar,
            "J_total_eq4 " + vec(r64.J_total_eq4) + " vs (0, 0, 0.5) within 0.01");
  const double c64 = norm(r64.cancellation_residual);
  const double c128 = norm(r128.cancellation_residual);
  const double e64 = norm(r64.eq7_residual);
  const double e128 = norm(r128.eq7_residual);
  o.require(c64 <= 0.01 * p.hbar, "cancellation " + num(c64) + " <= 0.01");
  o.require(c64 >= 4.0 * c128, "cancellation 64->128 " + num(c64) + " -> " + num(c128) + " ratio " +
                                   num(c64 / c128) + " >= 4");
  o.require(e64 >= 4.0 * e128,
            "eq7 residual 64->128 " + num(e64) + " -> " + num(e128) + " ratio " + num(e64 / e128) + " >= 4");
  o.require(runtime <= 120.0, "64^3 runtime " + num(runtime) + " s <= 120 s");
  return o;
}

Outcome ac2_coupling() {
  Outcome o;
  const std::vector<double> couplings{-3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0};
  std::vector<Vec3> J;
  for (const double e : couplings) {
    const PhysicalParams p = charge(e);
    J.push_back(decompose(make("gaussian-spin-up", 64, p), p, SelfField{}).J_total_eq4);
  }
  const Vec3 ref = J[3];
  double spread = 0.0;
  for (const Vec3& j : J) spread = std::max(spread, norm(j - ref));
  o.require(spread <= 0.01, "J(e=0) " + vec(ref) + ", max |J(e) - J(0)| over 7 couplings " + num(spread) +
                                " <= 0.01");
  return o;
}

Outcome ac3_bound_identity() {
  Outcome o;
  const PhysicalParams p = charge(-1.0);
  int passing = 0;
  for (const char* name : {"gaussian-spin-up", "torus-m1-spin-up", "torus-m-1-spin-up", "torus-superposition"}) {
    std::vector<double> rel;
    for (const int n : {48, 64, 96}) {
      const SpinorField psi = make(name, n, p);
      const EMConfig em = self_fields(psi, p);
      const FarFieldModel* far = em.far_field ? &*em.far_field : nullptr;
      const Vec3 from_fields = field_J_bound_from_fields(*em.E_long, em.B, p.c, far);
      const Vec3 from_rho = field_J_bound(densities(psi, p).rho, em.A, p.c);
      rel.push_back(norm(from_fields - from_rho) / norm(from_rho));
    }
    const bool ok = rel[1] <= 0.01 && rel[1] < rel[0] && rel[2] < rel[1];
    if (ok) ++passing;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + name + " " + num(rel[0]) + ", " + num(rel[1]) +
                ", " + num(rel[2]) + (ok ? "" : " [FAIL]");
  }
  o.require(passing >= 3, std::to_string(passing) + " configurations within 1% at 64 and monotone, need 3");
  return o;
}

Outcome ac4_gauge() {
  Outcome o;
  const PhysicalParams p = charge(-1.0);
  std::vector<double> dev;
  double dens = 0.0;
  for (const int n : {32, 64}) {
    const SpinorField psi = make("gaussian-spin-up", n, p);
    const GaugeScanReport r = gauge_scan(psi, self_fields(psi, p), p, 10, 42);
    dev.push_back(r.max_deviation);
    dens = std::max(dens, r.max_density_deviation);
  }
  o.require(dev[1] <= 1e-3 * p.hbar, "10 trials at 64^3 max |dJ| " + num(dev[1]) + " <= 1e-3");
  o.require(dens <= 1e-12, "density deviation " + num(dens) + " <= 1e-12");
  const double k = order(dev[0], dev[1], 32, 64);
  o.require(k >= 3.5, "refinement 32->64 " + num(dev[0]) + " -> " + num(dev[1]) + " order " + num(k) + " >= 3.5");
  return o;
}

Outcome ac5_eigenstructure() {
  Outcome o;
  const PhysicalParams p = charge(-1.0);
  const DecompositionReport r = decompose(make("torus-m1-spin-up", 64, p), p, SelfField{});
  o.require(norm(r.J_eq7 - Vec3{0.0, 0.0, 1.5 * p.hbar}) <= 0.01 * p.hbar,
            "J_eq7 " + vec(r.J_eq7) + " vs (0, 0, 1.5) within 0.01");
  std::vector<double> d;
  for (const int n : {32, 64, 128}) d.push_back(commutator_defect(make("torus-m1-spin-up", n, p), p));
  const double k = order(d[0], d[1], 32, 64);
  o.require(k >= 3.5 && k <= 4.5, "commutator 32->64 " + num(d[0]) + " -> " + num(d[1]) + " ratio " +
                                      num(d[0] / d[1]) + " order " + num(k) + " in [3.5, 4.5]");
  o.detail += "; 64->128 ratio " + num(d[1] / d[2]) + " order " + num(order(d[1], d[2], 64, 128));
  return o;
}

Outcome ac6_momentum() {
  Outcome o;
  const PhysicalParams p = charge(-1.0);
  const Vec3 k{0.1, 0.0, 0.5};
  const MomentumReport m = momentum_decompose(make("boosted-gaussian", 64, p, k), p, SelfField{});
  const double res = norm(m.cancellation_residual);
  o.require(res <= 1e-3 * norm(k), "boosted |P_gauge + P_field_bound| " + num(res) + " <= 1e-3 |p| = " +
                                        num(1e-3 * norm(k)));

  const PhysicalParams free = charge(0.0);
  const Grid3 g = Grid3::cube(16, 4.0);
  ScenarioSpec spec;
  spec.name = "plane-wave";
  spec.momentum = {0.3, -0.2, 0.7};
  const SpinorField psi = scenario(spec, g, free);
  DecomposeOptions opt;
  opt.scheme = Scheme::spectral;
  const MomentumReport w = momentum_decompose(psi, free, SelfField{}, opt);
  const Vec3 expect = norm2(psi) * lattice_momentum(spec.momentum, g, free);
  const double err = norm(w.P_total - expect);
  o.require(err <= 1e-10, "plane wave |P - p| " + num(err) + " <= 1e-10");
  return o;
}

Outcome ac7_algebra() {
  Outcome o;
  const std::vector<AlgebraCheck> checks = check_algebra();
  int failed = 0;
  int anticommutators = 0;
  for (const AlgebraCheck& c : checks) {
    if (!c.pass) ++failed;
    if (c.name.rfind("{gamma", 0) == 0) ++anticommutators;
  }
  o.require(anticommutators == 16, std::to_string(anticommutators) + " gamma anticommutators");
  o.require(failed == 0, std::to_string(checks.size()) + " exact checks, " + std::to_string(failed) + " failed");
  return o;
}

bool same_history(const std::vector<ScfRecord>& a, const std::vector<ScfRecord>& b) {
  if (a.size() != b.size()) return false;
  std::ostringstream x;
  std::ostringstream y;
  write_history_csv(a, x);
  write_history_csv(b, y);
  return x.str() == y.str();
}

Outcome ac8_scf() {
  Outcome o;
  const PhysicalParams free = charge(0.0);
  ScenarioSpec spec;
  spec.name = "plane-wave";
  spec.momentum = {0.0, 0.0, 0.5};
  ScfParams fixed;
  fixed.scheme = Scheme::spectral;
  fixed.tol = 1e-10;
  const ScfResult pw = scf_iterate(scenario(spec, Grid3::cube(16, 4.0), free), fixed, free);
  o.require(pw.state.converged && pw.state.iteration == 0 && pw.history[0].residual <= 1e-10,
            "plane wave residual " + num(pw.history[0].residual) + " at iteration " +
                std::to_string(pw.state.iteration));

  const PhysicalParams weak = charge(-0.1);
  ScfParams sp;
  sp.max_iter = 50;
  const SpinorField psi = make("gaussian-spin-up", 24, weak);
  const ScfResult a = scf_iterate(psi, sp, weak);
  const double first = a.history.front().residual;
  std::size_t halved = 0;
  while (halved < a.history.size() && a.history[halved].residual > 0.5 * first) ++halved;
  o.require(halved < a.history.size(), "e=-0.1 residual " + num(first) + " -> " +
                                           num(a.history.back().residual) + ", halved at iteration " +
                                           std::to_string(halved));
  const ScfResult b = scf_iterate(psi, sp, weak);
  o.require(same_history(a.history, b.history), "history bitwise identical on rerun");
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "amlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

struct Command {
  std::string name;
  std::vector<std::string> args;  // without --out
  std::string output;
  std::string echo;  // file holding the echoed config
};

Outcome ac9_determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("amlab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string hw = "8";
  const std::vector<Command> commands{
      {"generate", {"generate", "--scenario", "torus-superposition", "--n", "32", "--half-width", hw}, "psi.amf",
       "psi.amf.json"},
      {"decompose",
       {"decompose", "--scenario", "gaussian-spin-up", "--n", "32", "--half-width", hw, "--self-field",
        "--momentum-report", "--e-scan", "-1,0,1"},
       "dec.json", "dec.json"},
      {"gauge-scan", {"gauge-scan", "--n", "32", "--half-width", hw, "--trials", "3", "--seed", "42"}, "gauge.json",
       "gauge.json"},
      {"scf", {"scf", "--coupling", "-0.1", "--n", "24", "--half-width", hw, "--max-iter", "10"}, "scf.csv",
       "scf.csv.json"},
      {"verify", {"verify", "--suite", "commutators", "--n", "24,48", "--half-width", "6"}, "verify.json",
       "verify.json"},
  };
  for (const Command& c : commands) {
    const fs::path out = dir / c.output;
    std::vector<std::string> args{"--threads", "1"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    args.push_back("--out");
    args.push_back(out.string());
    const int code = invoke(args);
    const std::string bytes = slurp(out);
    const fs::path echo = dir / (c.name + ".echo.json");
    fs::copy_file(dir / c.echo, echo, fs::copy_options::overwrite_existing);
    bool same = !bytes.empty();
    for (const char* threads : {"2", "3"}) {
      fs::remove(out);
      const int again = invoke({"--threads", threads, "replay", echo.string()});
      same = same && again == code && slurp(out) == bytes;
    }
    o.require(same, c.name + " exit " + std::to_string(code) + " replayed with 2 and 3 threads");
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, ac1_headline},       {2, ac2_coupling}, {3, ac3_bound_identity}, {4, ac4_gauge},
      {5, ac5_eigenstructure}, {6, ac6_momentum}, {7, ac7_algebra},        {8, ac8_scf},
      {9, ac9_determinism},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("AC%d %s %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
