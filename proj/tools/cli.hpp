#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amlab/decompose.hpp"
#include "amlab/scenario.hpp"

namespace amlab::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kRuntime = 3 };

/// Everything a command needs. Serialized verbatim into every output so a run
/// can be replayed; the worker count is an execution detail and is not part of it.
struct RunConfig {
  std::string command;
  ScenarioSpec scenario{};
  std::vector<int> n;  ///< resolution ladder; empty selects the command default
  double half_width = 8.0;
  std::string scheme = "auto";
  double coupling = -1.0;
  std::vector<double> e_scan;
  double mass = 1.0;
  double hbar = 1.0;
  double c = 1.0;
  bool self_field = false;
  bool far_field = true;
  bool check = false;
  bool momentum = false;
  Tolerances tolerances{};
  std::uint64_t seed = 42;
  int trials = 10;
  std::string suite = "all";
  double mix = 0.5;
  double tol = 1e-8;
  int max_iter = 50;
  double step = 0.05;
  std::string input;
  std::string output;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Missing keys take their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

/// Runs one configured command. Human-readable summaries go to `out`,
/// diagnostics to `err`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line, including the program name in argv[0].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace amlab::cli
