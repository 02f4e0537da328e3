// Run configuration, command dispatch, and report emission. Configs are a
// single JSON document with a closed schema (unknown keys rejected, numeric
// overrides bounds-checked); reports are a versioned JSON envelope whose
// deterministic region is hashed, plus optional CSV series. Doubles are
// serialized with 17 significant digits so every value round-trips.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toricap/numerics.hpp"

namespace toricap {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainSpec {
  std::string builder = "ball";
  std::map<std::string, double> params;
  Vec axes;  // ellipsoid only
};

struct ChordConfig {
  std::vector<long long> m = {1, 1};
  double phase = 0.0;
  double t_max = 0.0;  // 0 = choose from the computed capacities
  int s_count = 32;
  int t_count = 800;
  double dist_tol = 1e-6;
};

struct PerturbConfig {
  std::vector<double> etas = {0.01, 0.02};
  double sigma = 0.6;
  int count = 3;
};

struct OutputConfig {
  std::string dir = ".";
  bool json = true;
  bool csv = false;
};

struct RunConfig {
  std::string command;  // capacities | orbits | chords | verify | perturb-study | counterexample | plot-data
  DomainSpec domain;
  std::uint64_t seed = 0;
  int height = 50;
  int grid = 20000;
  int mono_samples = 2000;
  int threads = 1;
  double tol_claim = 1e-6;
  ChordConfig chords;
  PerturbConfig perturb;
  OutputConfig output;
};

// Parses and validates a config document; unknown keys anywhere are a
// ConfigError, as are out-of-bounds numeric overrides.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// exit codes used by run() and the CLI
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitVerdictFailure = 4;

struct RunResult {
  int exit_code = kExitOk;
  std::string envelope_json;
  // (file name, contents); written under the output directory
  std::vector<std::pair<std::string, std::string>> csv_files;
  std::vector<std::string> warnings;
};

RunResult run(const RunConfig& config);

// writes the envelope and CSV series under config.output.dir
void write_outputs(const RunConfig& config, const RunResult& result);

}  // namespace toricap
