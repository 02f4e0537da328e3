#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "toricap/report.hpp"
#include "toricap/version.hpp"

using namespace toricap;

namespace {

RunConfig small_verify_config() {
  RunConfig cfg = parse_config(R"({
    "command": "verify",
    "domain": {"builder": "ellipsoid", "axes": [1.0, 2.0]},
    "height": 20,
    "grid": 10000,
    "mono_samples": 500
  })");
  return cfg;
}

std::string strip_timestamp(const std::string& envelope) {
  std::string out;
  std::istringstream in(envelope);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("generated_at") != std::string::npos) continue;
    out += line;
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("parse_config: defaults, overrides, and validation") {
  const RunConfig cfg = parse_config(R"({
    "command": "capacities",
    "domain": {"builder": "ball", "params": {"n": 2, "radius": 1.5}},
    "seed": 7,
    "threads": 2
  })");
  CHECK(cfg.command == "capacities");
  CHECK(cfg.domain.builder == "ball");
  CHECK(cfg.domain.params.at("radius") == 1.5);
  CHECK(cfg.seed == 7);
  CHECK(cfg.threads == 2);
  CHECK(cfg.height == 50);  // default

  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "fly"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"surprise": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"domain": {"builder": "ball", "shape": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"height": 5})"), ConfigError);       // below bounds
  CHECK_THROWS_AS(parse_config(R"({"grid": 100})"), ConfigError);       // below bounds
  CHECK_THROWS_AS(parse_config(R"({"threads": 10000})"), ConfigError);  // above bounds
  CHECK_THROWS_AS(parse_config(R"({"perturb": {"etas": [0.5]}})"), ConfigError);
}

TEST_CASE("run rejects unknown builders with the config exit code") {
  RunConfig cfg;
  cfg.command = "capacities";
  cfg.domain.builder = "dodecahedron";
  const RunResult res = run(cfg);
  CHECK(res.exit_code == kExitConfigError);
  CHECK(res.envelope_json.empty());
}

TEST_CASE("run reports numerical failures with the numerical exit code") {
  // chord search needs dim 4; a 3-fold ellipsoid trips the guard
  RunConfig cfg;
  cfg.command = "chords";
  cfg.domain.builder = "ellipsoid";
  cfg.domain.axes = {1.0, 2.0, 3.0};
  const RunResult res = run(cfg);
  CHECK(res.exit_code == kExitNumericalFailure);
}

TEST_CASE("verify exits zero iff all applicable verdicts pass") {
  const RunResult res = run(small_verify_config());
  CHECK(res.exit_code == kExitOk);

  const auto doc = nlohmann::json::parse(res.envelope_json);
  for (const auto& [name, verdict] : doc["payload"]["verdicts"].items()) {
    CHECK(verdict["status"] != "fail");
  }
}

TEST_CASE("envelope structure and round-trip") {
  const RunResult res = run(small_verify_config());
  const auto doc = nlohmann::json::parse(res.envelope_json);  // must re-parse

  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["tool"]["name"] == kToolName);
  CHECK(doc["tool"]["version"] == kToolVersion);
  CHECK(doc.contains("config"));
  CHECK(doc.contains("payload"));
  CHECK(doc.contains("warnings"));
  CHECK(doc.contains("digest"));
  CHECK(doc.contains("generated_at"));
  CHECK(doc["digest"]["algorithm"] == "fnv1a-64");

  // every reported capacity carries its tolerance
  for (const char* key : {"c_gromov", "c_cube", "c_lagrangian", "a_min_orbit", "sup_chord_min", "kappa"}) {
    CHECK(doc["payload"][key].contains("value"));
    CHECK(doc["payload"][key].contains("tolerance"));
  }

  // 17-significant-digit serialization round-trips the values exactly
  CHECK(doc["payload"]["c_cube"]["value"].get<double>() == 2.0 / 3.0);
}

TEST_CASE("identical configs produce byte-identical deterministic regions") {
  const RunResult a = run(small_verify_config());
  const RunResult b = run(small_verify_config());
  CHECK(strip_timestamp(a.envelope_json) == strip_timestamp(b.envelope_json));

  const auto da = nlohmann::json::parse(a.envelope_json);
  const auto db = nlohmann::json::parse(b.envelope_json);
  CHECK(da["digest"]["value"] == db["digest"]["value"]);
}

TEST_CASE("orbits command emits the fiber table with CSV") {
  RunConfig cfg = parse_config(R"({
    "command": "orbits",
    "domain": {"builder": "ellipsoid", "axes": [1.0, 2.0]},
    "height": 20,
    "output": {"csv": true}
  })");
  const RunResult res = run(cfg);
  CHECK(res.exit_code == kExitOk);
  const auto doc = nlohmann::json::parse(res.envelope_json);
  CHECK(doc["payload"]["min_period"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(res.csv_files.size() == 1);
  CHECK(res.csv_files[0].first == "orbits.csv");
  CHECK(res.csv_files[0].second.find("period") != std::string::npos);
}

TEST_CASE("plot-data emits the boundary, marker, and chord series") {
  RunConfig cfg = parse_config(R"({
    "command": "plot-data",
    "domain": {"builder": "ellipsoid", "axes": [1.0, 2.0]},
    "grid": 10000
  })");
  const RunResult res = run(cfg);
  CHECK(res.exit_code == kExitOk);
  REQUIRE(res.csv_files.size() == 3);
  CHECK(res.csv_files[0].first == "plot_boundary.csv");
  CHECK(res.csv_files[1].first == "plot_markers.csv");
  CHECK(res.csv_files[2].first == "plot_chord_torus.csv");
  CHECK(res.csv_files[2].second.rfind("theta1,theta2,t", 0) == 0);
}

TEST_CASE("counterexample command verdicts and exit code") {
  RunConfig cfg = parse_config(R"({
    "command": "counterexample",
    "height": 30,
    "grid": 10000,
    "mono_samples": 2000
  })");
  const RunResult res = run(cfg);
  CHECK(res.exit_code == kExitOk);
  const auto doc = nlohmann::json::parse(res.envelope_json);
  CHECK(doc["payload"]["verdicts"]["counterexample_violation"]["status"] == "pass");
  const double amin = doc["payload"]["a_min_orbit"]["value"].get<double>();
  CHECK(amin > 0.09);
  CHECK(amin < 0.12);
  CHECK(doc["payload"]["diagonal_chord_period"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
}
