#include "toricap/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "toricap/capacities.hpp"
#include "toricap/starshaped_flow.hpp"
#include "toricap/version.hpp"

namespace toricap {

using ordered_json = nlohmann::ordered_json;

namespace {

// --- canonical serialization ------------------------------------------------

void dump_canonical(const ordered_json& j, std::string& out, int indent) {
  const std::string pad(indent * 2, ' ');
  const std::string pad_in((indent + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += ordered_json(it.key()).dump();
        out += ": ";
        dump_canonical(it.value(), out, indent + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_canonical(j[i], out, indent + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out += format_double(v);
      } else {
        out += "null";  // JSON has no inf/nan; absent capacities serialize as null
      }
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

std::string dump_canonical(const ordered_json& j) {
  std::string out;
  dump_canonical(j, out, 0);
  out += "\n";
  return out;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- config parsing ---------------------------------------------------------

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

double get_number(const ordered_json& obj, const std::string& key, double fallback, double lo,
                  double hi, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
  const double x = v.get<double>();
  if (!(x >= lo && x <= hi)) {
    std::ostringstream os;
    os << "'" << key << "' in " << where << " out of bounds [" << lo << ", " << hi << "]";
    throw ConfigError(os.str());
  }
  return x;
}

const std::set<std::string> kCommands = {"capacities", "orbits",         "chords",   "verify",
                                         "perturb-study", "counterexample", "plot-data"};

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(doc,
                      {"command", "domain", "seed", "height", "grid", "mono_samples", "threads",
                       "tol_claim", "chords", "perturb", "output"},
                      "config");

  RunConfig cfg;
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) throw ConfigError("'command' must be a string");
    cfg.command = doc["command"].get<std::string>();
    if (!kCommands.count(cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
  }

  if (doc.contains("domain")) {
    const auto& d = doc["domain"];
    if (!d.is_object()) throw ConfigError("'domain' must be an object");
    reject_unknown_keys(d, {"builder", "params", "axes"}, "domain");
    if (d.contains("builder")) {
      if (!d["builder"].is_string()) throw ConfigError("'domain.builder' must be a string");
      cfg.domain.builder = d["builder"].get<std::string>();
    }
    if (d.contains("params")) {
      if (!d["params"].is_object()) throw ConfigError("'domain.params' must be an object");
      for (auto it = d["params"].begin(); it != d["params"].end(); ++it) {
        if (!it.value().is_number()) throw ConfigError("'domain.params' values must be numbers");
        cfg.domain.params[it.key()] = it.value().get<double>();
      }
    }
    if (d.contains("axes")) {
      if (!d["axes"].is_array()) throw ConfigError("'domain.axes' must be an array");
      for (const auto& a : d["axes"]) {
        if (!a.is_number()) throw ConfigError("'domain.axes' entries must be numbers");
        cfg.domain.axes.push_back(a.get<double>());
      }
    }
  }

  cfg.seed = static_cast<std::uint64_t>(get_number(doc, "seed", 0.0, 0.0, 1.8446744073709552e19, "config"));
  cfg.height = static_cast<int>(get_number(doc, "height", 50, 20, 200, "config"));
  cfg.grid = static_cast<int>(get_number(doc, "grid", 20000, 10000, 10000000, "config"));
  cfg.mono_samples = static_cast<int>(get_number(doc, "mono_samples", 2000, 100, 1000000, "config"));
  cfg.threads = static_cast<int>(get_number(doc, "threads", 1, 1, 256, "config"));
  cfg.tol_claim = get_number(doc, "tol_claim", 1e-6, 1e-12, 1e-2, "config");

  if (doc.contains("chords")) {
    const auto& c = doc["chords"];
    if (!c.is_object()) throw ConfigError("'chords' must be an object");
    reject_unknown_keys(c, {"m", "phase", "t_max", "s_count", "t_count", "dist_tol"}, "chords");
    if (c.contains("m")) {
      if (!c["m"].is_array()) throw ConfigError("'chords.m' must be an array of positive integers");
      cfg.chords.m.clear();
      for (const auto& e : c["m"]) {
        if (!e.is_number_integer() || e.get<long long>() < 1 || e.get<long long>() > 1000) {
          throw ConfigError("'chords.m' entries must be integers in [1, 1000]");
        }
        cfg.chords.m.push_back(e.get<long long>());
      }
    }
    cfg.chords.phase = get_number(c, "phase", 0.0, 0.0, kTwoPi, "chords");
    cfg.chords.t_max = get_number(c, "t_max", 0.0, 0.0, 100.0, "chords");
    cfg.chords.s_count = static_cast<int>(get_number(c, "s_count", 32, 8, 4096, "chords"));
    cfg.chords.t_count = static_cast<int>(get_number(c, "t_count", 800, 50, 200000, "chords"));
    cfg.chords.dist_tol = get_number(c, "dist_tol", 1e-6, 1e-12, 1e-3, "chords");
  }

  if (doc.contains("perturb")) {
    const auto& p = doc["perturb"];
    if (!p.is_object()) throw ConfigError("'perturb' must be an object");
    reject_unknown_keys(p, {"etas", "sigma", "count"}, "perturb");
    if (p.contains("etas")) {
      if (!p["etas"].is_array()) throw ConfigError("'perturb.etas' must be an array");
      cfg.perturb.etas.clear();
      for (const auto& e : p["etas"]) {
        if (!e.is_number() || e.get<double>() < 0.0 || e.get<double>() > 0.2) {
          throw ConfigError("'perturb.etas' entries must be numbers in [0, 0.2]");
        }
        cfg.perturb.etas.push_back(e.get<double>());
      }
    }
    cfg.perturb.sigma = get_number(p, "sigma", 0.6, 1e-3, 3.2, "perturb");
    cfg.perturb.count = static_cast<int>(get_number(p, "count", 3, 1, 64, "perturb"));
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (!o.is_object()) throw ConfigError("'output' must be an object");
    reject_unknown_keys(o, {"dir", "json", "csv"}, "output");
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) throw ConfigError("'output.dir' must be a string");
      cfg.output.dir = o["dir"].get<std::string>();
    }
    if (o.contains("json")) {
      if (!o["json"].is_boolean()) throw ConfigError("'output.json' must be a boolean");
      cfg.output.json = o["json"].get<bool>();
    }
    if (o.contains("csv")) {
      if (!o["csv"].is_boolean()) throw ConfigError("'output.csv' must be a boolean");
      cfg.output.csv = o["csv"].get<bool>();
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// --- payload builders -------------------------------------------------------

namespace {

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  ordered_json dom;
  dom["builder"] = cfg.domain.builder;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : cfg.domain.params) params[k] = v;
  dom["params"] = params;
  if (!cfg.domain.axes.empty()) dom["axes"] = cfg.domain.axes;
  j["domain"] = dom;
  j["seed"] = cfg.seed;
  j["height"] = cfg.height;
  j["grid"] = cfg.grid;
  j["mono_samples"] = cfg.mono_samples;
  j["threads"] = cfg.threads;
  j["tol_claim"] = cfg.tol_claim;
  ordered_json ch;
  ch["m"] = cfg.chords.m;
  ch["phase"] = cfg.chords.phase;
  ch["t_max"] = cfg.chords.t_max;
  ch["s_count"] = cfg.chords.s_count;
  ch["t_count"] = cfg.chords.t_count;
  ch["dist_tol"] = cfg.chords.dist_tol;
  j["chords"] = ch;
  ordered_json pb;
  pb["etas"] = cfg.perturb.etas;
  pb["sigma"] = cfg.perturb.sigma;
  pb["count"] = cfg.perturb.count;
  j["perturb"] = pb;
  return j;
}

ordered_json with_tolerance(double value, double tol) {
  ordered_json j;
  j["value"] = value;
  j["tolerance"] = tol;
  return j;
}

ordered_json monotonicity_json(const MonotonicityClass& mono) {
  ordered_json j;
  j["kind"] = to_string(mono.kind);
  if (mono.dynamically_convex.has_value()) j["dynamically_convex"] = *mono.dynamically_convex;
  j["witness_point"] = mono.witness_point;
  j["witness_normal"] = mono.witness_normal;
  j["samples_used"] = mono.samples_used;
  j["method"] = mono.method;
  return j;
}

ordered_json capacity_report_json(const CapacityReport& rep) {
  ordered_json j;
  j["label"] = rep.label;
  j["monotonicity"] = monotonicity_json(rep.monotonicity);
  j["c_gromov"] = with_tolerance(rep.c_gromov, 1e-9);
  j["c_cube"] = with_tolerance(rep.c_cube, kTolRoot);
  ordered_json lag = with_tolerance(rep.c_lagrangian, kTolRoot);
  lag["assumption_free"] = rep.lagrangian_assumption_free;
  j["c_lagrangian"] = lag;
  ordered_json amin = with_tolerance(rep.a_min_orbit, kTolDirection);
  amin["witness_m"] = rep.a_min_witness_m;
  amin["witness_w"] = rep.a_min_witness_w;
  j["a_min_orbit"] = amin;
  ordered_json sup = with_tolerance(rep.sup_chord_min, kTolRoot);
  sup["witness_m"] = rep.sup_witness_m;
  j["sup_chord_min"] = sup;
  j["kappa"] = with_tolerance(rep.kappa, 2e-9);
  ordered_json verdicts;
  for (const auto& [name, v] : rep.verdicts) {
    ordered_json vj;
    vj["status"] = to_string(v.status);
    vj["residual"] = v.residual;
    vj["detail"] = v.detail;
    verdicts[name] = vj;
  }
  j["verdicts"] = verdicts;
  return j;
}

ordered_json fiber_table_json(const FiberEnumeration& fibers) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : fibers.fibers) {
    ordered_json f;
    f["m"] = rec.m;
    f["w"] = rec.fiber.w;
    f["nu_tilde"] = rec.fiber.nu_tilde;
    f["period"] = rec.period;
    f["kind"] = rec.kind;
    if (rec.family_hi > rec.family_lo) {
      f["family_angle_lo"] = rec.family_lo;
      f["family_angle_hi"] = rec.family_hi;
    }
    arr.push_back(f);
  }
  ordered_json j;
  j["fibers"] = arr;
  ordered_json skipped = ordered_json::array();
  for (const auto& s : fibers.skipped) {
    ordered_json e;
    e["m"] = s.m;
    e["reason"] = s.reason;
    skipped.push_back(e);
  }
  j["skipped"] = skipped;
  return j;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,x1,y1,x2,y2,H,lambdaR\n";
  for (const auto& s : traj.samples) {
    os << format_double(s.t);
    for (double x : s.z) os << "," << format_double(x);
    os << "," << format_double(s.h) << "," << format_double(s.lambda_r) << "\n";
  }
  return os.str();
}

std::string torus_polyline_csv(const ChordRecord& chord, const std::vector<long long>& m, int samples) {
  // flat-torus chord polyline: the linear flow in angle coordinates
  std::ostringstream os;
  os << "theta1,theta2,t\n";
  for (int i = 0; i <= samples; ++i) {
    const double f = static_cast<double>(i) / samples;
    const double t = f * chord.period;
    os << format_double(chord.start_angles[0] + f * (chord.end_angles[0] - chord.start_angles[0]));
    os << "," << format_double(chord.start_angles[1] + f * (chord.end_angles[1] - chord.start_angles[1]));
    os << "," << format_double(t) << "\n";
  }
  (void)m;
  return os.str();
}

ordered_json chord_json(const NumericalChord& c) {
  ordered_json j;
  j["period"] = with_tolerance(c.period, 1e-6);
  j["s_start"] = c.s_start;
  j["start"] = c.start;
  j["end"] = c.end;
  j["genuine"] = c.genuine;
  j["endpoint_distance"] = c.endpoint_distance;
  j["max_h_drift"] = c.max_h_drift;
  j["legendrian_defect"] = c.legendrian_defect;
  return j;
}

struct CommandOutcome {
  ordered_json payload;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> csv_files;
  int exit_code = kExitOk;
};

double auto_t_max(const MomentRegion& region, const RunConfig& cfg) {
  if (cfg.chords.t_max > 0.0) return cfg.chords.t_max;
  // at least twice the Gromov-width estimate, per the search contract
  return 2.2 * gromov_width(region, cfg.grid);
}

CommandOutcome run_capacities(const MomentRegion& region, const RunConfig& cfg, bool as_verify) {
  ReportOptions opts;
  opts.grid = cfg.grid;
  opts.height = cfg.height;
  opts.mono_samples = cfg.mono_samples;
  opts.threads = cfg.threads;
  opts.tol_claim = cfg.tol_claim;
  const CapacityReport rep = verify_paper_claims(region, opts);

  CommandOutcome out;
  out.payload = capacity_report_json(rep);
  out.warnings = rep.warnings;
  if (as_verify && failed_verdicts(rep) > 0) out.exit_code = kExitVerdictFailure;
  return out;
}

CommandOutcome run_orbits(const MomentRegion& region, const RunConfig& cfg) {
  EnumOptions opts;
  opts.height = cfg.height;
  opts.threads = cfg.threads;
  const FiberEnumeration fibers = enumerate_rational_fibers(region, opts);
  CommandOutcome out;
  out.payload = fiber_table_json(fibers);
  double min_period = std::numeric_limits<double>::infinity();
  for (const auto& f : fibers.fibers) min_period = std::min(min_period, f.period);
  out.payload["min_period"] = min_period;

  if (cfg.output.csv) {
    std::ostringstream os;
    os << "m1..mn,w1..wn,period,kind\n";
    for (const auto& f : fibers.fibers) {
      for (std::size_t i = 0; i < f.m.size(); ++i) os << (i ? ";" : "") << f.m[i];
      os << ",";
      for (std::size_t i = 0; i < f.fiber.w.size(); ++i) os << (i ? ";" : "") << format_double(f.fiber.w[i]);
      os << "," << format_double(f.period) << "," << f.kind << "\n";
    }
    out.csv_files.emplace_back("orbits.csv", os.str());
  }
  return out;
}

CommandOutcome run_chords(const MomentRegion& region, const RunConfig& cfg) {
  if (region.dim != 2) throw NumericalError("chords: ambient chord search is restricted to dim 4");
  CommandOutcome out;

  const LegendrianFiberTorus torus = legendrian_fiber(region, cfg.chords.m, cfg.chords.phase);
  const ChordRecord closed_form = min_chord_period(torus);

  ordered_json cf;
  cf["m"] = torus.m;
  cf["phase"] = torus.phase;
  cf["scale"] = torus.scale;
  cf["period"] = with_tolerance(closed_form.period, 1e-12);
  cf["genuine"] = closed_form.genuine;
  cf["residual"] = closed_form.residual;
  cf["start_angles"] = closed_form.start_angles;
  cf["end_angles"] = closed_form.end_angles;
  out.payload["closed_form"] = cf;

  const StarShapedDomain dom = toric_induced(region);
  const ParametrizedTorus embedded = embed_fiber_torus(torus);
  ChordSearchOptions search;
  search.t_max = auto_t_max(region, cfg);
  search.s_count = cfg.chords.s_count;
  search.t_count = cfg.chords.t_count;
  search.dist_tol = cfg.chords.dist_tol;
  search.threads = cfg.threads;
  const std::vector<NumericalChord> chords = find_chords(dom, embedded, search);

  ordered_json arr = ordered_json::array();
  for (const auto& c : chords) arr.push_back(chord_json(c));
  out.payload["ambient_chords"] = arr;
  out.payload["t_max"] = search.t_max;
  if (chords.empty()) {
    out.warnings.push_back("no chord found up to t_max; this is not a proof of absence");
  }

  if (cfg.output.csv) {
    out.csv_files.emplace_back("chord_torus.csv", torus_polyline_csv(closed_form, torus.m, 256));
    if (!chords.empty()) {
      const Trajectory traj = integrate_flow(dom, chords.front().start, chords.front().period);
      out.csv_files.emplace_back("chord_trajectory.csv", trajectory_csv(traj));
    }
  }
  return out;
}

CommandOutcome run_perturb_study(const MomentRegion& region, const RunConfig& cfg) {
  if (region.dim != 2) throw NumericalError("perturb-study: restricted to dim 4");
  CommandOutcome out;

  const StarShapedDomain base = toric_induced(region);
  const LegendrianFiberTorus torus = legendrian_fiber(region, cfg.chords.m, cfg.chords.phase);
  const ParametrizedTorus source = embed_fiber_torus(torus);
  const double reference_period = min_chord_period(torus).period;
  out.payload["reference_period"] = reference_period;

  ordered_json studies = ordered_json::array();
  for (double eta : cfg.perturb.etas) {
    PerturbParams pp;
    pp.seed = cfg.seed;
    pp.amplitude = eta;
    pp.width = cfg.perturb.sigma;
    pp.count = cfg.perturb.count;
    const StarShapedDomain dom = perturb(base, pp);
    const ParametrizedTorus transported = transported_legendrian(dom, source);

    ordered_json entry;
    entry["eta"] = eta;
    entry["c1_distance"] = c1_distance(base, dom, 4096);
    entry["legendrian_defect"] = transported.legendrian_defect;

    ChordSearchOptions search;
    search.t_max = cfg.chords.t_max > 0.0 ? cfg.chords.t_max : 2.2 * reference_period;
    search.s_count = cfg.chords.s_count;
    search.t_count = cfg.chords.t_count;
    search.dist_tol = cfg.chords.dist_tol;
    search.threads = cfg.threads;
    const std::vector<NumericalChord> chords = find_chords(dom, transported, search);
    ordered_json arr = ordered_json::array();
    for (const auto& c : chords) arr.push_back(chord_json(c));
    entry["chords"] = arr;
    entry["chord_count"] = chords.size();
    if (!chords.empty()) entry["min_chord_period"] = chords.front().period;
    studies.push_back(entry);
    if (chords.empty()) {
      std::ostringstream os;
      os << "eta=" << eta << ": no chord found up to t_max; not a proof of absence";
      out.warnings.push_back(os.str());
    }
  }
  out.payload["studies"] = studies;
  return out;
}

CommandOutcome run_plot_data(const MomentRegion& region, const RunConfig& cfg) {
  if (region.dim != 2) throw NumericalError("plot-data: moment-image plots are 2-D");
  CommandOutcome out;

  // moment-image boundary polyline with the inscribed simplex and cube
  const int samples = 512;
  std::ostringstream boundary;
  boundary << "w1,w2\n";
  for (int i = 0; i < samples; ++i) {
    const double phi = (kPi / 2.0) * i / (samples - 1);
    const Vec w = boundary_point(region, {std::cos(phi), std::sin(phi)});
    boundary << format_double(w[0]) << "," << format_double(w[1]) << "\n";
  }
  out.csv_files.emplace_back("plot_boundary.csv", boundary.str());

  const double cube = cube_capacity(region);
  const double simplex = gromov_width(region, cfg.grid);
  std::ostringstream markers;
  markers << "kind,w1,w2\n";
  markers << "cube_corner," << format_double(cube) << "," << format_double(cube) << "\n";
  markers << "simplex_vertex_1," << format_double(simplex) << ",0\n";
  markers << "simplex_vertex_2,0," << format_double(simplex) << "\n";
  out.csv_files.emplace_back("plot_markers.csv", markers.str());

  const LegendrianFiberTorus torus = legendrian_fiber(region, cfg.chords.m, cfg.chords.phase);
  const ChordRecord chord = min_chord_period(torus);
  out.csv_files.emplace_back("plot_chord_torus.csv", torus_polyline_csv(chord, torus.m, 256));

  out.payload["files"] = ordered_json::array({"plot_boundary.csv", "plot_markers.csv", "plot_chord_torus.csv"});
  out.payload["c_cube"] = cube;
  out.payload["c_gromov"] = simplex;
  return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  ordered_json payload;
  CommandOutcome outcome;

  try {
    if (config.command.empty()) throw ConfigError("no command given");
    if (!kCommands.count(config.command)) throw ConfigError("unknown command '" + config.command + "'");

    MomentRegion region;
    if (config.command == "counterexample") {
      // the builder is forced; epsilon/beta/q come from domain.params
      region = build_from_name("counterexample", config.domain.params, {});
    } else {
      region = build_from_name(config.domain.builder, config.domain.params, config.domain.axes);
    }

    if (config.command == "capacities") {
      outcome = run_capacities(region, config, /*as_verify=*/false);
    } else if (config.command == "verify") {
      outcome = run_capacities(region, config, /*as_verify=*/true);
    } else if (config.command == "counterexample") {
      outcome = run_capacities(region, config, /*as_verify=*/true);
      // the chord at the fiber over the diagonal point of the simplex edge
      const LegendrianFiberTorus torus = legendrian_fiber(region, {1, 1}, 0.0);
      outcome.payload["diagonal_chord_period"] = min_chord_period(torus).period;
    } else if (config.command == "orbits") {
      outcome = run_orbits(region, config);
    } else if (config.command == "chords") {
      outcome = run_chords(region, config);
    } else if (config.command == "perturb-study") {
      outcome = run_perturb_study(region, config);
    } else if (config.command == "plot-data") {
      outcome = run_plot_data(region, config);
    }
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfigError;
    result.warnings.push_back(e.what());
    return result;
  } catch (const std::invalid_argument& e) {
    result.exit_code = kExitConfigError;
    result.warnings.push_back(e.what());
    return result;
  } catch (const std::exception& e) {
    result.exit_code = kExitNumericalFailure;
    result.warnings.push_back(e.what());
    return result;
  }

  // deterministic region of the envelope: everything except the timestamp
  ordered_json deterministic;
  deterministic["schema_version"] = kSchemaVersion;
  ordered_json tool;
  tool["name"] = kToolName;
  tool["version"] = kToolVersion;
  deterministic["tool"] = tool;
  deterministic["config"] = config_echo(config);
  deterministic["payload"] = outcome.payload;
  deterministic["warnings"] = outcome.warnings;

  const std::string canonical = dump_canonical(deterministic);
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));

  ordered_json envelope = deterministic;
  ordered_json dg;
  dg["algorithm"] = "fnv1a-64";
  dg["value"] = std::string(digest);
  dg["region"] = "schema_version,tool,config,payload,warnings";
  envelope["digest"] = dg;
  envelope["generated_at"] = iso_timestamp();

  result.exit_code = outcome.exit_code;
  result.envelope_json = dump_canonical(envelope);
  result.csv_files = std::move(outcome.csv_files);
  result.warnings = outcome.warnings;
  return result;
}

void write_outputs(const RunConfig& config, const RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output.dir);
  fs::create_directories(dir);
  if (config.output.json && !result.envelope_json.empty()) {
    std::ofstream out(dir / (config.command + "_report.json"));
    out << result.envelope_json;
  }
  for (const auto& [name, contents] : result.csv_files) {
    std::ofstream out(dir / name);
    out << contents;
  }
}

}  // namespace toricap
