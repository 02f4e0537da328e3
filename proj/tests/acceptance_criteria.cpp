// Acceptance suite: one check per claim, one pass/fail line per criterion.
// Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "toricap/capacities.hpp"
#include "toricap/report.hpp"
#include "toricap/starshaped_flow.hpp"

using namespace toricap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct NamedDomain {
  std::string name;
  MomentRegion region;
  double expected_width;   // Lemma-1 value
  double expected_cube;    // Lemma-2 value
};

std::vector<NamedDomain> suite() {
  return {
      {"ball(R=1)", build_ball(2, 1.0), 1.0, 0.5},
      {"ellipsoid(1,2)", build_ellipsoid({1.0, 2.0}), 1.0, 2.0 / 3.0},
      {"concave_sqrt(c=1)", build_concave_sqrt(2, 1.0), 0.5, 0.25},
      {"convex_power(1,2)", build_convex_power(2, 1.0, 2.0), 1.0, std::pow(2.0, -0.5)},
      {"convex_power(1,4)", build_convex_power(2, 1.0, 4.0), 1.0, std::pow(2.0, -0.25)},
      {"convex_power(1,8)", build_convex_power(2, 1.0, 8.0), 1.0, std::pow(2.0, -0.125)},
  };
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// first return time of the ambient flow to {m . theta = m . theta(0) + 2 pi},
// from dense samples of the (linear-in-time) toric angle advance
double integrated_chord_return(const MomentRegion& region, const std::vector<long long>& m) {
  const StarShapedDomain dom = toric_induced(region);
  const LegendrianFiberTorus torus = legendrian_fiber(region, m, 0.0);
  const ChordRecord closed_form = min_chord_period(torus);

  const Vec z0 = ambient_point(torus.fiber.w, closed_form.start_angles);
  FlowOptions opts;
  opts.max_step = closed_form.period / 400.0;
  const Trajectory traj = integrate_flow(dom, z0, 1.25 * closed_form.period, opts);

  // unwrap phi(t) = m . theta(z(t)) along the samples
  std::vector<double> phi(traj.samples.size());
  Vec prev = angles_of(traj.samples[0].z);
  Vec unwrapped = prev;
  auto eval_phi = [&](const Vec& theta) {
    double s = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) s += static_cast<double>(m[i]) * theta[i];
    return s;
  };
  phi[0] = eval_phi(unwrapped);
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const Vec theta = angles_of(traj.samples[k].z);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      double d = theta[i] - prev[i];
      while (d > kPi) d -= kTwoPi;
      while (d < -kPi) d += kTwoPi;
      unwrapped[i] += d;
      prev[i] = theta[i];
    }
    phi[k] = eval_phi(unwrapped);
  }

  const double target = phi[0] + kTwoPi;
  for (std::size_t k = 1; k < phi.size(); ++k) {
    if (phi[k] >= target) {
      // the advance rate is constant on a fiber, so linear interpolation is
      // exact up to the integration tolerance
      const double f = (target - phi[k - 1]) / (phi[k] - phi[k - 1]);
      return traj.samples[k - 1].t + f * (traj.samples[k].t - traj.samples[k - 1].t);
    }
  }
  return -1.0;
}

Outcome criterion1_lemma1() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& d : suite()) {
    const auto start = std::chrono::steady_clock::now();
    const double width = gromov_width(d.region, 20000);
    const MinOrbit orbit = min_orbit_period(d.region, 50);
    const double elapsed = seconds_since(start);
    const double residual = std::abs(orbit.period - width);
    const double vs_expected = std::abs(width - d.expected_width);
    const bool ok = residual <= 1e-6 && vs_expected <= 1e-6 && elapsed <= 10.0;
    pass = pass && ok;
    os << (ok ? "" : " [FAIL->") << d.name << " |A_min-c_Gr|=" << residual << " t=" << elapsed << "s"
       << (ok ? "; " : "]; ");
  }
  return {pass, os.str()};
}

Outcome criterion2_lemma2() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& d : suite()) {
    const double cube = cube_capacity(d.region);
    const SupChordResult sup = sup_chord_over_fibers(d.region, 20);
    const double closed_form = min_chord_period(legendrian_fiber(d.region, {1, 1}, 0.0)).period;
    const double integrated = integrated_chord_return(d.region, {1, 1});
    const bool ok = std::abs(sup.value - cube) <= 1e-9 &&
                    sup.witness_m == std::vector<long long>{1, 1} &&
                    std::abs(cube - d.expected_cube) <= 1e-9 &&
                    integrated > 0.0 && std::abs(closed_form - integrated) <= 1e-6;
    pass = pass && ok;
    os << (ok ? "" : " [FAIL->") << d.name << " sup=" << sup.value
       << " |closed-integrated|=" << std::abs(closed_form - integrated) << (ok ? "; " : "]; ");
  }
  return {pass, os.str()};
}

Outcome criterion3_theorem_gap() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& d : suite()) {
    const double kappa = kappa_gap(d.region, 20000);
    const bool ok = kappa > 0.0;
    pass = pass && ok;
    os << d.name << " kappa=" << kappa << (ok ? "; " : " [FAIL: not positive]; ");
  }
  const double ell_kappa = kappa_gap(build_ellipsoid({1.0, 2.0}), 20000);
  const bool ell_ok = std::abs(ell_kappa - 1.0 / 3.0) <= 1e-6;
  pass = pass && ell_ok;
  os << "ellipsoid kappa-1/3=" << (ell_kappa - 1.0 / 3.0) << (ell_ok ? "" : " [FAIL]");
  return {pass, os.str()};
}

Outcome criterion4_concave_identity() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& d : {std::pair<std::string, MomentRegion>{"ball(R=1)", build_ball(2, 1.0)},
                        {"concave_sqrt(c=1)", build_concave_sqrt(2, 1.0)}}) {
    const double residual = std::abs(2.0 * cube_capacity(d.second) - gromov_width(d.second, 20000));
    const bool ok = residual <= 1e-6;
    pass = pass && ok;
    os << d.first << " |2c_cube-c_Gr|=" << residual << (ok ? "; " : " [FAIL]; ");
  }
  return {pass, os.str()};
}

Outcome criterion5_convex_ratio() {
  std::ostringstream os;
  bool pass = true;
  double prev_ratio = 0.0;
  for (double p : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const MomentRegion region = build_convex_power(2, 1.0, p);
    const double ratio = cube_capacity(region) / gromov_width(region, 20000);
    const double residual = std::abs(ratio - std::pow(2.0, -1.0 / p));
    const bool ok = residual <= 1e-6 && ratio > prev_ratio;
    pass = pass && ok;
    os << "p=" << p << " ratio=" << ratio << (ok ? "; " : " [FAIL]; ");
    prev_ratio = ratio;
  }
  os << "increasing toward 1";
  return {pass, os.str()};
}

Outcome criterion6_counterexample() {
  const MomentRegion region = build_counterexample(0.1, 200.0, 16.0);
  const MinOrbit orbit = min_orbit_period(region, 50);
  const ChordRecord chord = min_chord_period(legendrian_fiber(region, {1, 1}, 0.0));

  ReportOptions opts;
  opts.grid = 20000;
  opts.height = 50;
  opts.mono_samples = 2000;
  const CapacityReport rep = verify_paper_claims(region, opts);
  const Verdict& violation = rep.verdicts.at("counterexample_violation");

  const bool orbit_ok = orbit.period >= 0.09 && orbit.period <= 0.12;
  const bool chord_ok = std::abs(chord.period - 1.0) <= 0.05;
  const bool verdict_ok = violation.status == VerdictStatus::Pass && rep.sup_chord_min >= rep.a_min_orbit;
  std::ostringstream os;
  os << "A_min=" << orbit.period << (orbit_ok ? "" : " [FAIL: outside 0.09..0.12]")
     << " chord@(1,1)=" << chord.period << (chord_ok ? "" : " [FAIL: not within 5% of 1]")
     << " violation=" << (verdict_ok ? "true" : "FALSE [FAIL]");
  return {orbit_ok && chord_ok && verdict_ok, os.str()};
}

Outcome criterion7_flow_integrity() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream os;
  bool pass = true;

  double worst_h = 0.0, worst_lambda = 0.0;
  for (const auto& d : suite()) {
    const StarShapedDomain dom = toric_induced(d.region);
    // two starts per domain away from the axes, horizon T = 10
    for (double phi : {0.65, 1.05}) {
      const Vec w = boundary_point(d.region, {std::cos(phi), std::sin(phi)});
      const Vec z0 = ambient_point(w, {0.4, 1.7});
      const Trajectory traj = integrate_flow(dom, z0, 10.0);
      worst_h = std::max(worst_h, traj.max_h_drift);
      worst_lambda = std::max(worst_lambda, traj.max_lambda_dev);
    }
  }
  pass = pass && worst_h <= 1e-7 && worst_lambda <= 1e-7;
  os << "max|H-1|=" << worst_h << " max|lambda(R)-1|=" << worst_lambda;

  // action-period consistency on closed orbits
  struct ClosedOrbit {
    MomentRegion region;
    Vec w;
    double period;
  };
  const std::vector<ClosedOrbit> orbits = {
      {build_ball(2, 1.0), {0.5, 0.5}, 1.0},
      {build_ellipsoid({1.0, 2.0}), {2.0 / 3.0, 2.0 / 3.0}, 2.0},
      {build_ellipsoid({1.0, 2.0}), {1.0, 0.0}, 1.0},
  };
  double worst_action = 0.0;
  for (const auto& orbit : orbits) {
    const StarShapedDomain dom = toric_induced(orbit.region);
    const Vec z0 = ambient_point(orbit.w, {0.9, 0.2});
    const Trajectory traj = integrate_flow(dom, z0, orbit.period);
    const double closure = distance(traj.end(), z0);
    worst_action = std::max(worst_action, std::abs(traj.action() - orbit.period));
    pass = pass && closure <= 1e-6;
  }
  pass = pass && worst_action <= 1e-6;
  os << " max|action-T|=" << worst_action;

  const double elapsed = seconds_since(start);
  pass = pass && elapsed <= 30.0;
  os << " t=" << elapsed << "s";
  return {pass, os.str()};
}

Outcome criterion8_chord_oracle() {
  std::ostringstream os;
  bool pass = true;
  struct Case {
    std::string name;
    MomentRegion region;
    double expected;
  };
  for (const auto& c : {Case{"ball", build_ball(2, 1.0), 0.5},
                        Case{"ellipsoid", build_ellipsoid({1.0, 2.0}), 2.0 / 3.0}}) {
    const StarShapedDomain dom = toric_induced(c.region);
    const ParametrizedTorus torus = embed_fiber_torus(legendrian_fiber(c.region, {1, 1}, 0.0));
    ChordSearchOptions opts;
    opts.t_max = 1.2 * c.expected;
    opts.s_count = 16;
    opts.t_count = 600;
    const std::vector<NumericalChord> chords = find_chords(dom, torus, opts);
    const bool found = !chords.empty();
    const double err = found ? std::abs(chords.front().period - c.expected) : 1.0;
    const bool ok = found && err <= 1e-6;
    pass = pass && ok;
    os << c.name << " minimal T error=" << err << (ok ? "; " : " [FAIL]; ");
  }
  return {pass, os.str()};
}

Outcome criterion9_persistence() {
  std::ostringstream os;
  bool pass = true;

  const MomentRegion region = build_ellipsoid({1.0, 2.0});
  const StarShapedDomain base = toric_induced(region);
  const ParametrizedTorus source = embed_fiber_torus(legendrian_fiber(region, {1, 1}, 0.0));
  const double bound = 1.0 - 1.0 / 6.0;  // A_min(toric) - kappa/2

  for (double eta : {0.01, 0.02}) {
    PerturbParams pp;
    pp.seed = 20260810;
    pp.amplitude = eta;
    pp.width = 0.6;
    pp.count = 3;
    const StarShapedDomain dom = perturb(base, pp);
    const ParametrizedTorus transported = transported_legendrian(dom, source);
    const bool defect_ok = transported.legendrian_defect <= 0.1 * eta;

    ChordSearchOptions opts;
    opts.t_max = 1.0;
    opts.s_count = 24;
    opts.t_count = 600;
    const std::vector<NumericalChord> chords = find_chords(dom, transported, opts);
    const bool chord_ok = !chords.empty() && chords.front().period < bound;
    pass = pass && defect_ok && chord_ok;
    os << "eta=" << eta << " c1=" << c1_distance(base, dom, 2048)
       << " defect=" << transported.legendrian_defect << (defect_ok ? "" : " [FAIL: defect]")
       << " chords=" << chords.size();
    if (!chords.empty()) os << " minT=" << chords.front().period;
    os << (chord_ok ? "; " : " [FAIL: no chord below 5/6]; ");
  }
  return {pass, os.str()};
}

Outcome criterion10_mohnke_bound() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& d : suite()) {
    const double lag = lagrangian_capacity(d.region).value;
    double worst = 0.0;
    for (long long m1 = 1; m1 <= 10; ++m1) {
      for (long long m2 = 1; m2 <= 10; ++m2) {
        if (std::gcd(m1, m2) != 1) continue;
        const double period = min_chord_period(legendrian_fiber(d.region, {m1, m2}, 0.0)).period;
        worst = std::max(worst, period - lag);
      }
    }
    const bool ok = worst <= 1e-9;
    pass = pass && ok;
    os << d.name << " max(period-c_Lag)=" << worst << (ok ? "; " : " [FAIL]; ");
  }
  return {pass, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"criterion 1 (A_min equals the Gromov width)", criterion1_lemma1},
      {"criterion 2 (sup chord equals the cube capacity)", criterion2_lemma2},
      {"criterion 3 (positive gap, ellipsoid kappa = 1/3)", criterion3_theorem_gap},
      {"criterion 4 (concave identity 2 c_cube = c_Gr)", criterion4_concave_identity},
      {"criterion 5 (convex ratio 2^(-1/p), increasing)", criterion5_convex_ratio},
      {"criterion 6 (counterexample violates the gap)", criterion6_counterexample},
      {"criterion 7 (flow integrity over T <= 10)", criterion7_flow_integrity},
      {"criterion 8 (chord finder recovers 1/2 and 2/3)", criterion8_chord_oracle},
      {"criterion 9 (chords persist under C1 perturbation)", criterion9_persistence},
      {"criterion 10 (chord periods below c_Lag)", criterion10_mohnke_bound},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", criterion.name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
