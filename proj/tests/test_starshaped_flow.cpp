#include <doctest.h>

#include <cmath>

#include "toricap/capacities.hpp"
#include "toricap/starshaped_flow.hpp"

using namespace toricap;

namespace {

Vec fiber_start(const MomentRegion& region, const Vec& w_dir, double theta1, double theta2) {
  const Vec w = boundary_point(region, normalized(w_dir));
  return ambient_point(w, {theta1, theta2});
}

}  // namespace

TEST_CASE("lambda_eval closed forms") {
  // unit circle generator
  CHECK(lambda_eval({1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}) == doctest::Approx(0.5));
  // radial directions are in the kernel
  const Vec z = {0.3, -0.7, 1.1, 0.2};
  CHECK(lambda_eval(z, z) == 0.0);
  // mixed example by direct substitution
  CHECK(lambda_eval({0.0, 1.0, 1.0, 0.0}, {-kTwoPi, 0.0, 0.0, kTwoPi}) == doctest::Approx(kTwoPi));
}

TEST_CASE("toric-induced domains agree with the moment-region model") {
  const std::vector<MomentRegion> suite = {build_ball(2, 1.0), build_ellipsoid({1.0, 2.0}),
                                           build_convex_power(2, 1.0, 4.0)};
  for (const auto& region : suite) {
    const StarShapedDomain dom = toric_induced(region);
    for (int k = 0; k < 40; ++k) {
      const double phi = 0.05 + (kPi / 2.0 - 0.1) * halton(k, 2);
      const Vec w = boundary_point(region, {std::cos(phi), std::sin(phi)});
      const Vec z = ambient_point(w, {0.7, 1.9});
      CHECK(std::abs(surface_value(dom, z) - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("from_radial_function matches the analytic ball model") {
  const double r0 = 1.0 / std::sqrt(kPi);
  const StarShapedDomain plain = from_radial_function(2, [r0](const Vec&) { return r0; }, "round ball");
  const StarShapedDomain analytic = toric_induced(build_ball(2, 1.0));
  CHECK(c1_distance(plain, analytic, 256) <= 1e-9);

  // an anisotropic radial profile: finite-difference gradients good enough
  // for the flow invariants
  auto rho = [r0](const Vec& u) { return r0 * (1.0 + 0.05 * u[0] * u[0]); };
  const StarShapedDomain dom = from_radial_function(2, rho, "squashed ball");
  GaussianSampler sphere(17);
  const Vec u = sphere.unit_vector(4);
  const Vec z = scaled(u, dom.rho(u));
  CHECK(std::abs(surface_value(dom, z) - 1.0) <= 1e-12);
  const Vec R = reeb_field(dom, z);
  CHECK(std::abs(lambda_eval(z, R) - 1.0) <= 1e-8);
}

TEST_CASE("reeb_field: Hopf flow on the round ball") {
  const StarShapedDomain ball = toric_induced(build_ball(2, 1.0));
  const double r = 1.0 / std::sqrt(kPi);
  const Vec z = {r, 0.0, 0.0, 0.0};
  const Vec R = reeb_field(ball, z);
  CHECK(R[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(R[1] == doctest::Approx(kTwoPi * r).epsilon(1e-10));
  CHECK(R[2] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(R[3] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(lambda_eval(z, R) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("reeb_field angular velocity matches the toric closed form") {
  const MomentRegion region = build_ellipsoid({1.0, 2.0});
  const StarShapedDomain dom = toric_induced(region);
  const TorusFiber fiber = make_fiber(region, {2.0 / 3.0, 2.0 / 3.0});
  const Vec omega = reeb_angular_velocity(fiber);

  const Vec z = ambient_point(fiber.w, {0.4, 2.1});
  const Vec R = reeb_field(dom, z);
  // theta_dot_k = (x v_y - y v_x) / r^2 per factor
  for (int k = 0; k < 2; ++k) {
    const double r2 = z[2 * k] * z[2 * k] + z[2 * k + 1] * z[2 * k + 1];
    const double theta_dot = (z[2 * k] * R[2 * k + 1] - z[2 * k + 1] * R[2 * k]) / r2;
    CHECK(std::abs(theta_dot - omega[k]) <= 1e-8);
  }
  CHECK(std::abs(lambda_eval(z, R) - 1.0) <= 1e-8);
}

TEST_CASE("surface_gradient agrees with central differences") {
  const std::vector<StarShapedDomain> doms = {
      toric_induced(build_ellipsoid({1.0, 2.0})),
      perturb(toric_induced(build_ellipsoid({1.0, 2.0})), {.seed = 11, .amplitude = 0.02, .width = 0.7, .count = 3}),
  };
  for (const auto& dom : doms) {
    GaussianSampler sphere(3);
    int checked = 0;
    while (checked < 100) {
      const Vec u = sphere.unit_vector(4);
      const Vec z = scaled(u, dom.rho(u));  // on the surface
      const Vec grad = surface_gradient(dom, z);
      const double h = 1e-6;
      for (int i = 0; i < 4; ++i) {
        Vec zp = z, zm = z;
        zp[i] += h;
        zm[i] -= h;
        const double fd = (surface_value(dom, zp) - surface_value(dom, zm)) / (2.0 * h);
        CHECK(std::abs(fd - grad[i]) <= 1e-5 * std::max(1.0, std::abs(grad[i])));
      }
      ++checked;
    }
  }
}

TEST_CASE("integrate_flow: closed orbits of the toric builders") {
  // every Hopf orbit of the ball closes at t = 1
  const StarShapedDomain ball = toric_induced(build_ball(2, 1.0));
  const Vec z_ball = fiber_start(build_ball(2, 1.0), {1.0, 1.0}, 0.3, 1.2);
  const Trajectory t_ball = integrate_flow(ball, z_ball, 1.0);
  CHECK(distance(t_ball.end(), z_ball) <= 1e-8);

  const MomentRegion ell_region = build_ellipsoid({1.0, 2.0});
  const StarShapedDomain ell = toric_induced(ell_region);
  // axis orbit over (1, 0) closes at t = 1
  const Vec z_axis = ambient_point({1.0, 0.0}, {0.0, 0.0});
  const Trajectory t_axis = integrate_flow(ell, z_axis, 1.0);
  CHECK(distance(t_axis.end(), z_axis) <= 1e-7);
  // the interior family over (2/3, 2/3) closes at t = 2
  const Vec z_int = fiber_start(ell_region, {1.0, 1.0}, 0.9, 0.1);
  const Trajectory t_int = integrate_flow(ell, z_int, 2.0);
  CHECK(distance(t_int.end(), z_int) <= 1e-7);
}

TEST_CASE("integrate_flow keeps the surface and normalization invariants") {
  const std::vector<MomentRegion> suite = {build_ball(2, 1.0), build_ellipsoid({1.0, 2.0}),
                                           build_convex_power(2, 1.0, 4.0)};
  for (const auto& region : suite) {
    const StarShapedDomain dom = toric_induced(region);
    const Vec z0 = fiber_start(region, {1.0, 1.3}, 0.8, 2.5);
    const Trajectory traj = integrate_flow(dom, z0, 10.0);
    CHECK(traj.max_h_drift <= 1e-7);
    CHECK(traj.max_lambda_dev <= 1e-7);
    CHECK(traj.steps > 0);
    CHECK(traj.projections == 0);
  }
}

TEST_CASE("integrate_flow action equals elapsed time on closed orbits") {
  const StarShapedDomain ball = toric_induced(build_ball(2, 1.0));
  const Vec z0 = fiber_start(build_ball(2, 1.0), {1.0, 1.0}, 0.0, 0.0);
  const Trajectory traj = integrate_flow(ball, z0, 1.0);
  CHECK(std::abs(traj.action() - 1.0) <= 1e-6);
}

TEST_CASE("integrate_flow optional projection stays on the surface") {
  const StarShapedDomain dom = toric_induced(build_ellipsoid({1.0, 2.0}));
  const Vec z0 = fiber_start(build_ellipsoid({1.0, 2.0}), {1.0, 1.0}, 0.0, 0.0);
  FlowOptions opts;
  opts.project = true;
  const Trajectory traj = integrate_flow(dom, z0, 5.0, opts);
  CHECK(traj.max_h_drift <= 1e-9);
  CHECK(traj.max_projection_shift <= 1e-9);
}

TEST_CASE("integrate_flow rejects off-surface starts") {
  const StarShapedDomain dom = toric_induced(build_ball(2, 1.0));
  CHECK_THROWS_AS(integrate_flow(dom, {0.1, 0.0, 0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("embed_fiber_torus is exactly Legendrian") {
  const MomentRegion ell = build_ellipsoid({1.0, 2.0});
  for (auto m : {std::vector<long long>{1, 1}, std::vector<long long>{2, 3}}) {
    const ParametrizedTorus torus = embed_fiber_torus(legendrian_fiber(ell, m, 0.7));
    for (int i = 0; i < 64; ++i) {
      const double s = kTwoPi * i / 64;
      const Vec z = torus.point(s);
      const Vec v = torus.velocity(s);
      CHECK(std::abs(lambda_eval(z, v)) <= 1e-14 * norm(z) * norm(v) + 1e-16);
      CHECK(std::abs(ell.g(moment_of(z))) <= 1e-9);
    }
  }
}

TEST_CASE("transported tori keep zero Legendrian defect under radial transport") {
  // radial scaling maps ker(lambda) to itself, so the transported torus is
  // exactly Legendrian for every amplitude; the measured defect only
  // reports round-off
  const MomentRegion ell = build_ellipsoid({1.0, 2.0});
  const StarShapedDomain base = toric_induced(ell);
  const ParametrizedTorus source = embed_fiber_torus(legendrian_fiber(ell, {1, 1}, 0.0));

  const ParametrizedTorus same = transported_legendrian(base, source);
  CHECK(same.legendrian_defect <= 1e-10);

  for (double eta : {0.01, 0.02, 0.05}) {
    const StarShapedDomain dom = perturb(base, {.seed = 5, .amplitude = eta, .width = 0.6, .count = 3});
    const ParametrizedTorus moved = transported_legendrian(dom, source);
    CHECK(moved.legendrian_defect <= 1e-10);
    // and the image sits on the perturbed boundary
    for (int i = 0; i < 32; ++i) {
      const Vec z = moved.point(kTwoPi * i / 32);
      CHECK(std::abs(surface_value(dom, z) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("c1_distance: zero, dilation, and bump scaling") {
  const StarShapedDomain ball = toric_induced(build_ball(2, 1.0));
  CHECK(c1_distance(ball, ball, 256) == 0.0);

  // dilation of a round ball: constant rho difference, no gradient term
  const StarShapedDomain bigger = toric_induced(build_ball(2, 1.21));
  const double rho0 = 1.0 / std::sqrt(kPi);
  CHECK(c1_distance(ball, bigger, 256) == doctest::Approx(0.1 * rho0).epsilon(1e-6));

  // the bump construction is exactly linear in eta
  const double d1 = c1_distance(ball, perturb(ball, {.seed = 9, .amplitude = 0.01, .width = 0.5, .count = 3}), 1024);
  const double d2 = c1_distance(ball, perturb(ball, {.seed = 9, .amplitude = 0.02, .width = 0.5, .count = 3}), 1024);
  CHECK(d1 > 0.0);
  CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("perturb is deterministic in the seed and validates parameters") {
  const StarShapedDomain base = toric_induced(build_ellipsoid({1.0, 2.0}));
  const StarShapedDomain a = perturb(base, {.seed = 123, .amplitude = 0.01, .width = 0.5, .count = 3});
  const StarShapedDomain b = perturb(base, {.seed = 123, .amplitude = 0.01, .width = 0.5, .count = 3});
  const StarShapedDomain c = perturb(base, {.seed = 124, .amplitude = 0.01, .width = 0.5, .count = 3});
  CHECK(c1_distance(a, b, 256) == 0.0);
  CHECK(c1_distance(a, c, 256) > 0.0);

  const StarShapedDomain identity = perturb(base, {.seed = 1, .amplitude = 0.0, .width = 0.5, .count = 3});
  CHECK(c1_distance(base, identity, 256) == 0.0);

  CHECK_THROWS_AS(perturb(base, {.seed = 1, .amplitude = -0.1, .width = 0.5, .count = 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturb(base, {.seed = 1, .amplitude = 0.1, .width = 0.0, .count = 3}),
                  std::invalid_argument);
}

TEST_CASE("find_chords recovers the closed-form minimal chords") {
  struct Case {
    MomentRegion region;
    double expected;
  };
  const std::vector<Case> cases = {
      {build_ball(2, 1.0), 0.5},
      {build_ellipsoid({1.0, 2.0}), 2.0 / 3.0},
  };
  for (const auto& c : cases) {
    const StarShapedDomain dom = toric_induced(c.region);
    const ParametrizedTorus torus = embed_fiber_torus(legendrian_fiber(c.region, {1, 1}, 0.0));
    ChordSearchOptions opts;
    opts.t_max = 1.1 * c.expected;
    opts.s_count = 12;
    opts.t_count = 400;
    const std::vector<NumericalChord> chords = find_chords(dom, torus, opts);
    REQUIRE_FALSE(chords.empty());
    CHECK(std::abs(chords.front().period - c.expected) <= 1e-6);
    CHECK(chords.front().genuine);
    CHECK(chords.front().endpoint_distance <= 1e-6);
  }
}

TEST_CASE("integrated fiber trajectories match the linear angle flow") {
  const MomentRegion region = build_ellipsoid({1.0, 2.0});
  const StarShapedDomain dom = toric_induced(region);
  const TorusFiber fiber = make_fiber(region, {2.0 / 3.0, 2.0 / 3.0});
  const Vec omega = reeb_angular_velocity(fiber);

  const Vec theta0 = {0.8, 2.4};
  const Vec z0 = ambient_point(fiber.w, theta0);
  const double period = 2.0;  // the interior family closes at t = 2
  const Trajectory traj = integrate_flow(dom, z0, period);
  const Vec theta_end = angles_of(traj.end());
  for (int i = 0; i < 2; ++i) {
    const double expected = theta0[i] + period * omega[i];
    CHECK(wrap_distance(theta_end[i] - expected, kTwoPi) <= 1e-6);
  }
}

TEST_CASE("find_chords is deterministic across thread counts") {
  const MomentRegion region = build_ball(2, 1.0);
  const StarShapedDomain dom = toric_induced(region);
  const ParametrizedTorus torus = embed_fiber_torus(legendrian_fiber(region, {1, 1}, 0.0));
  ChordSearchOptions opts;
  opts.t_max = 0.55;
  opts.s_count = 8;
  opts.t_count = 300;
  opts.threads = 1;
  const auto a = find_chords(dom, torus, opts);
  opts.threads = 4;
  const auto b = find_chords(dom, torus, opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].period == b[i].period);
    CHECK(a[i].s_start == b[i].s_start);
  }
}

TEST_CASE("find_chords rejects unsupported dimensions") {
  const StarShapedDomain dom = toric_induced(build_ball(3, 1.0));
  ParametrizedTorus dummy;
  dummy.point = [](double) { return Vec{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}; };
  dummy.velocity = [](double) { return Vec{0.0, 1.0, 0.0, 0.0, 0.0, 0.0}; };
  CHECK_THROWS_AS(find_chords(dom, dummy, {}), std::invalid_argument);
}
