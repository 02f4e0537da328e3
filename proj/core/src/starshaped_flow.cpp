#include "toricap/starshaped_flow.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace toricap {

namespace {

Vec tangential_part(const Vec& v, const Vec& u) {
  const double c = dot(v, u);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - c * u[i];
  return out;
}

void sample_rho_range(StarShapedDomain& dom) {
  GaussianSampler sphere(0x5eedu);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 0; k < 512; ++k) {
    const Vec u = sphere.unit_vector(2 * dom.n);
    const double r = dom.rho(u);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  dom.rho_min = lo;
  dom.rho_max = hi;
  if (!(lo > 0.0)) throw NumericalError("star-shaped domain: radial function is not positive");
}

}  // namespace

Vec moment_of(const Vec& z) {
  Vec w(z.size() / 2);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = kPi * (z[2 * k] * z[2 * k] + z[2 * k + 1] * z[2 * k + 1]);
  return w;
}

Vec angles_of(const Vec& z) {
  Vec theta(z.size() / 2);
  for (std::size_t k = 0; k < theta.size(); ++k) theta[k] = std::atan2(z[2 * k + 1], z[2 * k]);
  return theta;
}

Vec ambient_point(const Vec& w, const Vec& theta) {
  Vec z(2 * w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double r = std::sqrt(std::max(w[k], 0.0) / kPi);
    z[2 * k] = r * std::cos(theta[k]);
    z[2 * k + 1] = r * std::sin(theta[k]);
  }
  return z;
}

StarShapedDomain toric_induced(const MomentRegion& region) {
  const int n = region.dim;
  StarShapedDomain dom;
  dom.n = n;

  // F(z) = G(mu(z)); the radial scale t(u) solves F(t u) = 0 and
  // grad_S rho = -rho P_perp grad F / (grad F . u)
  auto grad_f = [region](const Vec& z) {
    const Vec w = moment_of(z);
    const Vec g = region.grad(w);
    Vec out(z.size());
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
      double gk = g[k];
      if (!std::isfinite(gk)) gk = 0.0;  // axis coordinates contribute nothing
      out[2 * k] = kTwoPi * gk * z[2 * k];
      out[2 * k + 1] = kTwoPi * gk * z[2 * k + 1];
    }
    return out;
  };

  // The radial solve runs well below kTolRoot so that |H - 1| drift keeps
  // real resolution; a solve accepted at the boundary tolerance would read
  // as exactly zero drift along every trajectory.
  constexpr double radial_tol = 1e-14;
  dom.rho_full = [region, grad_f, n](const Vec& u, double hint) {
    const Vec mu = moment_of(u);
    auto g_of = [&](double t) { return region.g(scaled(mu, t * t)); };
    auto dg_of = [&](double t) { return dot(region.grad(scaled(mu, t * t)), scaled(mu, 2.0 * t)); };

    double t_exit = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (mu[k] > 0.0) t_exit = std::min(t_exit, std::sqrt(region.bounding_box[k] / mu[k]));
    }

    double t = 0.0;
    bool solved = false;
    // Newton from the hint; the flow stays near H = 1, so |z| is an
    // excellent guess. Safeguarded by bisection on failure.
    if (hint > 0.0 && hint < t_exit * 1.5) {
      double x = hint;
      double fx = g_of(x);
      for (int it = 0; it < 60 && std::isfinite(fx); ++it) {
        if (std::abs(fx) <= radial_tol) {
          solved = true;
          break;
        }
        const double d = dg_of(x);
        if (!(std::isfinite(d)) || d == 0.0) break;
        const double next = x - fx / d;
        if (!(next > 0.0) || next > t_exit * 1.4) break;
        const double fnext = g_of(next);
        if (!(std::abs(fnext) < std::abs(fx))) {
          // stalled at the round-off floor of G; accept it
          solved = std::abs(fx) <= kTolRoot;
          break;
        }
        x = next;
        fx = fnext;
      }
      if (solved) t = x;
    }
    if (!solved) {
      double hi = t_exit * 1.0009765625;
      double fhi = g_of(hi);
      int grow = 0;
      while (fhi <= 0.0 && grow < 8) {
        hi *= 1.5;
        fhi = g_of(hi);
        ++grow;
      }
      if (fhi <= 0.0) throw NumericalError("toric_induced: radial bracketing failed");
      std::function<double(double)> f = g_of;
      std::function<double(double)> df = dg_of;
      const RootResult root = refine_root(f, 0.0, hi, radial_tol, &df);
      if (std::abs(root.f) > kTolRoot) throw NumericalError("toric_induced: radial solve did not converge");
      t = root.x;
    }

    RhoEval out;
    out.value = t;
    const Vec z = scaled(u, t);
    const Vec gf = grad_f(z);
    const double denom = dot(gf, u);
    if (!(std::abs(denom) > 1e-300)) throw NumericalError("toric_induced: degenerate radial derivative");
    out.sphere_grad = scaled(tangential_part(gf, u), -t / denom);
    return out;
  };

  dom.label = "toric(" + region.label + ")";
  sample_rho_range(dom);
  return dom;
}

StarShapedDomain from_radial_function(int n, std::function<double(const Vec&)> rho,
                                      const std::string& label) {
  if (n < 1) throw std::invalid_argument("from_radial_function: n must be >= 1");
  StarShapedDomain dom;
  dom.n = n;
  dom.rho_full = [rho](const Vec& u, double /*hint*/) {
    RhoEval out;
    out.value = rho(u);
    const double h = 1e-6;
    out.sphere_grad.assign(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      Vec up = u, um = u;
      up[i] += h;
      um[i] -= h;
      // rho extended 0-homogeneously off the sphere, so the difference
      // quotient is automatically tangential up to O(h^2)
      out.sphere_grad[i] = (rho(normalized(up)) - rho(normalized(um))) / (2.0 * h);
    }
    // project out the residual radial component
    out.sphere_grad = tangential_part(out.sphere_grad, normalized(u));
    return out;
  };
  dom.label = label;
  sample_rho_range(dom);
  return dom;
}

StarShapedDomain perturb(const StarShapedDomain& base, const PerturbParams& params) {
  if (params.amplitude < 0.0) throw std::invalid_argument("perturb: amplitude must be >= 0");
  if (!(params.width > 0.0)) throw std::invalid_argument("perturb: width must be positive");
  if (params.count < 1) throw std::invalid_argument("perturb: count must be >= 1");

  const int dim = 2 * base.n;
  GaussianSampler sampler(params.seed);
  std::vector<Vec> centers;
  centers.reserve(params.count);
  for (int j = 0; j < params.count; ++j) centers.push_back(sampler.unit_vector(dim));

  const double eta = params.amplitude;
  const double sigma = params.width;

  // compactly supported mollifier profile, phi(0) = 1, smooth at the rim
  auto profile = [](double t) { return t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0; };
  auto profile_deriv = [profile](double t) {
    if (t >= 1.0) return 0.0;
    const double d = 1.0 - t * t;
    return profile(t) * (-2.0 * t / (d * d));
  };

  auto base_rho = base.rho_full;
  StarShapedDomain dom;
  dom.n = base.n;
  dom.rho_full = [base_rho, centers, eta, sigma, profile, profile_deriv](const Vec& u, double hint) {
    RhoEval b = base_rho(u, hint);  // hint is in ambient scale; close enough for the base solve
    double bump = 0.0;
    Vec bump_grad(u.size(), 0.0);
    for (const auto& c : centers) {
      const double cosd = std::clamp(dot(u, c), -1.0, 1.0);
      const double d = std::acos(cosd);
      const double t = d / sigma;
      if (t >= 1.0) continue;
      bump += profile(t);
      const double sind = std::sqrt(std::max(1.0 - cosd * cosd, 0.0));
      if (sind < 1e-12) continue;  // at the center the gradient vanishes with the profile slope
      // grad_S of the geodesic distance to c is -(c - (u.c) u) / sin d
      const Vec tang = tangential_part(c, u);
      const double coef = profile_deriv(t) / (sigma * sind) * -1.0;
      for (std::size_t i = 0; i < u.size(); ++i) bump_grad[i] += coef * tang[i];
    }
    RhoEval out;
    const double factor = 1.0 + eta * bump;
    out.value = b.value * factor;
    out.sphere_grad.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      out.sphere_grad[i] = b.sphere_grad[i] * factor + b.value * eta * bump_grad[i];
    }
    return out;
  };
  std::ostringstream os;
  os << base.label << " + bumps(seed=" << params.seed << ", eta=" << eta << ", sigma=" << sigma
     << ", k=" << params.count << ")";
  dom.label = os.str();
  sample_rho_range(dom);
  return dom;
}

double lambda_eval(const Vec& z, const Vec& v) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < z.size(); k += 2) {
    s += z[k] * v[k + 1] - z[k + 1] * v[k];
  }
  return 0.5 * s;
}

double surface_value(const StarShapedDomain& dom, const Vec& z) {
  const double r = norm(z);
  if (!(r > 0.0)) throw std::invalid_argument("surface_value: z must be nonzero");
  const double rho = dom.rho_full(scaled(z, 1.0 / r), r).value;
  const double q = r / rho;
  return q * q;
}

Vec surface_gradient(const StarShapedDomain& dom, const Vec& z) {
  const double r = norm(z);
  if (!(r > 0.0)) throw std::invalid_argument("surface_gradient: z must be nonzero");
  const Vec u = scaled(z, 1.0 / r);
  const RhoEval rho = dom.rho_full(u, r);
  // H = r^2 / rho(u)^2, grad H = 2 z / rho^2 - (2 r / rho^3) grad_S rho
  const double inv2 = 1.0 / (rho.value * rho.value);
  Vec g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    g[i] = 2.0 * z[i] * inv2 - 2.0 * r * inv2 / rho.value * rho.sphere_grad[i];
  }
  return g;
}

namespace {

Vec apply_j(const Vec& g) {
  // blockwise (x, y) -> (-y, x)
  Vec out(g.size());
  for (std::size_t k = 0; k + 1 < g.size(); k += 2) {
    out[k] = -g[k + 1];
    out[k + 1] = g[k];
  }
  return out;
}

Vec reeb_raw(const StarShapedDomain& dom, const Vec& z) { return apply_j(surface_gradient(dom, z)); }

}  // namespace

Vec reeb_field(const StarShapedDomain& dom, const Vec& z) {
  const double h = surface_value(dom, z);
  if (std::abs(h - 1.0) > 1e-8) {
    throw std::invalid_argument("reeb_field: point is not on the boundary (|H - 1| > 1e-8)");
  }
  Vec r = reeb_raw(dom, z);
  double lam = lambda_eval(z, r);
  if (lam < 0.0) {
    // lambda(J grad H) = H, so this cannot trigger with our orientation;
    // the sign is still fixed by evaluation rather than convention
    r = scaled(r, -1.0);
    lam = -lam;
  }
  if (std::abs(lam - 1.0) > 1e-6) {
    throw NumericalError("reeb_field: lambda(R) deviates from 1; inconsistent surface model");
  }
  return r;
}

double Trajectory::action() const {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    a += 0.5 * (samples[i].lambda_r + samples[i + 1].lambda_r) * (samples[i + 1].t - samples[i].t);
  }
  return a;
}

Trajectory integrate_flow(const StarShapedDomain& dom, const Vec& z0, double t_final,
                          const FlowOptions& opts) {
  if (!(t_final > 0.0)) throw std::invalid_argument("integrate_flow: t_final must be positive");
  {
    const double h0 = surface_value(dom, z0);
    if (std::abs(h0 - 1.0) > 1e-8) {
      throw std::invalid_argument("integrate_flow: start point is off the boundary");
    }
  }

  namespace ode = boost::numeric::odeint;
  using state_type = Vec;
  auto system = [&](const state_type& z, state_type& dzdt, double) { dzdt = reeb_raw(dom, z); };

  auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                      ode::runge_kutta_dopri5<state_type>());

  Trajectory traj;
  traj.steps = 0;
  state_type z = z0;
  double t = 0.0;
  double dt = std::min(t_final, 1e-3);

  auto record = [&](double time, const state_type& state) {
    TrajectorySample s;
    s.t = time;
    s.z = state;
    s.h = surface_value(dom, state);
    s.lambda_r = lambda_eval(state, reeb_raw(dom, state));
    traj.max_h_drift = std::max(traj.max_h_drift, std::abs(s.h - 1.0));
    traj.max_lambda_dev = std::max(traj.max_lambda_dev, std::abs(s.lambda_r - 1.0));
    traj.samples.push_back(std::move(s));
  };
  record(0.0, z);

  const double dt_cap = opts.max_step > 0.0 ? opts.max_step : t_final;
  int rejects_in_row = 0;
  while (t < t_final) {
    dt = std::min({dt, dt_cap, t_final - t});
    if (dt < 1e-15) break;
    const auto result = stepper.try_step(system, z, t, dt);
    if (result == ode::fail) {
      if (++rejects_in_row > 60) throw NumericalError("integrate_flow: step size underflow");
      continue;
    }
    rejects_in_row = 0;
    ++traj.steps;
    if (opts.project) {
      const double h = surface_value(dom, z);
      const double scale = 1.0 / std::sqrt(h);
      if (scale != 1.0) {
        traj.max_projection_shift = std::max(traj.max_projection_shift, std::abs(scale - 1.0) * norm(z));
        for (auto& x : z) x *= scale;
        ++traj.projections;
      }
    }
    record(t, z);
    if (traj.max_h_drift > opts.max_drift) {
      std::ostringstream os;
      os << "integrate_flow: |H - 1| drift " << traj.max_h_drift << " exceeded " << opts.max_drift
         << " at t = " << t;
      throw NumericalError(os.str());
    }
  }
  return traj;
}

ParametrizedTorus embed_fiber_torus(const LegendrianFiberTorus& torus) {
  if (torus.m.size() != 2) {
    throw std::invalid_argument("embed_fiber_torus: only the dim-4 knot case is embedded");
  }
  const Vec w = torus.fiber.w;
  const double r1 = std::sqrt(w[0] / kPi);
  const double r2 = std::sqrt(w[1] / kPi);
  const double m1 = static_cast<double>(torus.m[0]);
  const double m2 = static_cast<double>(torus.m[1]);
  const double m_sq = m1 * m1 + m2 * m2;
  const double c = torus.phase;

  // theta(s) = base + s * (m2, -m1) stays on {m . theta = c} and closes over
  // s in [0, 2 pi) because gcd(m2, m1) = 1
  auto theta_of = [=](double s) {
    return std::pair<double, double>{c * m1 / m_sq + s * m2, c * m2 / m_sq - s * m1};
  };

  ParametrizedTorus out;
  out.point = [=](double s) {
    const auto [t1, t2] = theta_of(s);
    return Vec{r1 * std::cos(t1), r1 * std::sin(t1), r2 * std::cos(t2), r2 * std::sin(t2)};
  };
  out.velocity = [=](double s) {
    const auto [t1, t2] = theta_of(s);
    return Vec{-r1 * std::sin(t1) * m2, r1 * std::cos(t1) * m2,
               r2 * std::sin(t2) * m1, -r2 * std::cos(t2) * m1};
  };
  out.m = torus.m;
  out.phase = torus.phase;
  out.legendrian_defect = 0.0;  // w is parallel to m, so lambda vanishes on the tangent
  std::ostringstream os;
  os << "fiber torus m=(" << torus.m[0] << "," << torus.m[1] << "), c=" << torus.phase;
  out.label = os.str();
  return out;
}

ParametrizedTorus transported_legendrian(const StarShapedDomain& dom, const ParametrizedTorus& source) {
  auto src_point = source.point;
  auto src_velocity = source.velocity;
  auto rho_full = dom.rho_full;

  auto mapped = [rho_full, src_point, src_velocity](double s, bool with_velocity) {
    const Vec p = src_point(s);
    const double r = norm(p);
    const Vec u = scaled(p, 1.0 / r);
    const RhoEval rho = rho_full(u, -1.0);
    Vec z = scaled(u, rho.value);
    if (!with_velocity) return std::pair<Vec, Vec>{z, {}};
    const Vec pv = src_velocity(s);
    // u' = (pv - (u.pv) u)/r ; z' = (grad_S rho . u') u + rho u'
    Vec uprime = tangential_part(pv, u);
    for (auto& x : uprime) x /= r;
    const double dr = dot(rho.sphere_grad, uprime);
    Vec zv(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zv[i] = dr * u[i] + rho.value * uprime[i];
    return std::pair<Vec, Vec>{z, zv};
  };

  ParametrizedTorus out;
  out.point = [mapped](double s) { return mapped(s, false).first; };
  out.velocity = [mapped](double s) { return mapped(s, true).second; };
  out.m = source.m;
  out.phase = source.phase;
  out.label = "radial transport of [" + source.label + "] onto " + dom.label;

  // measured defect; radial transport preserves ker(lambda), so this stays
  // at round-off for an exactly Legendrian source
  double defect = 0.0;
  const int samples = 2048;
  for (int i = 0; i < samples; ++i) {
    const double s = kTwoPi * i / samples;
    const auto [z, zv] = mapped(s, true);
    const double vnorm = norm(zv);
    if (vnorm > 0.0) defect = std::max(defect, std::abs(lambda_eval(z, zv)) / vnorm);
  }
  out.legendrian_defect = defect;
  return out;
}

double c1_distance(const StarShapedDomain& a, const StarShapedDomain& b, int samples) {
  if (a.n != b.n) throw std::invalid_argument("c1_distance: dimension mismatch");
  if (samples < 16) throw std::invalid_argument("c1_distance: need at least 16 samples");
  GaussianSampler sphere(0xd157u);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec u = sphere.unit_vector(2 * a.n);
    const RhoEval ra = a.rho_full(u, -1.0);
    const RhoEval rb = b.rho_full(u, -1.0);
    Vec dg(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) dg[i] = ra.sphere_grad[i] - rb.sphere_grad[i];
    worst = std::max(worst, std::abs(ra.value - rb.value) + norm(dg));
  }
  return worst;
}

namespace {

struct TorusGeometry {
  std::vector<Vec> points;
  int count = 0;

  double coarse_param(int i) const { return kTwoPi * i / count; }
};

TorusGeometry sample_torus(const ParametrizedTorus& torus, int count) {
  TorusGeometry geo;
  geo.count = count;
  geo.points.reserve(count);
  for (int i = 0; i < count; ++i) geo.points.push_back(torus.point(kTwoPi * i / count));
  return geo;
}

// distance from z to the curve: nearest coarse sample, optionally refined
// by golden section on the exact parametrization
double distance_to_torus(const ParametrizedTorus& torus, const TorusGeometry& geo, const Vec& z,
                         bool refine) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < geo.count; ++i) {
    const double d = distance(z, geo.points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (!refine) return best_d;
  const double step = kTwoPi / geo.count;
  const double s0 = geo.coarse_param(best);
  const double s = golden_min([&](double p) { return distance(z, torus.point(p)); },
                              s0 - step, s0 + step, 1e-10);
  return std::min(best_d, distance(z, torus.point(s)));
}

}  // namespace

std::vector<NumericalChord> find_chords(const StarShapedDomain& dom, const ParametrizedTorus& torus,
                                        const ChordSearchOptions& opts) {
  if (dom.n != 2) {
    throw std::invalid_argument("find_chords: restricted to dim 4 (the Legendrian knot case)");
  }
  if (!(opts.t_max > 0.0)) throw std::invalid_argument("find_chords: t_max must be positive");

  const TorusGeometry geo = sample_torus(torus, 512);

  struct Candidate {
    double s = 0.0;
    double t = 0.0;
    double d = 0.0;
  };

  // stage 1: coarse scan over launch points, recording local minima of the
  // distance back to the torus along each trajectory
  FlowOptions flow = opts.flow;
  flow.max_step = opts.t_max / opts.t_count;
  std::vector<std::vector<Candidate>> scan(opts.s_count);
  parallel_for(static_cast<std::size_t>(opts.s_count), opts.threads, [&](std::size_t i) {
    const double s = kTwoPi * static_cast<double>(i) / opts.s_count;
    Vec z0 = torus.point(s);
    Trajectory traj;
    try {
      traj = integrate_flow(dom, z0, opts.t_max, flow);
    } catch (const std::exception&) {
      return;  // a failed launch is a skipped start, not a fatal error
    }
    std::vector<double> d(traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
      d[k] = distance_to_torus(torus, geo, traj.samples[k].z, /*refine=*/false);
    }
    for (std::size_t k = 1; k + 1 < d.size(); ++k) {
      if (d[k] <= d[k - 1] && d[k] <= d[k + 1] && d[k] < opts.trigger &&
          traj.samples[k].t > 10.0 * flow.max_step) {
        scan[i].push_back({s, traj.samples[k].t, d[k]});
      }
    }
  });

  // stage 2: refine every candidate over (s, T)
  auto endpoint_distance = [&](double s, double T) -> double {
    if (!(T > 0.0) || T > opts.t_max * 1.5) return 1e6;
    Vec z0;
    try {
      z0 = torus.point(s);
      FlowOptions f = opts.flow;
      const Trajectory traj = integrate_flow(dom, z0, T, f);
      return distance_to_torus(torus, geo, traj.end(), /*refine=*/true);
    } catch (const std::exception&) {
      return 1e6;
    }
  };

  std::vector<Candidate> seeds;
  for (const auto& per_start : scan) {
    for (const auto& c : per_start) seeds.push_back(c);
  }
  std::sort(seeds.begin(), seeds.end(), [](const Candidate& a, const Candidate& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.s < b.s;
  });

  std::vector<NumericalChord> chords;
  for (const auto& seed : seeds) {
    bool near_known = false;
    for (const auto& c : chords) {
      if (std::abs(c.period - seed.t) < 1e-3 && wrap_distance(c.s_start - seed.s, kTwoPi) < 0.05) {
        near_known = true;
        break;
      }
    }
    if (near_known) continue;

    auto objective = [&](const std::vector<double>& x) { return endpoint_distance(x[0], x[1]); };
    const NelderMeadResult res =
        nelder_mead(objective, {seed.s, seed.t}, 0.02, opts.dist_tol * 0.1, 220);
    if (res.value > opts.dist_tol) continue;

    const double s_star = res.x[0];
    const double t_star = res.x[1];
    bool duplicate = false;
    for (const auto& c : chords) {
      if (std::abs(c.period - t_star) < 1e-3 && wrap_distance(c.s_start - s_star, kTwoPi) < 0.05) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    NumericalChord chord;
    chord.s_start = s_star;
    chord.start = torus.point(s_star);
    const Trajectory traj = integrate_flow(dom, chord.start, t_star, opts.flow);
    chord.end = traj.end();
    chord.period = t_star;
    chord.endpoint_distance = distance_to_torus(torus, geo, chord.end, /*refine=*/true);
    chord.max_h_drift = traj.max_h_drift;
    chord.genuine = distance(chord.start, chord.end) > opts.genuine_sep;
    chord.legendrian_defect = torus.legendrian_defect;
    chords.push_back(std::move(chord));
  }

  std::sort(chords.begin(), chords.end(), [](const NumericalChord& a, const NumericalChord& b) {
    if (a.period != b.period) return a.period < b.period;
    return a.s_start < b.s_start;
  });
  return chords;
}

}  // namespace toricap
