#include "toricap/moment_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace toricap {

namespace {

void check_dim(const MomentRegion& region, const Vec& w, const char* where) {
  if (static_cast<int>(w.size()) != region.dim) {
    std::ostringstream os;
    os << where << ": expected a point of dimension " << region.dim << ", got " << w.size();
    throw std::invalid_argument(os.str());
  }
}

void check_nonnegative(const Vec& w, const char* where) {
  for (double x : w) {
    if (x < 0.0 || !std::isfinite(x)) {
      throw std::invalid_argument(std::string(where) + ": coordinates must be finite and nonnegative");
    }
  }
}

std::string join(const Vec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  return os.str();
}

// |s| mollified with a Gaussian of width tau. Exceeds |s| everywhere,
// convex, and equal to |s| to double precision once |s| >= ~6.5 tau; the
// derivative is erf(s / tau).
double mollified_abs(double s, double tau) {
  const double u = s / tau;
  return s * std::erf(u) + tau * std::exp(-u * u) / std::sqrt(kPi);
}

double mollified_abs_derivative(double s, double tau) { return std::erf(s / tau); }

}  // namespace

bool contains(const MomentRegion& region, const Vec& w) {
  check_dim(region, w, "contains");
  check_nonnegative(w, "contains");
  return region.g(w) <= 0.0;
}

double boundary_scale(const MomentRegion& region, const Vec& direction) {
  check_dim(region, direction, "boundary_scale");
  check_nonnegative(direction, "boundary_scale");
  double dmax = 0.0;
  for (double x : direction) dmax = std::max(dmax, x);
  if (dmax == 0.0) throw std::invalid_argument("boundary_scale: direction must not be zero");

  auto g_on_ray = [&](double t) { return region.g(scaled(direction, t)); };
  auto dg_on_ray = [&](double t) { return dot(region.grad(scaled(direction, t)), direction); };

  if (g_on_ray(0.0) >= 0.0) throw NumericalError("boundary_scale: origin is not interior");

  // the ray exits the bounding box at t_exit; G is positive shortly after
  double t_exit = std::numeric_limits<double>::infinity();
  for (int i = 0; i < region.dim; ++i) {
    if (direction[i] > 0.0) t_exit = std::min(t_exit, region.bounding_box[i] / direction[i]);
  }
  double hi = t_exit * 1.0009765625;  // exact in binary, keeps the bracket tight
  double fhi = g_on_ray(hi);
  int grow = 0;
  while (fhi <= 0.0 && grow < 8) {
    hi *= 1.5;
    fhi = g_on_ray(hi);
    ++grow;
  }
  if (fhi <= 0.0) throw NumericalError("boundary_scale: no sign change along the ray inside the bounding box");

  std::function<double(double)> f = g_on_ray;
  std::function<double(double)> df = dg_on_ray;
  const RootResult root = refine_root(f, 0.0, hi, kTolRoot, &df);
  if (std::abs(root.f) > kTolRoot) throw NumericalError("boundary_scale: root polish did not reach tolerance");
  return root.x;
}

Vec boundary_point(const MomentRegion& region, const Vec& direction) {
  return scaled(direction, boundary_scale(region, direction));
}

Vec outward_normal(const MomentRegion& region, const Vec& w) {
  check_dim(region, w, "outward_normal");
  const double g = region.g(w);
  if (std::abs(g) > kTolRoot) throw std::invalid_argument("outward_normal: point is not on the boundary");
  Vec nu = region.grad(w);
  double n2 = 0.0;
  for (double x : nu) {
    if (std::isfinite(x)) n2 += x * x;
  }
  if (n2 < 1e-24) throw NumericalError("outward_normal: degenerate gradient on the boundary");
  return nu;
}

Vec tilde_normal(const Vec& w, const Vec& nu) {
  Vec out(nu.size(), 0.0);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (w[i] > kTolAxis) out[i] = nu[i];
  }
  return out;
}

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::StrictlyMonotone: return "strictly_monotone";
    case Monotonicity::MonotoneNotStrict: return "monotone_not_strict";
    case Monotonicity::NotMonotone: return "not_monotone";
  }
  return "unknown";
}

bool is_monotone(const MonotonicityClass& c) { return c.kind != Monotonicity::NotMonotone; }

MonotonicityClass classify_monotonicity(const MomentRegion& region, int samples) {
  if (samples < 100) throw std::invalid_argument("classify_monotonicity: samples must be >= 100");
  const int n = region.dim;

  MonotonicityClass out;
  out.samples_used = 0;

  // Entry signs are tested on the unit normal. Negative entries beyond
  // kTolMono mean not monotone; entries that vanish to round-off (kTolFlat)
  // mean monotone but not strict. A tiny positive entry still counts as
  // strict: steep builders (convex_power with large p) legitimately produce
  // entries far below kTolMono near the axes.
  double worst_negative = 0.0;
  double smallest_abs = std::numeric_limits<double>::infinity();
  Vec neg_point, neg_normal, flat_point, flat_normal, tight_point, tight_normal;
  bool has_flat = false;

  static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  const double margin = 1e-5;  // angular margin keeping samples off the axes
  for (int k = 0; k < samples; ++k) {
    std::vector<double> u(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n - 1; ++j) {
      const double h = halton(static_cast<std::uint64_t>(k), primes[j % 10]);
      u[j] = margin + h * (1.0 - 2.0 * margin);
    }
    const Vec dir = orthant_direction(u);
    Vec w;
    try {
      w = boundary_point(region, dir);
    } catch (const NumericalError&) {
      continue;
    }
    bool positive = true;
    for (double x : w) positive = positive && (x > kTolAxis);
    if (!positive) continue;

    Vec nu;
    try {
      nu = outward_normal(region, w);
    } catch (const NumericalError&) {
      continue;
    }
    const Vec unit = normalized(nu);
    ++out.samples_used;
    for (int i = 0; i < n; ++i) {
      const double e = unit[i];
      if (e < worst_negative) {
        worst_negative = e;
        neg_point = w;
        neg_normal = nu;
      }
      if (e <= kTolFlat && !has_flat) {
        has_flat = true;
        flat_point = w;
        flat_normal = nu;
      }
      if (std::abs(e) < smallest_abs) {
        smallest_abs = std::abs(e);
        tight_point = w;
        tight_normal = nu;
      }
    }
  }

  if (out.samples_used == 0) throw NumericalError("classify_monotonicity: no usable boundary samples");

  if (worst_negative < -kTolMono) {
    out.kind = Monotonicity::NotMonotone;
    out.witness_point = neg_point;
    out.witness_normal = neg_normal;
  } else if (has_flat) {
    out.kind = Monotonicity::MonotoneNotStrict;
    out.witness_point = flat_point;
    out.witness_normal = flat_normal;
  } else {
    out.kind = Monotonicity::StrictlyMonotone;
    out.witness_point = tight_point;
    out.witness_normal = tight_normal;
  }
  if (region.dim == 2) out.dynamically_convex = (out.kind == Monotonicity::StrictlyMonotone);
  return out;
}

// --- builders -------------------------------------------------------------

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("builder parameter ") + name + " must be positive");
  }
}
}  // namespace

MomentRegion build_ball(int n, double radius) {
  if (n < 2) throw std::invalid_argument("build_ball: n must be >= 2");
  require_positive(radius, "radius");
  MomentRegion r;
  r.dim = n;
  r.g = [radius](const Vec& w) {
    double s = 0.0;
    for (double x : w) s += x;
    return s - radius;
  };
  r.grad = [n](const Vec&) { return Vec(static_cast<std::size_t>(n), 1.0); };
  r.bounding_box = Vec(static_cast<std::size_t>(n), radius);
  std::ostringstream os;
  os << "ball(n=" << n << ", R=" << radius << ")";
  r.label = os.str();
  r.family = "ball";
  r.symmetric = true;
  r.complement_convex = true;
  return r;
}

MomentRegion build_ellipsoid(const Vec& axes) {
  if (axes.size() < 2) throw std::invalid_argument("build_ellipsoid: need at least two axes");
  for (double a : axes) require_positive(a, "axis");
  MomentRegion r;
  r.dim = static_cast<int>(axes.size());
  r.g = [axes](const Vec& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < axes.size(); ++i) s += w[i] / axes[i];
    return s - 1.0;
  };
  r.grad = [axes](const Vec&) {
    Vec g(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) g[i] = 1.0 / axes[i];
    return g;
  };
  r.bounding_box = axes;
  r.label = "ellipsoid(" + join(axes) + ")";
  r.family = "ellipsoid";
  r.symmetric = std::all_of(axes.begin(), axes.end(), [&](double a) { return a == axes[0]; });
  r.complement_convex = true;
  return r;
}

MomentRegion build_concave_sqrt(int n, double c) {
  if (n < 2) throw std::invalid_argument("build_concave_sqrt: n must be >= 2");
  require_positive(c, "c");
  MomentRegion r;
  r.dim = n;
  r.g = [c](const Vec& w) {
    double s = 0.0;
    for (double x : w) s += std::sqrt(x / c);
    return s - 1.0;
  };
  r.grad = [c, n](const Vec& w) {
    Vec g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      // unbounded slope at the axes; callers sample with an axis margin
      g[i] = w[i] > 0.0 ? 0.5 / std::sqrt(c * w[i]) : std::numeric_limits<double>::infinity();
    }
    return g;
  };
  r.bounding_box = Vec(static_cast<std::size_t>(n), c);
  std::ostringstream os;
  os << "concave_sqrt(n=" << n << ", c=" << c << ")";
  r.label = os.str();
  r.family = "concave_sqrt";
  r.symmetric = true;
  r.complement_convex = true;
  return r;
}

MomentRegion build_convex_power(int n, double a, double p) {
  if (n < 2) throw std::invalid_argument("build_convex_power: n must be >= 2");
  require_positive(a, "a");
  if (!(p >= 1.0)) throw std::invalid_argument("build_convex_power: p must be >= 1");
  MomentRegion r;
  r.dim = n;
  r.g = [a, p](const Vec& w) {
    double s = 0.0;
    for (double x : w) s += std::pow(x / a, p);
    return s - 1.0;
  };
  r.grad = [a, p, n](const Vec& w) {
    Vec g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = (p / a) * std::pow(w[i] / a, p - 1.0);
    return g;
  };
  r.bounding_box = Vec(static_cast<std::size_t>(n), a);
  std::ostringstream os;
  os << "convex_power(n=" << n << ", a=" << a << ", p=" << p << ")";
  r.label = os.str();
  r.family = "convex_power";
  r.symmetric = true;
  r.complement_convex = (p == 1.0);  // p = 1 degenerates to the simplex
  return r;
}

// The counterexample region is the union {x <= eps, y <= 3} u {x + y <= 2}
// with mollified corners. The mollifier must leave the vertical edge of the
// rectangle exactly straight: the edge carries the closed-orbit family of
// period eps that makes the domain a counterexample, and that family only
// exists while the normal there is exactly (1, 0). Both the corner rounding
// and the union blend therefore use an erf-mollified min/max that is exact
// to double precision away from a transition band, with convex-combination
// gradients (weights in [0, 1], so monotonicity of the pieces is preserved).
MomentRegion build_counterexample(double epsilon, double beta, double q) {
  require_positive(epsilon, "epsilon");
  if (!(beta >= 10.0)) throw std::invalid_argument("build_counterexample: beta must be >= 10");
  if (!(q >= 8.0)) throw std::invalid_argument("build_counterexample: q must be >= 8");
  if (epsilon >= 2.0) throw std::invalid_argument("build_counterexample: epsilon must be < 2");

  const double tau_rect = 1.0 / (4.0 * q);   // rectangle-corner transition scale
  const double tau_union = 1.0 / (4.0 * beta);  // union transition scale

  auto pieces = [epsilon](const Vec& w, double& g_left, double& g_top, double& g_simplex) {
    g_left = w[0] / epsilon - 1.0;
    g_top = w[1] / 3.0 - 1.0;
    g_simplex = 0.5 * (w[0] + w[1]) - 1.0;
  };

  MomentRegion r;
  r.dim = 2;
  r.g = [pieces, tau_rect, tau_union](const Vec& w) {
    double gl, gt, gs;
    pieces(w, gl, gt, gs);
    const double rect = 0.5 * (gl + gt) + mollified_abs(0.5 * (gl - gt), tau_rect);  // smooth max
    return 0.5 * (rect + gs) - mollified_abs(0.5 * (rect - gs), tau_union);          // smooth min
  };
  r.grad = [pieces, epsilon, tau_rect, tau_union](const Vec& w) {
    double gl, gt, gs;
    pieces(w, gl, gt, gs);
    const double dmax = mollified_abs_derivative(0.5 * (gl - gt), tau_rect);
    const double wl = 0.5 * (1.0 + dmax);  // weight of the left constraint in the max
    const double wt = 0.5 * (1.0 - dmax);
    const double rect = 0.5 * (gl + gt) + mollified_abs(0.5 * (gl - gt), tau_rect);
    const double dmin = mollified_abs_derivative(0.5 * (rect - gs), tau_union);
    const double wr = 0.5 * (1.0 - dmin);  // weight of the rectangle in the min
    const double ws = 0.5 * (1.0 + dmin);
    Vec g(2);
    g[0] = wr * (wl / epsilon) + ws * 0.5;
    g[1] = wr * (wt / 3.0) + ws * 0.5;
    return g;
  };
  r.bounding_box = {2.0, 3.0};
  std::ostringstream os;
  os << "counterexample(eps=" << epsilon << ", beta=" << beta << ", q=" << q << ")";
  r.label = os.str();
  r.family = "counterexample";
  r.symmetric = false;
  r.complement_convex = false;
  return r;
}

MomentRegion scale_region(const MomentRegion& region, double s) {
  require_positive(s, "scale");
  MomentRegion r;
  r.dim = region.dim;
  auto g0 = region.g;
  auto grad0 = region.grad;
  r.g = [g0, s](const Vec& w) { return g0(scaled(w, 1.0 / s)); };
  r.grad = [grad0, s](const Vec& w) { return scaled(grad0(scaled(w, 1.0 / s)), 1.0 / s); };
  r.bounding_box = scaled(region.bounding_box, s);
  std::ostringstream os;
  os << "scale(" << s << ") of " << region.label;
  r.label = os.str();
  r.family = region.family;
  r.symmetric = region.symmetric;
  r.complement_convex = region.complement_convex;
  return r;
}

MomentRegion restrict_region(const MomentRegion& region, const std::vector<int>& support) {
  if (support.empty() || static_cast<int>(support.size()) >= region.dim) {
    throw std::invalid_argument("restrict_region: support must be a proper nonempty subset");
  }
  const int full = region.dim;
  auto embed = [support, full](const Vec& v) {
    Vec w(static_cast<std::size_t>(full), 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) w[support[i]] = v[i];
    return w;
  };
  MomentRegion r;
  r.dim = static_cast<int>(support.size());
  auto g0 = region.g;
  auto grad0 = region.grad;
  r.g = [g0, embed](const Vec& v) { return g0(embed(v)); };
  r.grad = [grad0, embed, support](const Vec& v) {
    const Vec full_grad = grad0(embed(v));
    Vec g(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) g[i] = full_grad[support[i]];
    return g;
  };
  r.bounding_box.resize(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) r.bounding_box[i] = region.bounding_box[support[i]];
  r.label = "restriction of " + region.label;
  r.family = region.family;
  r.symmetric = false;
  r.complement_convex = false;
  return r;
}

MomentRegion build_from_name(const std::string& builder, const std::map<std::string, double>& params,
                             const Vec& axes) {
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      (void)value;
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw std::invalid_argument("builder '" + builder + "' does not take parameter '" + key + "'");
    }
  };
  auto get = [&](const std::string& key, double fallback, bool required) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (required) throw std::invalid_argument("builder '" + builder + "' requires parameter '" + key + "'");
    return fallback;
  };
  if (builder == "ball") {
    check_keys({"n", "radius"});
    return build_ball(static_cast<int>(get("n", 2, false)), get("radius", 1.0, false));
  }
  if (builder == "ellipsoid") {
    check_keys({});
    if (axes.empty()) throw std::invalid_argument("builder 'ellipsoid' requires an axes list");
    return build_ellipsoid(axes);
  }
  if (builder == "concave_sqrt") {
    check_keys({"n", "c"});
    return build_concave_sqrt(static_cast<int>(get("n", 2, false)), get("c", 1.0, false));
  }
  if (builder == "convex_power") {
    check_keys({"n", "a", "p"});
    return build_convex_power(static_cast<int>(get("n", 2, false)), get("a", 1.0, false),
                              get("p", 0.0, true));
  }
  if (builder == "counterexample") {
    check_keys({"epsilon", "beta", "q"});
    return build_counterexample(get("epsilon", 0.1, false), get("beta", 200.0, false),
                                get("q", 16.0, false));
  }
  throw std::invalid_argument("unknown builder '" + builder + "'");
}

}  // namespace toricap
