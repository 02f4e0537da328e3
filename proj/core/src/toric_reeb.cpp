#include "toricap/toric_reeb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace toricap {

namespace {

long long vec_gcd(const std::vector<long long>& m) {
  long long g = 0;
  for (long long x : m) g = std::gcd(g, std::abs(x));
  return g;
}

double dot_m(const Vec& w, const std::vector<long long>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * static_cast<double>(m[i]);
  return s;
}

// norm of the component of unit(v) orthogonal to unit(m)
double angular_residual(const Vec& v, const std::vector<long long>& m) {
  Vec md(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) md[i] = static_cast<double>(m[i]);
  const Vec vu = normalized(v);
  const Vec mu = normalized(md);
  const double c = dot(vu, mu);
  double s = 0.0;
  for (std::size_t i = 0; i < vu.size(); ++i) {
    const double r = vu[i] - c * mu[i];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

std::optional<std::vector<long long>> rational_direction(const Vec& v, int max_height,
                                                         double angular_tol) {
  double min_pos = std::numeric_limits<double>::infinity();
  for (double x : v) {
    if (x < 0.0) return std::nullopt;  // normals of monotone regions only
    if (x > 0.0) min_pos = std::min(min_pos, x);
  }
  if (!std::isfinite(min_pos)) return std::nullopt;

  Vec u = scaled(v, 1.0 / min_pos);
  for (int k = 1; k <= max_height; ++k) {
    std::vector<long long> m(v.size(), 0);
    bool plausible = true;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double target = u[i] * k;
      m[i] = std::llround(target);
      if (m[i] < 0 || std::abs(target - static_cast<double>(m[i])) > 1e-6 * k + 1e-9) {
        plausible = false;
        break;
      }
    }
    if (!plausible) continue;
    const long long g = vec_gcd(m);
    if (g == 0) continue;
    for (auto& x : m) x /= g;
    if (angular_residual(v, m) <= angular_tol) return m;
  }
  return std::nullopt;
}

TorusFiber make_fiber(const MomentRegion& region, const Vec& w, int detect_height) {
  TorusFiber f;
  f.w = w;
  f.nu = outward_normal(region, w);
  // axis entries can blow up for builders with unbounded slope there; the
  // modified normal zeroes them and nothing downstream reads the raw value
  for (std::size_t i = 0; i < f.nu.size(); ++i) {
    if (!std::isfinite(f.nu[i])) f.nu[i] = 0.0;
  }
  f.nu_tilde = tilde_normal(w, f.nu);
  f.n_positive = 0;
  for (double x : w) {
    if (x > kTolAxis) ++f.n_positive;
  }
  f.primitive_dir = rational_direction(f.nu_tilde, detect_height, kTolDirection);
  return f;
}

Vec reeb_angular_velocity(const TorusFiber& fiber) {
  const double pairing = dot(fiber.w, fiber.nu_tilde);
  if (!(pairing > 1e-14 * (1.0 + norm(fiber.w)) * (1.0 + norm(fiber.nu_tilde)))) {
    throw NumericalError("reeb_angular_velocity: degenerate pairing w . nu_tilde");
  }
  return scaled(fiber.nu_tilde, kTwoPi / pairing);
}

std::optional<double> closed_orbit_period(const TorusFiber& fiber) {
  if (!fiber.primitive_dir) return std::nullopt;
  return dot_m(fiber.w, *fiber.primitive_dir);
}

// --- enumeration ------------------------------------------------------------

namespace {

struct ScanSample {
  double phi = 0.0;
  Vec w;
  Vec nu_tilde;
  double angle = 0.0;  // atan2 of the modified normal (n = 2)
  bool ok = false;
};

// evaluates the boundary and the direction of the modified normal at ray
// angle phi (n = 2)
ScanSample eval_scan(const MomentRegion& region, double phi) {
  ScanSample s;
  s.phi = phi;
  const Vec dir = {std::cos(phi), std::sin(phi)};
  try {
    s.w = boundary_point(region, dir);
    Vec nu = outward_normal(region, s.w);
    for (auto& x : nu) {
      if (!std::isfinite(x)) x = 0.0;
    }
    s.nu_tilde = tilde_normal(s.w, nu);
    if (norm(s.nu_tilde) < 1e-14) return s;
    s.angle = std::atan2(s.nu_tilde[1], s.nu_tilde[0]);
    s.ok = true;
  } catch (const std::exception&) {
    s.ok = false;
  }
  return s;
}

std::vector<ScanSample> scan_boundary_2d(const MomentRegion& region, int points, double margin) {
  std::vector<ScanSample> table(points);
  for (int j = 0; j < points; ++j) {
    const double phi = margin + (kPi / 2.0 - 2.0 * margin) * j / (points - 1);
    table[j] = eval_scan(region, phi);
  }
  return table;
}

// primitive integer vectors with entries in [0, height], at least one
// nonzero, gcd 1; lexicographic order
std::vector<std::vector<long long>> primitive_vectors(int n, int height, bool allow_zero_entries) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> m(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      const long long g = vec_gcd(m);
      if (g != 1) return;
      if (!allow_zero_entries) {
        for (long long x : m) {
          if (x == 0) return;
        }
      }
      out.push_back(m);
      return;
    }
    for (long long v = 0; v <= height; ++v) {
      m[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

struct InteriorSearchResult {
  std::vector<FiberRecord> fibers;
  std::vector<SkippedDirection> skipped;
};

// locates fibers with nu_tilde parallel to m on the open positive part of
// the boundary, n = 2, using the shared scan table
void interior_fibers_2d_for_m(const MomentRegion& region, const std::vector<ScanSample>& table,
                              const std::vector<long long>& m, double dir_tol,
                              InteriorSearchResult& out) {
  const double target = std::atan2(static_cast<double>(m[1]), static_cast<double>(m[0]));
  const int npts = static_cast<int>(table.size());

  auto h_of = [&](const ScanSample& s) { return s.angle - target; };
  auto residual_at = [&](double phi) -> double {
    const ScanSample s = eval_scan(region, phi);
    if (!s.ok) return std::numeric_limits<double>::quiet_NaN();
    return s.angle - target;
  };

  std::vector<double> candidates;
  std::vector<std::pair<double, double>> family_extents;  // parallel to candidates; lo==hi for isolated

  // flat-contact runs: consecutive samples matching within dir_tol
  int j = 0;
  while (j < npts) {
    if (!table[j].ok || std::abs(h_of(table[j])) > dir_tol) {
      ++j;
      continue;
    }
    int k = j;
    while (k + 1 < npts && table[k + 1].ok && std::abs(h_of(table[k + 1])) <= dir_tol) ++k;
    // a genuine closed-orbit family has constant period along the arc
    // (w' is tangent, m is parallel to the normal); an arc that matches the
    // direction only to tolerance while the period drifts is not a fiber
    double pmin = std::numeric_limits<double>::infinity();
    double pmax = -pmin;
    for (int i = j; i <= k; ++i) {
      const double p = dot_m(table[i].w, m);
      pmin = std::min(pmin, p);
      pmax = std::max(pmax, p);
    }
    const double spread = pmax - pmin;
    if (spread <= 1e-7 * std::max(1.0, std::abs(pmax)) + 1e-12) {
      const int mid = (j + k) / 2;
      candidates.push_back(table[mid].phi);
      family_extents.emplace_back(table[j].phi, table[k].phi);
    } else {
      std::ostringstream os;
      os << "arc matched the direction only within tolerance (period spread " << spread << ")";
      out.skipped.push_back({m, os.str()});
    }
    j = k + 1;
  }

  // sign-change brackets between samples outside any run
  for (int i = 0; i + 1 < npts; ++i) {
    if (!table[i].ok || !table[i + 1].ok) continue;
    const double a = h_of(table[i]);
    const double b = h_of(table[i + 1]);
    if (std::abs(a) <= dir_tol || std::abs(b) <= dir_tol) continue;
    if (a * b >= 0.0) continue;
    double lo = table[i].phi, hi = table[i + 1].phi;
    double flo = a;
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = residual_at(mid);
      if (std::isnan(fm)) break;
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const double phi = 0.5 * (lo + hi);
    candidates.push_back(phi);
    family_extents.emplace_back(phi, phi);
  }

  // isolated tangential contact: |h| dips to ~0 without a sign change
  for (int i = 1; i + 1 < npts; ++i) {
    if (!table[i - 1].ok || !table[i].ok || !table[i + 1].ok) continue;
    const double hm = std::abs(h_of(table[i - 1]));
    const double h0 = std::abs(h_of(table[i]));
    const double hp = std::abs(h_of(table[i + 1]));
    if (h0 <= dir_tol || hm <= dir_tol || hp <= dir_tol) continue;
    if (!(h0 < hm && h0 < hp && h0 <= 1e-4)) continue;
    const double phi = golden_min([&](double p) { return std::abs(residual_at(p)); },
                                  table[i - 1].phi, table[i + 1].phi, 1e-13);
    if (std::abs(residual_at(phi)) <= dir_tol) {
      candidates.push_back(phi);
      family_extents.emplace_back(phi, phi);
    }
  }

  // deduplicate by ray angle and emit validated fibers
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return candidates[a] < candidates[b]; });
  double last_phi = -1.0;
  bool found_any = false;
  for (std::size_t oi : order) {
    const double phi = candidates[oi];
    if (found_any && phi - last_phi < 1e-6) continue;
    const Vec dir = {std::cos(phi), std::sin(phi)};
    Vec w;
    try {
      w = boundary_point(region, dir);
    } catch (const std::exception&) {
      continue;
    }
    TorusFiber f = make_fiber(region, w, 1);
    if (angular_residual(f.nu_tilde, m) > dir_tol) continue;
    f.primitive_dir = m;
    FiberRecord rec;
    rec.m = m;
    rec.fiber = f;
    rec.period = dot_m(w, m);
    rec.kind = "interior";
    rec.family_lo = family_extents[oi].first;
    rec.family_hi = family_extents[oi].second;
    out.fibers.push_back(std::move(rec));
    last_phi = phi;
    found_any = true;
  }
  if (!found_any) {
    bool has_reason = false;
    for (const auto& s : out.skipped) has_reason = has_reason || (s.m == m);
    if (!has_reason) out.skipped.push_back({m, "no boundary point with matching modified normal"});
  }
}

// inverse of orthant_direction: spherical angles of a positive unit vector
std::vector<double> angles_of_direction(const Vec& d) {
  const std::size_t n = d.size();
  std::vector<double> u(n - 1, 0.0);
  double carry = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double c = d[j] / std::max(carry, 1e-300);
    c = std::clamp(c, -1.0, 1.0);
    const double ang = std::acos(c);
    u[j] = ang / (kPi / 2.0);
    carry *= std::sin(ang);
  }
  return u;
}

// n >= 3: derivative-free search for a boundary point whose modified normal
// is parallel to m
void interior_fibers_nd_for_m(const MomentRegion& region, const std::vector<long long>& m,
                              double dir_tol, InteriorSearchResult& out) {
  const int n = region.dim;
  Vec md(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) md[i] = static_cast<double>(m[i]);

  auto objective = [&](const std::vector<double>& u) -> double {
    for (double x : u) {
      if (x < 1e-6 || x > 1.0 - 1e-6) return 1e6;
    }
    const Vec dir = orthant_direction(u);
    try {
      const Vec w = boundary_point(region, dir);
      for (double x : w) {
        if (x <= kTolAxis) return 1e6;
      }
      Vec nu = outward_normal(region, w);
      for (auto& x : nu) {
        if (!std::isfinite(x)) x = 0.0;
      }
      return angular_residual(tilde_normal(w, nu), m);
    } catch (const std::exception&) {
      return 1e6;
    }
  };

  std::vector<double> start = angles_of_direction(normalized(md));
  for (auto& x : start) x = std::clamp(x, 0.02, 0.98);
  NelderMeadResult best = nelder_mead(objective, start, 0.15, dir_tol * 0.1, 600);
  if (best.value > dir_tol) {
    // a few deterministic restarts across the orthant
    for (int r = 0; r < 4 && best.value > dir_tol; ++r) {
      std::vector<double> s0(static_cast<std::size_t>(n - 1));
      for (int j = 0; j < n - 1; ++j) s0[j] = 0.1 + 0.8 * halton(static_cast<std::uint64_t>(r * 7 + j), j == 0 ? 2 : 3);
      NelderMeadResult trial = nelder_mead(objective, s0, 0.2, dir_tol * 0.1, 600);
      if (trial.value < best.value) best = trial;
    }
  }
  if (best.value > dir_tol) {
    out.skipped.push_back({m, "direction search did not converge"});
    return;
  }
  const Vec dir = orthant_direction(best.x);
  const Vec w = boundary_point(region, dir);
  TorusFiber f = make_fiber(region, w, 1);
  f.primitive_dir = m;
  FiberRecord rec;
  rec.m = m;
  rec.fiber = f;
  rec.period = dot_m(w, m);
  rec.kind = "interior";
  out.fibers.push_back(std::move(rec));
}

// interior fibers of a region in its own coordinates
InteriorSearchResult interior_fibers(const MomentRegion& region, const EnumOptions& opts) {
  InteriorSearchResult out;
  const int n = region.dim;

  if (n == 1) {
    // the boundary of a 1-D restriction is a single point; m = (1)
    const double t = boundary_scale(region, {1.0});
    TorusFiber f;
    f.w = {t};
    Vec nu = region.grad(f.w);
    if (!std::isfinite(nu[0])) nu[0] = 0.0;
    f.nu = nu;
    f.nu_tilde = tilde_normal(f.w, nu);
    f.n_positive = 1;
    f.primitive_dir = std::vector<long long>{1};
    FiberRecord rec;
    rec.m = {1};
    rec.fiber = f;
    rec.period = t;
    rec.kind = "interior";
    out.fibers.push_back(std::move(rec));
    return out;
  }

  // zero entries in m are meaningful targets only where a boundary arc can
  // be normal to a coordinate plane; that is resolved on the 2-D scan
  const auto targets = primitive_vectors(n, opts.height, /*allow_zero_entries=*/n == 2);

  if (n == 2) {
    const auto table = scan_boundary_2d(region, opts.scan_points, 1e-5);
    std::vector<InteriorSearchResult> slots(targets.size());
    parallel_for(targets.size(), opts.threads, [&](std::size_t i) {
      interior_fibers_2d_for_m(region, table, targets[i], opts.dir_tol, slots[i]);
    });
    for (auto& s : slots) {
      for (auto& f : s.fibers) out.fibers.push_back(std::move(f));
      for (auto& k : s.skipped) out.skipped.push_back(std::move(k));
    }
  } else {
    std::vector<InteriorSearchResult> slots(targets.size());
    parallel_for(targets.size(), opts.threads, [&](std::size_t i) {
      interior_fibers_nd_for_m(region, targets[i], opts.dir_tol, slots[i]);
    });
    for (auto& s : slots) {
      for (auto& f : s.fibers) out.fibers.push_back(std::move(f));
      for (auto& k : s.skipped) out.skipped.push_back(std::move(k));
    }
  }
  return out;
}

FiberRecord embed_stratum_fiber(const FiberRecord& sub, const std::vector<int>& support, int n) {
  FiberRecord rec;
  rec.m.assign(n, 0);
  rec.fiber.w.assign(n, 0.0);
  rec.fiber.nu.assign(n, 0.0);
  rec.fiber.nu_tilde.assign(n, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    rec.m[support[i]] = sub.m[i];
    rec.fiber.w[support[i]] = sub.fiber.w[i];
    rec.fiber.nu[support[i]] = sub.fiber.nu[i];
    rec.fiber.nu_tilde[support[i]] = sub.fiber.nu_tilde[i];
  }
  rec.fiber.n_positive = sub.fiber.n_positive;
  rec.fiber.primitive_dir = rec.m;
  rec.period = sub.period;
  rec.kind = "axis";
  return rec;
}

}  // namespace

FiberEnumeration enumerate_rational_fibers(const MomentRegion& region, const EnumOptions& opts) {
  if (opts.height < 1) throw std::invalid_argument("enumerate_rational_fibers: height must be >= 1");
  const MonotonicityClass mono = classify_monotonicity(region, 1000);
  if (!is_monotone(mono)) {
    throw NumericalError("enumerate_rational_fibers: region is not monotone; the foliation formula does not apply");
  }

  FiberEnumeration out;
  InteriorSearchResult inner = interior_fibers(region, opts);
  out.fibers = std::move(inner.fibers);
  out.skipped = std::move(inner.skipped);

  // axis strata: every proper nonempty coordinate subset
  const int n = region.dim;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) support.push_back(i);
    }
    const MomentRegion sub = restrict_region(region, support);
    InteriorSearchResult stratum = interior_fibers(sub, opts);
    for (const auto& f : stratum.fibers) out.fibers.push_back(embed_stratum_fiber(f, support, n));
    for (const auto& k : stratum.skipped) {
      std::vector<long long> m_full(n, 0);
      for (std::size_t i = 0; i < support.size(); ++i) m_full[support[i]] = k.m[i];
      out.skipped.push_back({m_full, "stratum: " + k.reason});
    }
  }

  auto fiber_less = [](const FiberRecord& a, const FiberRecord& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.fiber.w < b.fiber.w;
  };
  std::sort(out.fibers.begin(), out.fibers.end(), fiber_less);
  std::sort(out.skipped.begin(), out.skipped.end(),
            [](const SkippedDirection& a, const SkippedDirection& b) { return a.m < b.m; });
  return out;
}

LegendrianFiberTorus legendrian_fiber(const MomentRegion& region, const std::vector<long long>& m,
                                      double phase) {
  if (static_cast<int>(m.size()) != region.dim) {
    throw std::invalid_argument("legendrian_fiber: direction dimension mismatch");
  }
  for (long long x : m) {
    if (x <= 0) {
      throw std::invalid_argument(
          "legendrian_fiber: m must have strictly positive entries (zero entries drop the torus dimension)");
    }
  }
  std::vector<long long> mm = m;
  const long long g = vec_gcd(mm);
  for (auto& x : mm) x /= g;
  if (!(phase >= 0.0 && phase < kTwoPi)) phase = std::fmod(std::fmod(phase, kTwoPi) + kTwoPi, kTwoPi);

  Vec dir(mm.size());
  for (std::size_t i = 0; i < mm.size(); ++i) dir[i] = static_cast<double>(mm[i]);
  const double s = boundary_scale(region, dir);

  LegendrianFiberTorus torus;
  torus.fiber = make_fiber(region, scaled(dir, s));
  torus.m = mm;
  torus.phase = phase;
  torus.scale = s;
  return torus;
}

ChordRecord min_chord_period(const LegendrianFiberTorus& torus) {
  const Vec omega = reeb_angular_velocity(torus.fiber);
  const double m_dot_nu = dot_m(torus.fiber.nu_tilde, torus.m);
  if (!(m_dot_nu > 0.0)) throw NumericalError("min_chord_period: m . nu_tilde must be positive");
  // return time of the linear flow to {m . theta = c}: the phase m . theta
  // advances at rate 2 pi (m . nu_tilde) / (w . nu_tilde)
  const double period = dot(torus.fiber.w, torus.fiber.nu_tilde) / m_dot_nu;

  const std::size_t n = torus.m.size();
  Vec displacement = scaled(omega, period);

  ChordRecord rec;
  rec.period = period;
  rec.start_angles.assign(n, 0.0);
  double m2 = 0.0;
  for (long long x : torus.m) m2 += static_cast<double>(x) * static_cast<double>(x);
  for (std::size_t i = 0; i < n; ++i) {
    rec.start_angles[i] = torus.phase * static_cast<double>(torus.m[i]) / m2;
  }
  rec.end_angles.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rec.end_angles[i] = std::fmod(rec.start_angles[i] + displacement[i], kTwoPi);
    if (rec.end_angles[i] < 0.0) rec.end_angles[i] += kTwoPi;
  }
  // non-genuine exactly when the displacement is a full rotation in every angle
  bool closed = true;
  for (std::size_t i = 0; i < n; ++i) closed = closed && wrap_distance(displacement[i], kTwoPi) <= 1e-9;
  rec.genuine = !closed;
  rec.residual = wrap_distance(dot_m(displacement, torus.m), kTwoPi);
  return rec;
}

SupChordResult sup_chord_over_fibers(const MomentRegion& region, int height) {
  if (height < 10) throw std::invalid_argument("sup_chord_over_fibers: height must be >= 10");
  const MonotonicityClass mono = classify_monotonicity(region, 1000);
  if (!is_monotone(mono)) {
    throw NumericalError("sup_chord_over_fibers: region is not monotone");
  }
  const int n = region.dim;

  SupChordResult out;
  out.lattice_value = -std::numeric_limits<double>::infinity();
  for (const auto& m : primitive_vectors(n, height, /*allow_zero_entries=*/false)) {
    Vec dir(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) dir[i] = static_cast<double>(m[i]);
    const double s = boundary_scale(region, dir);
    if (s > out.lattice_value + 1e-15) {
      out.lattice_value = s;
      out.witness_m = m;
    }
  }

  // continuum relaxation over real directions with min-entry 1: for
  // downward-closed regions s(d) is nonincreasing in every d_i, so the
  // optimum sits at the diagonal; sampled here as a cross-check
  Vec diag(static_cast<std::size_t>(n), 1.0);
  out.continuum_value = boundary_scale(region, diag);
  out.continuum_direction = diag;
  static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  for (int k = 0; k < 512; ++k) {
    Vec d(static_cast<std::size_t>(n));
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      d[i] = 1.0 + halton(static_cast<std::uint64_t>(k), primes[i % 8]) * (height - 1.0);
      dmin = std::min(dmin, d[i]);
    }
    for (auto& x : d) x /= dmin;
    const double s = boundary_scale(region, d);
    if (s > out.continuum_value + 1e-15) {
      out.continuum_value = s;
      out.continuum_direction = d;
    }
  }

  out.value = std::max(out.lattice_value, out.continuum_value);
  return out;
}

}  // namespace toricap
