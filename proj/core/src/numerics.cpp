#include "toricap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace toricap {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec scaled(const Vec& a, double s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Vec normalized(const Vec& a) {
  const double n = norm(a);
  if (n == 0.0) throw NumericalError("cannot normalize a zero vector");
  return scaled(a, 1.0 / n);
}

Vec axpy(double a, const Vec& x, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
  return out;
}

RootResult refine_root(const std::function<double(double)>& f, double lo, double hi,
                       double ftol, const std::function<double(double)>* df) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) throw NumericalError("refine_root: invalid bracket");
  if (std::abs(flo) <= ftol) return {lo, flo, 0};
  if (std::abs(fhi) <= ftol) return {hi, fhi, 0};

  RootResult res;
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  int it = 0;
  const int max_it = 200;
  for (; it < max_it; ++it) {
    if (std::abs(fx) <= ftol) break;
    if (fx < 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    double next = 0.0;
    bool took_newton = false;
    if (df) {
      const double d = (*df)(x);
      if (d != 0.0 && std::isfinite(d)) {
        next = x - fx / d;
        // keep Newton iterates inside the live bracket
        if (next > lo && next < hi) took_newton = true;
      }
    }
    if (!took_newton) next = 0.5 * (lo + hi);
    if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi) + 1.0)) {
      x = 0.5 * (lo + hi);
      fx = f(x);
      break;
    }
    x = next;
    fx = f(x);
  }
  res.x = x;
  res.f = fx;
  res.iterations = it;
  return res;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0;
  double r = 0.0;
  std::uint64_t i = index + 1;  // skip the zero point
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

Vec orthant_direction(const std::vector<double>& u) {
  const std::size_t n = u.size() + 1;
  Vec d(n, 1.0);
  // product of sines times a final cosine per coordinate
  double carry = 1.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double ang = u[j] * (kPi / 2.0);
    d[j] = carry * std::cos(ang);
    carry *= std::sin(ang);
  }
  d[n - 1] = carry;
  return d;
}

double wrap_distance(double x, double period) {
  double r = std::fmod(std::abs(x), period);
  return std::min(r, period - r);
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double scale, double value_goal,
                             int max_evaluations) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += scale;

  std::vector<double> values(n + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++evals;
  }

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      v2[i] = values[idx[i]];
    }
    simplex.swap(s2);
    values.swap(v2);
  };

  while (evals < max_evaluations) {
    order();
    if (values[0] <= value_goal) break;
    // simplex diameter as a convergence proxy
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j) diam = std::max(diam, std::abs(simplex[i][j] - simplex[0][j]));
    if (diam < 1e-12) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (std::size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
      return p;
    };

    auto reflected = blend(-1.0);
    double fr = f(reflected);
    ++evals;
    if (fr < values[0]) {
      auto expanded = blend(-2.0);
      double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[n] = expanded;
        values[n] = fe;
      } else {
        simplex[n] = reflected;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = fr;
    } else {
      auto contracted = blend(0.5);
      double fc = f(contracted);
      ++evals;
      if (fc < values[n]) {
        simplex[n] = contracted;
        values[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
          values[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  order();
  return {simplex[0], values[0], evals};
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

double GaussianSampler::next_uniform() {
  const std::uint64_t r = splitmix64(state_);
  // 53 significant bits, offset so the value is strictly inside (0, 1)
  return (static_cast<double>(r >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double GaussianSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double m = std::sqrt(-2.0 * std::log(u1));
  spare_ = m * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return m * std::cos(kTwoPi * u2);
}

Vec GaussianSampler::unit_vector(int dim) {
  Vec v(dim);
  double n2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = next();
    n2 = dot(v, v);
  } while (n2 < 1e-12);
  return scaled(v, 1.0 / std::sqrt(n2));
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace toricap
