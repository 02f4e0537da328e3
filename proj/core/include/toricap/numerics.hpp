// Small numerical toolbox shared by the geometry and flow modules:
// dense-vector helpers, safeguarded 1-D root refinement, golden-section
// minimization, Halton sampling on the positive orthant of a sphere,
// a compact Nelder-Mead, and a deterministic parallel map.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricap {

using Vec = std::vector<double>;

// Raised when a numerical procedure cannot meet its contract
// (lost bracket, degenerate gradient, drift overflow, ...).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double distance(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
Vec normalized(const Vec& a);
// a*x + y
Vec axpy(double a, const Vec& x, const Vec& y);

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Root of f on [lo, hi] assuming f(lo) < 0 < f(hi). Bisection with Newton
// polish when df is given; stops at |f| <= ftol or machine-width bracket.
struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};
RootResult refine_root(const std::function<double(double)>& f, double lo, double hi,
                       double ftol, const std::function<double(double)>* df = nullptr);

// Golden-section minimum of a unimodal f on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi, double xtol);

// Halton radical-inverse sequence (index >= 0).
double halton(std::uint64_t index, std::uint32_t base);

// Direction in the closed positive orthant of S^{n-1} from n-1 coordinates
// in [0, 1] (spherical-angle product map).
Vec orthant_direction(const std::vector<double>& u);

// Distance from x to the nearest multiple of period.
double wrap_distance(double x, double period);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double scale, double value_goal,
                             int max_evaluations);

// Runs body(i) for i in [0, count). With threads > 1 the index space is
// chunked over a fixed worker pool; bodies must write only to their own
// output slots so results do not depend on the schedule.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

// Deterministic Gaussian stream (splitmix64 + Box-Muller), independent of
// the standard library's distribution implementations.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : state_(seed) {}
  double next();
  Vec unit_vector(int dim);

 private:
  double next_uniform();  // in (0, 1)
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t fnv1a64(const std::string& data);

// printf %.17g, enough digits to round-trip a double exactly.
std::string format_double(double v);

}  // namespace toricap
