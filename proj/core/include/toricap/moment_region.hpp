// Implicit model of the moment image of a toric domain: a smooth region
// Omega = {G <= 0} in the nonnegative orthant, with analytic gradients,
// boundary queries along rays from the origin, modified normals, and a
// sampled monotonicity classification.
#pragma once

#include <map>
#include <optional>

#include "toricap/numerics.hpp"

namespace toricap {

// |G| tolerance accepted for a boundary point
inline constexpr double kTolRoot = 1e-10;
// coordinate threshold below which an entry counts as sitting on an axis
inline constexpr double kTolAxis = 1e-8;
// threshold on normalized normal entries for the negativity test
inline constexpr double kTolMono = 1e-7;
// entries at or below this count as flat. Builders carry analytic
// gradients, so a flat boundary direction computes as an exact (or
// cancellation-noise negative) zero, while steep strictly monotone regions
// produce entries that are tiny but genuinely positive.
inline constexpr double kTolFlat = 0.0;

struct MomentRegion {
  int dim = 0;
  std::function<double(const Vec&)> g;
  std::function<Vec(const Vec&)> grad;
  Vec bounding_box;  // componentwise upper bounds; G > 0 outside the box
  std::string label;
  std::string family;  // builder tag: ball, ellipsoid, concave_sqrt, convex_power, counterexample, custom
  // builder hints used only to gate verdicts that need them
  bool symmetric = false;           // invariant under coordinate permutations
  bool complement_convex = false;   // orthant complement is convex (concave toric family)
};

// G(w) <= 0, rejecting points with negative entries.
bool contains(const MomentRegion& region, const Vec& w);

// t with G(t * direction) = 0; unique along rays for downward-closed regions.
double boundary_scale(const MomentRegion& region, const Vec& direction);
Vec boundary_point(const MomentRegion& region, const Vec& direction);

// gradient of G at a boundary point (unnormalized; downstream formulas are
// scale-invariant in it)
Vec outward_normal(const MomentRegion& region, const Vec& w);

// entries of nu zeroed where the base point sits on an axis
Vec tilde_normal(const Vec& w, const Vec& nu);

enum class Monotonicity { StrictlyMonotone, MonotoneNotStrict, NotMonotone };
const char* to_string(Monotonicity m);

struct MonotonicityClass {
  Monotonicity kind = Monotonicity::NotMonotone;
  Vec witness_point;
  Vec witness_normal;
  std::optional<bool> dynamically_convex;  // reported when dim == 2
  int samples_used = 0;
  // classification is by dense sampling, not a certificate
  std::string method = "sampled, not certified";
};

MonotonicityClass classify_monotonicity(const MomentRegion& region, int samples);

bool is_monotone(const MonotonicityClass& c);

// --- builders -------------------------------------------------------------

// B^{2n}(R): sum w_i <= R
MomentRegion build_ball(int n, double radius);
// E(a_1..a_n): sum w_i / a_i <= 1
MomentRegion build_ellipsoid(const Vec& axes);
// concave family: sum sqrt(w_i / c) <= 1
MomentRegion build_concave_sqrt(int n, double c);
// convex family: sum (w_i / a)^p <= 1, p >= 1
MomentRegion build_convex_power(int n, double a, double p);
// smooth model of {x <= eps, y <= 3} union {x + y <= 2}; beta controls the
// union mollifier, q the rectangle-corner mollifier (sharper as they grow)
MomentRegion build_counterexample(double epsilon, double beta, double q);

// w -> s * w image of the region (capacities scale linearly with s)
MomentRegion scale_region(const MomentRegion& region, double s);
// region restricted to a coordinate subspace (remaining coordinates pinned
// to zero); used for the axis strata of the fiber enumeration
MomentRegion restrict_region(const MomentRegion& region, const std::vector<int>& support);

MomentRegion build_from_name(const std::string& builder, const std::map<std::string, double>& params,
                             const Vec& axes);

}  // namespace toricap
