// Exact Reeb dynamics over a moment region: angular velocity of the torus
// fibers, closed-orbit periods over rational modified-normal directions,
// bounded-height enumeration of rational fibers (interior roots plus axis
// strata), Legendrian fiber tori, and closed-form minimal chord periods.
#pragma once

#include "toricap/moment_region.hpp"

namespace toricap {

// accepted angle between nu_tilde and a primitive integer direction
inline constexpr double kTolDirection = 1e-9;

struct TorusFiber {
  Vec w;         // boundary point
  Vec nu;        // outward normal there
  Vec nu_tilde;  // normal with axis entries zeroed
  std::optional<std::vector<long long>> primitive_dir;  // gcd-1 integer vector parallel to nu_tilde
  int n_positive = 0;  // count of strictly positive coordinates of w
};

// Builds the fiber over w, detecting a rational direction of nu_tilde with
// denominators up to detect_height (within kTolDirection angular tolerance).
TorusFiber make_fiber(const MomentRegion& region, const Vec& w, int detect_height = 1000);

// (2 pi / (w . nu_tilde)) * nu_tilde, in radians per unit action.
Vec reeb_angular_velocity(const TorusFiber& fiber);

// w . m for a rational fiber (gcd-normalized), nothing for irrational ones.
std::optional<double> closed_orbit_period(const TorusFiber& fiber);

struct FiberRecord {
  std::vector<long long> m;
  TorusFiber fiber;
  double period = 0.0;
  std::string kind;       // "interior" or "axis"
  double family_lo = 0.0;  // ray-angle extent when a whole boundary arc
  double family_hi = 0.0;  // shares the direction (n = 2 only)
};

struct SkippedDirection {
  std::vector<long long> m;
  std::string reason;
};

struct FiberEnumeration {
  std::vector<FiberRecord> fibers;    // sorted by m lexicographically
  std::vector<SkippedDirection> skipped;
};

struct EnumOptions {
  int height = 50;
  int scan_points = 4096;
  double dir_tol = kTolDirection;
  int threads = 1;
};

// All fibers whose modified normal is parallel to a primitive integer
// vector of sup-norm up to height. Interior directions are located on a
// shared boundary scan (n = 2) or by damped Newton on the direction sphere
// (n >= 3); axis patterns are found recursively on the boundary strata.
FiberEnumeration enumerate_rational_fibers(const MomentRegion& region, const EnumOptions& opts);

struct LegendrianFiberTorus {
  TorusFiber fiber;                // fiber at w = scale * m
  std::vector<long long> m;        // strictly positive, gcd 1
  double phase = 0.0;              // c in [0, 2 pi)
  double scale = 0.0;              // s with w = s * m
};

// Torus {m . theta = c (mod 2 pi)} inside the fiber over the boundary point
// along the ray through m. Fails when m has a zero entry (dimension drop).
LegendrianFiberTorus legendrian_fiber(const MomentRegion& region, const std::vector<long long>& m,
                                      double phase);

struct ChordRecord {
  Vec start_angles;
  Vec end_angles;
  double period = 0.0;
  bool genuine = true;   // endpoints differ as points of the torus
  double residual = 0.0;  // chord-condition defect (mod 2 pi)
};

// Minimal return time of the linear Reeb flow to {m . theta = c}; equals the
// scale s of the torus. The chord is non-genuine exactly when the angular
// displacement lies in 2 pi Z^n.
ChordRecord min_chord_period(const LegendrianFiberTorus& torus);

struct SupChordResult {
  double value = 0.0;
  std::vector<long long> witness_m;
  double lattice_value = 0.0;     // best over enumerated integer directions
  double continuum_value = 0.0;   // relaxation over real directions (min-entry normalized)
  Vec continuum_direction;
};

// sup over Legendrian fiber tori of the minimal chord period: max of the
// per-direction scale s(m) over strictly positive primitive m, plus the
// continuum relaxation; attained on the diagonal for monotone regions.
SupChordResult sup_chord_over_fibers(const MomentRegion& region, int height);

// gcd-normalized integer vector parallel to v within angular_tol, trying
// scale denominators up to max_height.
std::optional<std::vector<long long>> rational_direction(const Vec& v, int max_height,
                                                         double angular_tol);

}  // namespace toricap
