// Capacity computations over a moment region: Gromov width by the boundary
// min-sum route, cube capacity by the diagonal intercept, the Lagrangian
// capacity, the minimal closed-orbit period by rational-fiber enumeration,
// the gap kappa between the two normalizations, and per-claim verdicts.
#pragma once

#include "toricap/toric_reeb.hpp"

namespace toricap {

// tolerance for cross-checks between the two independent pipelines
inline constexpr double kTolClaim = 1e-6;

// min over the boundary of w_1 + ... + w_n (the largest simplex scale that
// fits inside a downward-closed region). Fails for non-monotone regions.
double gromov_width(const MomentRegion& region, int grid = 20000);

// diagonal intercept: the t with G(t, ..., t) = 0.
double cube_capacity(const MomentRegion& region);

struct LagrangianCapacity {
  double value = 0.0;
  // the cube-normalization of c_Lag needs a virtual-perturbation assumption
  // except in dimension 4, where automatic transversality covers it
  bool assumption_free = false;
};
LagrangianCapacity lagrangian_capacity(const MomentRegion& region);

struct MinOrbit {
  double period = 0.0;
  FiberRecord witness;
  // the enumeration equals A_min (Lemma-1 route) only for strictly monotone
  // regions; otherwise it is reported as the enumerated minimum
  bool strict_ground_truth = false;
  std::vector<SkippedDirection> skipped;
};
MinOrbit min_orbit_period(const MomentRegion& region, int height = 50, int threads = 1);

// gromov_width - cube_capacity (the largest valid kappa of the gap estimate)
double kappa_gap(const MomentRegion& region, int grid = 20000);

enum class VerdictStatus { Pass, Fail, NotApplicable };
const char* to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::NotApplicable;
  double residual = 0.0;
  std::string detail;
};

struct CapacityReport {
  std::string label;
  MonotonicityClass monotonicity;
  double c_gromov = 0.0;
  double c_cube = 0.0;
  double c_lagrangian = 0.0;
  bool lagrangian_assumption_free = false;
  double a_min_orbit = 0.0;
  double sup_chord_min = 0.0;
  double kappa = 0.0;
  std::vector<long long> a_min_witness_m;
  Vec a_min_witness_w;
  std::vector<long long> sup_witness_m;
  std::map<std::string, Verdict> verdicts;
  std::vector<std::string> warnings;
};

struct ReportOptions {
  int grid = 20000;
  int height = 50;
  int mono_samples = 2000;
  int threads = 1;
  double tol_claim = kTolClaim;
};

CapacityReport verify_paper_claims(const MomentRegion& region, const ReportOptions& opts = {});

// 0 when every applicable verdict passes, else the count of failures
int failed_verdicts(const CapacityReport& report);

}  // namespace toricap
