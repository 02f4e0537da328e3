// Numerical Reeb dynamics on star-shaped hypersurfaces of R^{2n}: domains
// modeled by a radial function on the unit sphere, the Liouville form, the
// Reeb field through the 2-homogeneous defining Hamiltonian H = (|z|/rho)^2,
// adaptive flow integration with drift monitoring, radial transport of
// Legendrian fiber tori, a C^1 metric, seeded bump perturbations, and a
// two-stage shooting chord search (dim 4).
#pragma once

#include <cstdint>

#include "toricap/toric_reeb.hpp"

namespace toricap {

struct RhoEval {
  double value = 0.0;
  Vec sphere_grad;  // tangential gradient on the unit sphere
};

struct StarShapedDomain {
  int n = 0;  // complex dimension; the ambient space is R^{2n}
  // evaluated at unit vectors; hint is a guess for rho (<= 0 for none)
  std::function<RhoEval(const Vec&, double)> rho_full;
  std::string label;
  double rho_min = 0.0;
  double rho_max = 0.0;

  double rho(const Vec& u) const { return rho_full(u, -1.0).value; }
};

// boundary model of the toric domain over a moment region: rho solves
// G(rho^2 mu(u)) = 0 along each ray, gradients by implicit differentiation
StarShapedDomain toric_induced(const MomentRegion& region);

// domain from a plain radial function; tangential gradients by central
// differences on the sphere (step 1e-6) for callers without analytic ones
StarShapedDomain from_radial_function(int n, std::function<double(const Vec&)> rho,
                                      const std::string& label);

struct PerturbParams {
  std::uint64_t seed = 0;
  double amplitude = 0.0;  // eta >= 0
  double width = 0.5;      // geodesic bump width sigma
  int count = 1;           // number of bumps
};
// rho' = rho * (1 + eta * sum of smooth bumps at seeded sphere points)
StarShapedDomain perturb(const StarShapedDomain& base, const PerturbParams& params);

// moment-map coordinates of an ambient point: w_i = pi (x_i^2 + y_i^2)
Vec moment_of(const Vec& z);
// angles theta_i = atan2(y_i, x_i)
Vec angles_of(const Vec& z);
// ambient point with given moment coordinates and angles
Vec ambient_point(const Vec& w, const Vec& theta);

// Liouville form: 1/2 sum (x_i v_{y_i} - y_i v_{x_i})
double lambda_eval(const Vec& z, const Vec& v);

// H(z) = (|z| / rho(z/|z|))^2; equals 1 on the boundary
double surface_value(const StarShapedDomain& dom, const Vec& z);
Vec surface_gradient(const StarShapedDomain& dom, const Vec& z);

// Reeb field J grad H, sign fixed so lambda(R) = +1 on the boundary
Vec reeb_field(const StarShapedDomain& dom, const Vec& z);

struct FlowOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;     // 0 = no cap
  bool project = false;      // radial rescale to {H = 1} after accepted steps
  double max_drift = 1e-6;   // abort threshold on |H - 1|
};

struct TrajectorySample {
  double t = 0.0;
  Vec z;
  double h = 0.0;
  double lambda_r = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double max_h_drift = 0.0;
  double max_lambda_dev = 0.0;
  int steps = 0;
  int projections = 0;
  double max_projection_shift = 0.0;

  const Vec& end() const { return samples.back().z; }
  // integral of lambda along the trajectory (trapezoid over samples)
  double action() const;
};

Trajectory integrate_flow(const StarShapedDomain& dom, const Vec& z0, double t_final,
                          const FlowOptions& opts = {});

// closed curve on the boundary (the n = 2 Legendrian knot case)
struct ParametrizedTorus {
  std::function<Vec(double)> point;     // s in [0, 2 pi)
  std::function<Vec(double)> velocity;  // d/ds
  double legendrian_defect = 0.0;       // max |lambda(gamma')| / |gamma'|
  std::vector<long long> m;
  double phase = 0.0;
  std::string label;
};

// the Legendrian fiber torus embedded in the toric boundary
ParametrizedTorus embed_fiber_torus(const LegendrianFiberTorus& torus);

// radial projection of a source torus onto the boundary of dom, with the
// measured Legendrian defect of the image
ParametrizedTorus transported_legendrian(const StarShapedDomain& dom, const ParametrizedTorus& source);

// max over sampled sphere points of |rho_a - rho_b| + |grad_S(rho_a - rho_b)|
double c1_distance(const StarShapedDomain& a, const StarShapedDomain& b, int samples);

struct NumericalChord {
  double s_start = 0.0;  // torus parameter of the launch point
  Vec start;
  Vec end;
  double period = 0.0;
  bool genuine = true;
  double endpoint_distance = 0.0;  // distance from the endpoint to the torus
  double max_h_drift = 0.0;
  double legendrian_defect = 0.0;
};

struct ChordSearchOptions {
  double t_max = 2.0;
  int s_count = 32;          // coarse launch points on the torus
  int t_count = 800;         // minimum time samples along each trajectory
  double dist_tol = 1e-6;    // accepted endpoint distance to the torus
  double trigger = 0.05;     // coarse minima below this start a refinement
  double genuine_sep = 1e-4; // ambient separation deciding genuineness
  int threads = 1;
  FlowOptions flow;
};

// two-stage shooting: coarse scan over launch points recording near
// returns, then Nelder-Mead refinement over (launch parameter, time). An
// empty result means no chord was found up to t_max, never a proof of
// absence.
std::vector<NumericalChord> find_chords(const StarShapedDomain& dom, const ParametrizedTorus& torus,
                                        const ChordSearchOptions& opts);

}  // namespace toricap
