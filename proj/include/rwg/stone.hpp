#pragma once

// The abelianized moment generating function phi(v) = sum_m e^{<v,m>} mubar(m),
// its unique minimizer xi, and the exponentially tilted measure mu_xi.

#include "rwg/measures.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace rwg {

double phi(const LatticeMeasure& mubar, const Eigen::VectorXd& v);
Eigen::VectorXd grad_phi(const LatticeMeasure& mubar, const Eigen::VectorXd& v);
Eigen::MatrixXd hessian_phi(const LatticeMeasure& mubar, const Eigen::VectorXd& v);

// Exact geometry of the support of mubar, decided with integer arithmetic.
struct HullCheck {
  bool full_dimensional = false;
  bool origin_interior = false;
  // gcd of the k x k minors of the support points; 1 iff they span Z^k over Z.
  std::string lattice_index;
  std::string reason;
};

HullCheck check_hull(const LatticeMeasure& mubar);

struct TiltReport {
  Eigen::VectorXd xi;
  double phi_min = 1.0;
  double grad_norm = 0.0;
  int iterations = 0;
  double hessian_min_eigenvalue_estimate = 0.0;
  double restart_spread = 0.0;  // max |xi_restart - xi| over the random restarts
  bool converged = false;
  HullCheck hull;
};

struct MinimizeOptions {
  double grad_tolerance = 1e-12;
  int max_iterations = 200;
  int restarts = 4;
  double restart_radius = 2.0;
  std::uint64_t seed = 0x5eed;
};

// Damped Newton from v = 0. Throws MeasureError("minimizer may not exist")
// when 0 is not interior to the convex hull of the support.
TiltReport minimize_phi(const LatticeMeasure& mubar, const MinimizeOptions& options = {});

// mu_xi(g) = phi(xi)^{-1} e^{<xi, pi(g)>} mu(g).
FinMeasure tilt_measure(const FinMeasure& mu, const Eigen::VectorXd& xi);

struct CentredReport {
  Eigen::VectorXd mean;
  bool centred = true;
};

CentredReport is_centred(const LatticeMeasure& mubar, double tolerance = 1e-12);

Eigen::VectorXd to_eigen(const IntVector& m);

}  // namespace rwg
