#pragma once

// Cylinder measures on the one-sided shift over the support of mu_xi: the
// Bernoulli measure nu_xi, the loop-weighted measures m_n, finite-n pressure
// and large-deviation tail masses by exact enumeration.

#include "rwg/measures.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rwg {

struct CylinderWord {
  std::vector<GroupElement> letters;
  std::size_t size() const noexcept { return letters.size(); }
};

// Checks every letter against the support of mu.
CylinderWord make_cylinder(const FinMeasure& mu, std::vector<GroupElement> letters);

double nu_xi_cylinder(const FinMeasure& mu_xi, const CylinderWord& u);

// m_n([u]) = mu_xi(u_1)...mu_xi(u_k) mu_xi^{*(n-k)}(u^{-1}) / mu_xi^{*n}(e), n >= k.
// table_xi must be the power table of mu_xi.
double m_n_cylinder(const ConvolutionTable& table_xi, const CylinderWord& u, int n);

struct EquidistRow {
  int n = 0;
  double m_n = 0.0;
  double deviation = 0.0;
};

struct EquidistReport {
  CylinderWord cylinder;
  double nu_xi = 0.0;
  std::vector<EquidistRow> rows;
  double final_quartile_max_deviation = 0.0;
  double deviation_slope = 0.0;  // least-squares slope of |m_n - nu_xi| against n
  bool trending_down = false;
};

EquidistReport equidist_report(const ConvolutionTable& table_xi, const CylinderWord& u, int n_first, int n_last);
EquidistReport equidist_report(const FinMeasure& mu, const Eigen::VectorXd& xi, const CylinderWord& u, int n_first,
                               int n_last, const PowerOptions& options = {});

// Words s in S^n grouped by the number of cyclic positions j in [0, n) at
// which the periodic point s_infinity starts with u. weight[c] sums nu_xi([s])
// over words with count c; for loops_only, only words with s_1...s_n = e count.
struct OrbitHistogram {
  int n = 0;
  std::vector<double> weight;
  double total = 0.0;
};

struct EnumerationOptions {
  double max_words = 1e8;
  unsigned threads = 1;
};

OrbitHistogram orbit_histogram(const FinMeasure& mu_xi, const CylinderWord& u, int n, bool loops_only,
                               const EnumerationOptions& options = {});

// (1/n) log sum_{s in S^n} exp(sum_j [log mu_xi(s_{j+1}) + t chi(sigma^j s_infinity)]),
// with mu_xi normalized to total mass one over S^n.
double pressure_finite_n(const FinMeasure& mu_xi, const CylinderWord& u, double t, int n,
                         const EnumerationOptions& options = {});
double pressure_finite_n(const OrbitHistogram& histogram, double t);

// Central difference (P_n(h) - P_n(-h)) / 2h.
double pressure_derivative(const OrbitHistogram& histogram, double h);

// nu_xi mass of words whose orbital frequency of [u] differs from nu_xi([u]) by more than eps.
double ld_tail_mass(const OrbitHistogram& histogram, double nu, double eps);
double ld_tail_mass(const FinMeasure& mu_xi, const CylinderWord& u, double eps, int n,
                    const EnumerationOptions& options = {});
// Same sum restricted to loops s in Lambda_n.
double ld_tail_mass_loops(const FinMeasure& mu_xi, const CylinderWord& u, double eps, int n,
                          const EnumerationOptions& options = {});

}  // namespace rwg
