#include "rwg/stone.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace rwg {

namespace mp = boost::multiprecision;

Eigen::VectorXd to_eigen(const IntVector& m) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) v[static_cast<Eigen::Index>(i)] = static_cast<double>(m[i]);
  return v;
}

namespace {

void require_dim(const LatticeMeasure& mubar, const Eigen::VectorXd& v) {
  if (v.size() != mubar.k) throw MeasureError("vector dimension does not match the lattice rank");
}

// Bareiss fraction-free elimination; the matrix is consumed.
mp::cpp_int exact_det(std::vector<std::vector<mp::cpp_int>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mp::cpp_int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

double phi(const LatticeMeasure& mubar, const Eigen::VectorXd& v) {
  require_dim(mubar, v);
  double total = 0.0;
  for (const auto& a : mubar.atoms) total += std::exp(v.dot(to_eigen(a.point))) * a.weight;
  return total;
}

Eigen::VectorXd grad_phi(const LatticeMeasure& mubar, const Eigen::VectorXd& v) {
  require_dim(mubar, v);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(mubar.k);
  for (const auto& a : mubar.atoms) {
    const auto m = to_eigen(a.point);
    g += m * (std::exp(v.dot(m)) * a.weight);
  }
  return g;
}

Eigen::MatrixXd hessian_phi(const LatticeMeasure& mubar, const Eigen::VectorXd& v) {
  require_dim(mubar, v);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(mubar.k, mubar.k);
  for (const auto& a : mubar.atoms) {
    const auto m = to_eigen(a.point);
    h += (m * m.transpose()) * (std::exp(v.dot(m)) * a.weight);
  }
  return h;
}

HullCheck check_hull(const LatticeMeasure& mubar) {
  HullCheck out;
  const auto k = static_cast<std::size_t>(mubar.k);
  const auto& pts = mubar.atoms;
  if (k == 0) {
    out.full_dimensional = out.origin_interior = true;
    out.lattice_index = "1";
    return out;
  }
  if (binomial(pts.size(), k) > 2e6) throw ResourceError("support too large for exact hull enumeration");

  // Lattice index: gcd of all k x k minors of the point matrix.
  mp::cpp_int index = 0;
  for_each_subset(pts.size(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<mp::cpp_int>> m(k, std::vector<mp::cpp_int>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) m[r][c] = pts[idx[r]].point[c];
    index = mp::gcd(index, mp::abs(exact_det(std::move(m))));
  });
  out.lattice_index = index.str();

  // Every supporting hyperplane n.x <= c through k affinely independent support
  // points must have c > 0 for the origin to be interior. The hull is full
  // dimensional iff some such hyperplane leaves a point strictly off it.
  bool separated = false;
  bool boundary_hit = false;
  for_each_subset(pts.size(), k, [&](const std::vector<std::size_t>& idx) {
    if (boundary_hit) return;
    std::vector<mp::cpp_int> normal(k);
    for (std::size_t j = 0; j < k; ++j) {
      // Generalized cross product of the k-1 difference vectors: cofactors.
      std::vector<std::vector<mp::cpp_int>> minor(k - 1, std::vector<mp::cpp_int>(k - 1));
      for (std::size_t r = 1; r < k; ++r)
        for (std::size_t c = 0, cc = 0; c < k; ++c) {
          if (c == j) continue;
          minor[r - 1][cc++] = mp::cpp_int(pts[idx[r]].point[c]) - pts[idx[0]].point[c];
        }
      normal[j] = exact_det(std::move(minor)) * ((j % 2 == 0) ? 1 : -1);
    }
    if (std::all_of(normal.begin(), normal.end(), [](const mp::cpp_int& x) { return x == 0; })) return;
    auto dot = [&](const IntVector& p) {
      mp::cpp_int s = 0;
      for (std::size_t c = 0; c < k; ++c) s += normal[c] * p[c];
      return s;
    };
    const mp::cpp_int level = dot(pts[idx[0]].point);
    bool above = false, below = false;
    for (const auto& p : pts) {
      const auto d = dot(p.point) - level;
      if (d > 0) above = true;
      if (d < 0) below = true;
    }
    if (above && below) return;
    if (!above && !below) return;
    separated = true;
    // Supporting with all points on one side; the origin must be strictly on that side.
    const mp::cpp_int origin_side = -level;  // n.0 - level
    if ((below && origin_side >= 0) || (above && origin_side <= 0)) boundary_hit = true;
  });
  out.full_dimensional = separated;
  out.origin_interior = separated && !boundary_hit;
  if (!out.full_dimensional)
    out.reason = "support lies in a proper affine subspace of R^" + std::to_string(k);
  else if (!out.origin_interior)
    out.reason = "origin lies on or outside the boundary of the convex hull of the support";
  return out;
}

namespace {

struct NewtonResult {
  Eigen::VectorXd v;
  double grad_norm = 0.0;
  int iterations = 0;
  double min_eig = 0.0;
  bool converged = false;
};

NewtonResult newton(const LatticeMeasure& mubar, Eigen::VectorXd v, const MinimizeOptions& opt) {
  NewtonResult r;
  constexpr double kArmijo = 1e-4;
  double f = phi(mubar, v);
  for (r.iterations = 0; r.iterations < opt.max_iterations; ++r.iterations) {
    const Eigen::VectorXd g = grad_phi(mubar, v);
    r.grad_norm = g.norm();
    if (r.grad_norm <= opt.grad_tolerance) {
      r.converged = true;
      break;
    }
    const Eigen::MatrixXd h = hessian_phi(mubar, v);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
    r.min_eig = eig.eigenvalues().minCoeff();
    Eigen::VectorXd dir = r.min_eig < 1e-14 ? Eigen::VectorXd(-g) : Eigen::VectorXd(h.ldlt().solve(-g));
    const double slope = g.dot(dir);
    double t = 1.0;
    Eigen::VectorXd trial = v + dir;
    double ft = phi(mubar, trial);
    // Relative slack absorbs rounding once phi has converged to machine precision.
    const double slack = 4 * std::numeric_limits<double>::epsilon() * std::abs(f);
    int halvings = 0;
    while (!(ft <= f + kArmijo * t * slope + slack) && halvings < 60) {
      t *= 0.5;
      trial = v + t * dir;
      ft = phi(mubar, trial);
      ++halvings;
    }
    if (halvings == 60) break;
    v = trial;
    f = ft;
  }
  if (!r.converged) r.grad_norm = grad_phi(mubar, v).norm();
  const Eigen::MatrixXd h = hessian_phi(mubar, v);
  r.min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  r.converged = r.grad_norm <= opt.grad_tolerance;
  r.v = std::move(v);
  return r;
}

}  // namespace

TiltReport minimize_phi(const LatticeMeasure& mubar, const MinimizeOptions& options) {
  TiltReport report;
  report.hull = check_hull(mubar);
  if (!report.hull.origin_interior)
    throw MeasureError("minimizer may not exist: " + report.hull.reason);

  auto main = newton(mubar, Eigen::VectorXd::Zero(mubar.k), options);
  report.xi = main.v;
  report.phi_min = phi(mubar, main.v);
  report.grad_norm = main.grad_norm;
  report.iterations = main.iterations;
  report.hessian_min_eigenvalue_estimate = main.min_eig;
  report.converged = main.converged;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  for (int i = 0; i < options.restarts; ++i) {
    Eigen::VectorXd start(mubar.k);
    for (Eigen::Index j = 0; j < start.size(); ++j) start[j] = normal(rng);
    const double radius = options.restart_radius * std::pow(unif(rng), 1.0 / std::max(1, mubar.k));
    if (start.norm() > 0) start *= radius / start.norm();
    auto alt = newton(mubar, start, options);
    report.restart_spread = std::max(report.restart_spread, (alt.v - main.v).lpNorm<Eigen::Infinity>());
  }
  return report;
}

FinMeasure tilt_measure(const FinMeasure& mu, const Eigen::VectorXd& xi) {
  const Group& G = mu.group();
  if (xi.size() != G.abelian_rank()) throw MeasureError("xi dimension does not match the abelianization rank");
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  double norm = 0.0;
  for (const auto& a : mu.atoms()) {
    const double w = std::exp(xi.dot(to_eigen(G.project(a.element)))) * a.weight;
    norm += w;
    atoms.push_back({a.element, w});
  }
  for (auto& a : atoms) a.weight /= norm;
  return FinMeasure(G, std::move(atoms), mu.is_probability());
}

CentredReport is_centred(const LatticeMeasure& mubar, double tolerance) {
  CentredReport r;
  r.mean = Eigen::VectorXd::Zero(mubar.k);
  for (const auto& a : mubar.atoms) r.mean += to_eigen(a.point) * a.weight;
  r.centred = mubar.k == 0 || r.mean.lpNorm<Eigen::Infinity>() <= tolerance;
  return r;
}

}  // namespace rwg
