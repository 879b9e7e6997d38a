#include "rwg/spectral.hpp"

#include "rwg/stone.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rwg {

std::vector<ScaledValue> return_sequence(const ConvolutionTable& table) {
  const auto e = table.base().group().identity();
  std::vector<ScaledValue> out;
  out.reserve(static_cast<std::size_t>(table.n_max()) + 1);
  for (int n = 0; n <= table.n_max(); ++n) out.push_back(table.probability(e, n));
  return out;
}

std::vector<ScaledValue> rescale_geometric(std::span<const ScaledValue> returns, double log_factor) {
  std::vector<ScaledValue> out(returns.begin(), returns.end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n].log_scale += static_cast<double>(n) * log_factor;
  return out;
}

int detect_period(std::span<const ScaledValue> returns) {
  int g = 0;
  for (std::size_t n = 1; n < returns.size(); ++n)
    if (!returns[n].is_zero()) g = std::gcd(g, static_cast<int>(n));
  return g;
}

std::vector<IndexedValue> root_estimates(std::span<const ScaledValue> returns) {
  std::vector<IndexedValue> out;
  for (std::size_t n = 1; n < returns.size(); ++n)
    if (!returns[n].is_zero())
      out.push_back({static_cast<int>(n), std::exp(returns[n].log() / static_cast<double>(n))});
  return out;
}

std::vector<IndexedValue> gerl_ratio_sequence(std::span<const ScaledValue> returns, int period) {
  std::vector<IndexedValue> out;
  if (period <= 0) return out;
  const auto p = static_cast<std::size_t>(period);
  for (std::size_t n = p; n + p < returns.size(); n += p) {
    if (returns[n].is_zero() || returns[n + p].is_zero()) continue;
    const double log_ratio = returns[n + p].log() - returns[n].log();
    out.push_back({static_cast<int>(n), std::exp(log_ratio / static_cast<double>(period))});
  }
  return out;
}

Extrapolation richardson_extrapolate(std::span<const IndexedValue> ratios) {
  if (ratios.size() < 4) throw MeasureError("richardson_extrapolate needs at least 4 ratio points");
  const auto tail = ratios.subspan(ratios.size() / 2);
  // r = A + B x with x = 1/m; lambda = A, c = -B/A.
  const auto count = static_cast<double>(tail.size());
  double mx = 0, my = 0;
  for (const auto& r : tail) {
    mx += 1.0 / r.n;
    my += r.value;
  }
  mx /= count;
  my /= count;
  double sxx = 0, sxy = 0;
  for (const auto& r : tail) {
    const double dx = 1.0 / r.n - mx;
    sxx += dx * dx;
    sxy += dx * (r.value - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  Extrapolation out;
  out.lambda = my - slope * mx;
  out.c = out.lambda != 0 ? -slope / out.lambda : 0.0;
  double ss = 0;
  for (const auto& r : tail) {
    const double res = r.value - (out.lambda + slope / r.n);
    ss += res * res;
  }
  out.residual_rms = std::sqrt(ss / count);
  out.points_used = static_cast<int>(tail.size());
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::amenable_consistent: return "amenable-consistent";
    case Verdict::gap_detected: return "gap-detected";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict kesten_verdict(const SpectralReport& report, double tolerance) {
  const auto lambda = report.extrapolated_lambda();
  if (!lambda) return Verdict::inconclusive;
  if (std::abs(*lambda - report.lambda_bar) <= tolerance) return Verdict::amenable_consistent;
  if (report.lambda_bar - *lambda > tolerance && report.fekete_lower + tolerance < report.lambda_bar)
    return Verdict::gap_detected;
  return Verdict::inconclusive;
}

SpectralReport spectral_report(std::span<const ScaledValue> returns, double lambda_bar, double tolerance) {
  SpectralReport r;
  r.n_max = static_cast<int>(returns.size()) - 1;
  r.return_probs.assign(returns.begin(), returns.end());
  r.period = detect_period(returns);
  r.root_estimates = root_estimates(returns);
  r.gerl_ratios = gerl_ratio_sequence(returns, r.period);
  r.lambda_bar = lambda_bar;
  r.tolerance = tolerance;
  for (const auto& x : r.root_estimates)
    if (r.period > 0 && x.n % r.period == 0) r.fekete_lower = std::max(r.fekete_lower, x.value);
  if (r.gerl_ratios.size() >= 4) {
    r.extrapolation = richardson_extrapolate(r.gerl_ratios);
    r.extrapolated_from = "gerl_ratios";
  } else if (r.root_estimates.size() >= 4) {
    r.extrapolation = richardson_extrapolate(r.root_estimates);
    r.extrapolated_from = "root_estimates";
  } else {
    r.extrapolated_from = "none";
  }
  r.verdict = kesten_verdict(r, tolerance);
  switch (r.verdict) {
    case Verdict::amenable_consistent:
      r.note = "extrapolated spectral radius agrees with the abelianized value within tolerance; "
               "numerical evidence for equality, not a proof of amenability";
      break;
    case Verdict::gap_detected:
      r.note = "extrapolated spectral radius and the superadditive lower bound both sit below the "
               "abelianized value by more than the tolerance; numerical evidence of non-amenability";
      break;
    case Verdict::inconclusive:
      r.note = r.extrapolation ? "estimates neither match nor separate from the abelianized value at this horizon"
                               : "too few nonzero return probabilities to estimate the spectral radius";
      break;
  }
  return r;
}

double harmonic_check(const FinMeasure& mu, const Eigen::VectorXd& xi, int ball_radius) {
  const Group& G = mu.group();
  if (xi.size() != G.abelian_rank()) throw MeasureError("xi dimension does not match the abelianization rank");
  auto h = [&](const GroupElement& g) { return std::exp(xi.dot(to_eigen(G.project(g)))); };
  // The eigenvalue is lambda of the abelianized walk, min phi, not phi(xi):
  // only the minimizing xi makes h harmonic at that level.
  const double lambda = minimize_phi(pushforward(mu)).phi_min;

  const auto steps = G.generators_and_inverses();
  absl::flat_hash_set<GroupElement, GroupElementHash> seen{G.identity()};
  std::vector<GroupElement> ball{G.identity()};
  std::vector<GroupElement> frontier{G.identity()};
  for (int r = 0; r < ball_radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& s : steps) {
        auto x = G.multiply(g, s);
        if (seen.insert(x).second) {
          next.push_back(x);
          ball.push_back(std::move(x));
        }
      }
    frontier = std::move(next);
  }

  double worst = 0.0;
  for (const auto& g : ball) {
    // sum over s in g S_mu of mu(g^{-1} s) h(s), i.e. over t in S_mu with s = g t.
    double lhs = 0.0;
    for (const auto& t : mu.atoms()) lhs += t.weight * h(G.multiply(g, t.element));
    const double rhs = lambda * h(g);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return worst;
}

ScaledValue zeta_truncated(std::span<const ScaledValue> returns, double t, int N) {
  if (!(t > 0)) throw MeasureError("zeta_truncated requires t > 0");
  const int last = std::min<int>(N, static_cast<int>(returns.size()) - 1);
  const double log_t = std::log(t);
  std::vector<double> terms;
  for (int n = 1; n <= last; ++n)
    if (!returns[static_cast<std::size_t>(n)].is_zero())
      terms.push_back(returns[static_cast<std::size_t>(n)].log() - n * log_t);
  if (terms.empty()) return {};
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double x : terms) sum += std::exp(x - top);
  return {sum, top};
}

std::vector<ScaledValue> free_group_radial_oracle(int r, int n_max) {
  if (r < 2) throw MeasureError("free group rank must be >= 2");
  if (n_max < 0) throw MeasureError("n_max must be >= 0");
  // Distance chain: 0 -> 1 surely; d -> d-1 w.p. q = 1/(2r), d -> d+1 w.p. p = 1 - q.
  // Work with u_d = P(d) (q/p)^{d/2}, which evolves by the symmetric kernel
  // sqrt(pq) on both sides (and sqrt(q/p) for 0 -> 1), then renormalize by the
  // largest entry so P(0) = u_0 never underflows.
  const double q = 1.0 / (2.0 * r);
  const double p = 1.0 - q;
  const double s = std::sqrt(p * q);
  const double a = std::sqrt(q / p);
  std::vector<double> u(static_cast<std::size_t>(n_max) + 2, 0.0), next(u.size(), 0.0);
  u[0] = 1.0;
  double log_scale = 0.0;
  std::vector<ScaledValue> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.push_back({1.0, 0.0});
  for (int n = 1; n <= n_max; ++n) {
    const auto top = static_cast<std::size_t>(n);
    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(top) + 1, 0.0);
    next[0] = s * u[1];
    if (top >= 1) next[1] = a * u[0] + s * u[2];
    for (std::size_t d = 2; d <= top; ++d) next[d] = s * (u[d - 1] + u[d + 1]);
    u.swap(next);
    double peak = 0.0;
    for (std::size_t d = 0; d <= top; ++d) peak = std::max(peak, u[d]);
    for (std::size_t d = 0; d <= top; ++d) u[d] /= peak;
    log_scale += std::log(peak);
    out.push_back({u[0], log_scale});
  }
  return out;
}

}  // namespace rwg
