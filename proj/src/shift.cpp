#include "rwg/shift.hpp"

#include "parallel.hpp"
#include "rwg/stone.hpp"

#include <algorithm>
#include <cmath>

namespace rwg {

CylinderWord make_cylinder(const FinMeasure& mu, std::vector<GroupElement> letters) {
  if (letters.empty()) throw MeasureError("cylinder word must have at least one letter");
  for (const auto& l : letters)
    if (!mu.index_of(l)) throw MeasureError("cylinder letter " + to_string(l) + " is outside the support");
  return CylinderWord{std::move(letters)};
}

double nu_xi_cylinder(const FinMeasure& mu_xi, const CylinderWord& u) {
  double w = 1.0;
  for (const auto& l : u.letters) {
    const auto idx = mu_xi.index_of(l);
    if (!idx) throw MeasureError("cylinder letter " + to_string(l) + " is outside the support");
    w *= mu_xi.atoms()[*idx].weight;
  }
  return w;
}

double m_n_cylinder(const ConvolutionTable& table_xi, const CylinderWord& u, int n) {
  const auto& mu_xi = table_xi.base();
  const Group& G = mu_xi.group();
  const int k = static_cast<int>(u.size());
  if (n < k) throw MeasureError("m_n_cylinder requires n >= k");
  const auto denom = table_xi.probability(G.identity(), n);
  if (denom.is_zero())
    throw MeasureError("mu_xi^{*" + std::to_string(n) + "}(e) = 0 (periodic walk); m_n is undefined");
  GroupElement word = G.identity();
  for (const auto& l : u.letters) word = G.multiply(word, l);
  const auto tail = table_xi.probability(G.inverse(word), n - k);
  return nu_xi_cylinder(mu_xi, u) * ratio(tail, denom);
}

namespace {

double slope_against_n(const std::vector<EquidistRow>& rows) {
  if (rows.size() < 2) return 0.0;
  double mx = 0, my = 0;
  for (const auto& r : rows) {
    mx += r.n;
    my += r.deviation;
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    sxx += (r.n - mx) * (r.n - mx);
    sxy += (r.n - mx) * (r.deviation - my);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

EquidistReport equidist_report(const ConvolutionTable& table_xi, const CylinderWord& u, int n_first, int n_last) {
  EquidistReport rep;
  rep.cylinder = u;
  rep.nu_xi = nu_xi_cylinder(table_xi.base(), u);
  n_first = std::max(n_first, static_cast<int>(u.size()));
  n_last = std::min(n_last, table_xi.n_max());
  for (int n = n_first; n <= n_last; ++n) {
    const double m = m_n_cylinder(table_xi, u, n);
    rep.rows.push_back({n, m, std::abs(m - rep.nu_xi)});
  }
  if (!rep.rows.empty()) {
    const std::size_t start = rep.rows.size() - (rep.rows.size() + 3) / 4;
    for (std::size_t i = start; i < rep.rows.size(); ++i)
      rep.final_quartile_max_deviation = std::max(rep.final_quartile_max_deviation, rep.rows[i].deviation);
  }
  rep.deviation_slope = slope_against_n(rep.rows);
  rep.trending_down = rep.deviation_slope < 0;
  return rep;
}

EquidistReport equidist_report(const FinMeasure& mu, const Eigen::VectorXd& xi, const CylinderWord& u, int n_first,
                               int n_last, const PowerOptions& options) {
  const auto mu_xi = tilt_measure(mu, xi);
  PowerOptions opt = options;
  if (opt.watch_only) {
    const Group& G = mu.group();
    GroupElement word = G.identity();
    for (const auto& l : u.letters) word = G.multiply(word, l);
    opt.watch_only->push_back(G.inverse(word));
  }
  const auto table = power_sequence(mu_xi, n_last, opt);
  return equidist_report(table, u, n_first, n_last);
}

namespace {

struct Enumerator {
  const FinMeasure& mu;
  std::vector<std::size_t> pattern;
  std::vector<double> weights;  // normalized to total mass one
  int n;
  bool loops_only;

  // Depth-first over all words with the given first letter.
  OrbitHistogram run(std::size_t first) const {
    OrbitHistogram h{n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0), 0.0};
    const Group& G = mu.group();
    const auto S = weights.size();
    const auto len = static_cast<std::size_t>(n);
    std::vector<std::size_t> word(len, 0);
    std::vector<double> prefix_weight(len + 1, 1.0);
    std::vector<GroupElement> prefix_product;
    if (loops_only) prefix_product.assign(len + 1, G.identity());

    auto descend = [&](std::size_t depth, std::size_t letter) {
      word[depth] = letter;
      prefix_weight[depth + 1] = prefix_weight[depth] * weights[letter];
      if (loops_only) prefix_product[depth + 1] = G.multiply(prefix_product[depth], mu.atoms()[letter].element);
    };

    descend(0, first);
    std::size_t depth = 1;
    // Odometer over positions 1..n-1.
    std::vector<std::size_t> next(len + 1, 0);
    while (true) {
      if (depth == len) {
        if (!loops_only || prefix_product[len] == G.identity()) {
          std::size_t count = 0;
          for (std::size_t j = 0; j < len; ++j) {
            bool match = true;
            for (std::size_t i = 0; i < pattern.size() && match; ++i) match = word[(j + i) % len] == pattern[i];
            count += match ? 1 : 0;
          }
          h.weight[count] += prefix_weight[len];
        }
        --depth;
        if (depth == 0) break;
        continue;
      }
      if (next[depth] == S) {
        next[depth] = 0;
        --depth;
        if (depth == 0) break;
        continue;
      }
      descend(depth, next[depth]++);
      ++depth;
    }
    for (double w : h.weight) h.total += w;
    return h;
  }
};

}  // namespace

OrbitHistogram orbit_histogram(const FinMeasure& mu_xi, const CylinderWord& u, int n, bool loops_only,
                               const EnumerationOptions& options) {
  if (n < 1) throw MeasureError("orbit_histogram requires n >= 1");
  const double words = std::pow(static_cast<double>(mu_xi.size()), n);
  if (words > options.max_words)
    throw ResourceError("enumerating |S|^n = " + std::to_string(words) + " words exceeds the guard of " +
                        std::to_string(options.max_words));
  Enumerator en{mu_xi, {}, {}, n, loops_only};
  for (const auto& l : u.letters) {
    const auto idx = mu_xi.index_of(l);
    if (!idx) throw MeasureError("cylinder letter " + to_string(l) + " is outside the support");
    en.pattern.push_back(*idx);
  }
  const double mass = mu_xi.total_mass();
  for (const auto& a : mu_xi.atoms()) en.weights.push_back(a.weight / mass);

  const std::size_t S = mu_xi.size();
  std::vector<OrbitHistogram> parts(S);
  detail::parallel_chunks(options.threads, S, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) parts[i] = en.run(i);
  });
  OrbitHistogram out{n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0), 0.0};
  for (const auto& p : parts)
    for (std::size_t c = 0; c < out.weight.size(); ++c) out.weight[c] += p.weight[c];
  for (double w : out.weight) out.total += w;
  return out;
}

double pressure_finite_n(const OrbitHistogram& histogram, double t) {
  // log sum_c W_c e^{tc} / Z computed as log1p(sum_c (W_c/Z) expm1(tc)).
  double excess = 0.0;
  for (std::size_t c = 0; c < histogram.weight.size(); ++c)
    excess += (histogram.weight[c] / histogram.total) * std::expm1(t * static_cast<double>(c));
  return std::log1p(excess) / histogram.n;
}

double pressure_finite_n(const FinMeasure& mu_xi, const CylinderWord& u, double t, int n,
                         const EnumerationOptions& options) {
  return pressure_finite_n(orbit_histogram(mu_xi, u, n, false, options), t);
}

double pressure_derivative(const OrbitHistogram& histogram, double h) {
  return (pressure_finite_n(histogram, h) - pressure_finite_n(histogram, -h)) / (2 * h);
}

double ld_tail_mass(const OrbitHistogram& histogram, double nu, double eps) {
  double tail = 0.0;
  for (std::size_t c = 0; c < histogram.weight.size(); ++c)
    if (std::abs(static_cast<double>(c) / histogram.n - nu) > eps) tail += histogram.weight[c];
  return tail;
}

double ld_tail_mass(const FinMeasure& mu_xi, const CylinderWord& u, double eps, int n,
                    const EnumerationOptions& options) {
  return ld_tail_mass(orbit_histogram(mu_xi, u, n, false, options), nu_xi_cylinder(mu_xi, u), eps);
}

double ld_tail_mass_loops(const FinMeasure& mu_xi, const CylinderWord& u, double eps, int n,
                          const EnumerationOptions& options) {
  return ld_tail_mass(orbit_histogram(mu_xi, u, n, true, options), nu_xi_cylinder(mu_xi, u), eps);
}

}  // namespace rwg
