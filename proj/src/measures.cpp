#include "rwg/measures.hpp"

#include "parallel.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace rwg {

namespace {

bool element_less(const std::pair<GroupElement, double>& a, const GroupElement& g) { return a.first < g; }

void sort_and_merge(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.element < b.element; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (auto& a : atoms) {
    if (!merged.empty() && merged.back().element == a.element)
      merged.back().weight += a.weight;
    else
      merged.push_back(std::move(a));
  }
  atoms = std::move(merged);
}

}  // namespace

FinMeasure::FinMeasure(Group group, std::vector<Atom> atoms, bool is_probability)
    : group_(std::move(group)), atoms_(std::move(atoms)), is_probability_(is_probability) {
  if (atoms_.empty()) throw MeasureError("measure support must be nonempty");
  for (const auto& a : atoms_) {
    if (!group_.contains(a.element)) throw MeasureError("atom " + to_string(a.element) + " is not in the group");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw MeasureError("atom weights must be finite and strictly positive");
  }
  sort_and_merge(atoms_);
  if (is_probability_ && std::abs(total_mass() - 1.0) > kMassTolerance)
    throw MeasureError("probability weights sum to " + std::to_string(total_mass()));
}

FinMeasure FinMeasure::from_words(Group group, std::span<const std::pair<std::string, double>> words,
                                  bool is_probability) {
  std::vector<Atom> atoms;
  atoms.reserve(words.size());
  for (const auto& [word, weight] : words) atoms.push_back({group.evaluate_word(word), weight});
  return FinMeasure(std::move(group), std::move(atoms), is_probability);
}

FinMeasure FinMeasure::dirac(Group group, GroupElement g) {
  std::vector<Atom> atoms{{std::move(g), 1.0}};
  return FinMeasure(std::move(group), std::move(atoms), true);
}

double FinMeasure::total_mass() const {
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight;
  return total;
}

std::optional<std::size_t> FinMeasure::index_of(const GroupElement& g) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), g,
                             [](const Atom& a, const GroupElement& x) { return a.element < x; });
  if (it == atoms_.end() || !(it->element == g)) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

double FinMeasure::weight_of(const GroupElement& g) const {
  auto idx = index_of(g);
  return idx ? atoms_[*idx].weight : 0.0;
}

double LatticeMeasure::total_mass() const {
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  return total;
}

double LatticeMeasure::weight_of(const IntVector& m) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), m,
                             [](const LatticeAtom& a, const IntVector& x) { return a.point < x; });
  return (it != atoms.end() && it->point == m) ? it->weight : 0.0;
}

LatticeMeasure lattice_measure(int k, std::vector<LatticeAtom> atoms) {
  std::map<IntVector, double> merged;
  for (auto& a : atoms) {
    if (static_cast<int>(a.point.size()) != k) throw MeasureError("lattice atom has wrong dimension");
    if (!(a.weight > 0.0)) throw MeasureError("lattice weights must be strictly positive");
    merged[a.point] += a.weight;
  }
  LatticeMeasure out{k, {}};
  for (auto& [p, w] : merged) out.atoms.push_back({p, w});
  return out;
}

FinMeasure convolve(const FinMeasure& mu, const FinMeasure& nu) {
  if (!(mu.group() == nu.group())) throw GroupError("descriptor mismatch in convolve");
  const Group& G = mu.group();
  // (mu * nu)(g) = sum_{ab = g} mu(a) nu(b); each g accumulates in nu-atom order.
  absl::flat_hash_map<GroupElement, double, GroupElementHash> acc;
  for (const auto& b : nu.atoms())
    for (const auto& a : mu.atoms()) acc[G.multiply(a.element, b.element)] += a.weight * b.weight;
  std::vector<Atom> atoms;
  atoms.reserve(acc.size());
  for (auto& [g, w] : acc) atoms.push_back({g, w});
  return FinMeasure(G, std::move(atoms), mu.is_probability() && nu.is_probability());
}

LatticeMeasure pushforward(const FinMeasure& mu) {
  std::map<IntVector, double> fibres;
  for (const auto& a : mu.atoms()) fibres[mu.group().project(a.element)] += a.weight;
  LatticeMeasure out{mu.group().abelian_rank(), {}};
  out.atoms.reserve(fibres.size());
  for (auto& [m, w] : fibres) out.atoms.push_back({m, w});
  return out;
}

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b) {
  if (a.k != b.k) throw MeasureError("rank mismatch in lattice convolve");
  std::map<IntVector, double> acc;
  for (const auto& y : b.atoms)
    for (const auto& x : a.atoms) {
      IntVector m(x.point);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += y.point[i];
      acc[m] += x.weight * y.weight;
    }
  LatticeMeasure out{a.k, {}};
  for (auto& [m, w] : acc) out.atoms.push_back({m, w});
  return out;
}

FinMeasure lazify(const FinMeasure& mu, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw MeasureError("lazify requires 0 < eps < 1");
  std::vector<Atom> atoms;
  atoms.reserve(mu.size() + 1);
  for (const auto& a : mu.atoms()) atoms.push_back({a.element, (1.0 - eps) * a.weight});
  atoms.push_back({mu.group().identity(), eps});
  return FinMeasure(mu.group(), std::move(atoms), mu.is_probability());
}

ConvolutionTable::ConvolutionTable(FinMeasure base, std::vector<PowerLayer> layers,
                                   std::optional<std::vector<GroupElement>> watch)
    : base_(std::move(base)), layers_(std::move(layers)), watch_(std::move(watch)) {
  if (layers_.empty()) throw MeasureError("convolution table needs at least the n = 0 layer");
  if (watch_) std::sort(watch_->begin(), watch_->end());
}

const PowerLayer& ConvolutionTable::layer(int n) const {
  if (n < 0 || n > n_max())
    throw std::out_of_range("power n = " + std::to_string(n) + " outside [0, " + std::to_string(n_max()) + "]");
  return layers_[static_cast<std::size_t>(n)];
}

ScaledValue ConvolutionTable::probability(const GroupElement& g, int n) const {
  const auto& L = layer(n);
  auto it = std::lower_bound(L.atoms.begin(), L.atoms.end(), g, element_less);
  if (it != L.atoms.end() && it->first == g) return {it->second, L.scale_log};
  if (!L.complete && !(g == base_.group().identity()) &&
      !(watch_ && std::binary_search(watch_->begin(), watch_->end(), g))) {
    throw std::out_of_range("element " + to_string(g) + " was not retained at n = " + std::to_string(n));
  }
  return {};
}

double ConvolutionTable::total_mass(int n) const {
  const auto& L = layer(n);
  return L.stored_mass * std::exp(L.scale_log);
}

namespace {

PowerLayer identity_layer(const Group& G) {
  PowerLayer L;
  L.atoms.emplace_back(G.identity(), 1.0);
  L.stored_mass = 1.0;
  L.support_size = 1;
  return L;
}

PowerLayer next_layer(const PowerLayer& prev, const FinMeasure& mu, int n, const PowerOptions& opt) {
  const Group& G = mu.group();
  absl::flat_hash_map<GroupElement, double, GroupElementHash> acc;
  acc.reserve(prev.atoms.size() * 2);
  // Every target h receives at most one contribution per step letter s, and
  // letters are visited in atom order, so the floating-point sum for each h is
  // independent of hashing and of the thread count.
  const auto chunks = detail::chunk_count(opt.threads, prev.atoms.size());
  std::vector<GroupElement> products;
  for (const auto& s : mu.atoms()) {
    if (chunks == 1) {
      for (const auto& [g, p] : prev.atoms) acc[G.multiply(g, s.element)] += p * s.weight;
    } else {
      products.resize(prev.atoms.size());
      detail::parallel_chunks(opt.threads, prev.atoms.size(), [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) products[i] = G.multiply(prev.atoms[i].first, s.element);
      });
      for (std::size_t i = 0; i < products.size(); ++i) acc[std::move(products[i])] += prev.atoms[i].second * s.weight;
    }
    if (acc.size() > opt.support_cap)
      throw ResourceError("support of mu^{*" + std::to_string(n) + "} exceeds the cap of " +
                          std::to_string(opt.support_cap) + " atoms");
  }
  PowerLayer L;
  L.atoms.reserve(acc.size());
  for (auto& kv : acc) L.atoms.emplace_back(kv.first, kv.second);
  acc = {};
  std::sort(L.atoms.begin(), L.atoms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double mass = 0.0;
  for (const auto& a : L.atoms) mass += a.second;
  L.support_size = L.atoms.size();
  L.scale_log = prev.scale_log;
  if (opt.rescale && mass > 0.0) {
    for (auto& a : L.atoms) a.second /= mass;
    L.scale_log += std::log(mass);
    L.stored_mass = 1.0;
  } else {
    L.stored_mass = mass;
  }
  return L;
}

void prune(PowerLayer& L, const Group& G, const std::vector<GroupElement>& watch) {
  std::vector<std::pair<GroupElement, double>> kept;
  auto keep = [&](const GroupElement& g) {
    auto it = std::lower_bound(L.atoms.begin(), L.atoms.end(), g, element_less);
    if (it != L.atoms.end() && it->first == g) kept.push_back(*it);
  };
  keep(G.identity());
  for (const auto& g : watch) keep(g);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  kept.erase(std::unique(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             kept.end());
  L.atoms = std::move(kept);
  L.complete = false;
}

}  // namespace

ConvolutionTable power_sequence(const FinMeasure& mu, int n_max, const PowerOptions& options) {
  if (!mu.is_probability()) throw MeasureError("power_sequence requires a probability measure");
  if (n_max < 1) throw MeasureError("power_sequence requires n_max >= 1");
  std::vector<PowerLayer> layers;
  layers.reserve(static_cast<std::size_t>(n_max) + 1);
  layers.push_back(identity_layer(mu.group()));
  for (int n = 1; n <= n_max; ++n) {
    layers.push_back(next_layer(layers.back(), mu, n, options));
    if (options.watch_only && n >= 2) prune(layers[static_cast<std::size_t>(n) - 1], mu.group(), *options.watch_only);
  }
  if (options.watch_only && options.prune_last) prune(layers.back(), mu.group(), *options.watch_only);
  return ConvolutionTable(mu, std::move(layers), options.watch_only);
}

ScaledValue return_probability(const ConvolutionTable& table, const GroupElement& g, int n) {
  return table.probability(g, n);
}

AperiodicityReport aperiodicity_check(const ConvolutionTable& table, int horizon) {
  if (horizon > table.n_max()) horizon = table.n_max();
  AperiodicityReport r;
  r.horizon = horizon;
  const auto e = table.base().group().identity();
  int g = 0;
  std::optional<int> run_start;
  for (int n = 1; n <= horizon; ++n) {
    if (table.probability(e, n).is_zero()) {
      r.zero_steps.push_back(n);
      run_start.reset();
    } else {
      g = std::gcd(g, n);
      if (!run_start) run_start = n;
    }
  }
  r.period = g;
  r.aperiodic_from = run_start;
  if (g == 0)
    r.note = "no return to the identity up to n = " + std::to_string(horizon);
  else if (g > 1)
    r.note = "returns only at multiples of " + std::to_string(g) + " up to n = " + std::to_string(horizon) +
             " (periodicity evidence, not a proof)";
  else
    r.note = "returns at every n >= " + std::to_string(*run_start) + " up to n = " + std::to_string(horizon) +
             " (finite-horizon evidence of aperiodicity, not a proof)";
  return r;
}

NondegeneracyReport nondegeneracy_check(const FinMeasure& mu, int radius) {
  if (radius < 1) throw MeasureError("nondegeneracy_check requires radius >= 1");
  const Group& G = mu.group();
  absl::flat_hash_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> frontier;
  for (const auto& a : mu.atoms())
    if (seen.insert(a.element).second) frontier.push_back(a.element);
  for (int len = 2; len <= radius && !frontier.empty(); ++len) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& a : mu.atoms()) {
        auto h = G.multiply(g, a.element);
        if (seen.insert(h).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  NondegeneracyReport r;
  r.radius = radius;
  for (const auto& target : G.generators_and_inverses())
    if (!seen.contains(target)) r.unreached.push_back(target);
  r.ok = r.unreached.empty();
  r.note = r.ok ? "every generator and inverse is a positive product of support elements of length <= " +
                      std::to_string(radius)
                : "unverified: some generators are not reached by positive products of length <= " +
                      std::to_string(radius) + " (bounded search, not a proof of degeneracy)";
  return r;
}

PathSampler::PathSampler(const FinMeasure& mu, std::uint64_t seed) : mu_(&mu), engine_(seed) {
  double c = 0.0;
  for (const auto& a : mu.atoms()) cumulative_.push_back(c += a.weight);
}

const GroupElement& PathSampler::step() {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53 * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  if (idx >= cumulative_.size()) idx = cumulative_.size() - 1;
  return mu_->atoms()[idx].element;
}

GroupElement PathSampler::path(int n) {
  const Group& G = mu_->group();
  GroupElement g = G.identity();
  for (int i = 0; i < n; ++i) g = G.multiply(g, step());
  return g;
}

GroupElement sample_path(const FinMeasure& mu, int n, std::uint64_t seed) {
  PathSampler sampler(mu, seed);
  return sampler.path(n);
}

}  // namespace rwg
