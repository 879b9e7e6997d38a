#pragma once

// Finitely supported measures on a group, convolution powers and the
// finite-horizon diagnostics that go with them.

#include "rwg/errors.hpp"
#include "rwg/groups.hpp"
#include "rwg/scaled.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rwg {

struct Atom {
  GroupElement element;
  double weight = 0.0;
};

// Finitely supported measure with strictly positive weights. Atoms are kept
// sorted by element order with duplicates merged.
class FinMeasure {
public:
  static constexpr double kMassTolerance = 1e-12;

  FinMeasure(Group group, std::vector<Atom> atoms, bool is_probability = true);

  // Weighted words, e.g. {{"a", 0.4}, {"a-", 0.1}}; duplicate elements are summed.
  static FinMeasure from_words(Group group, std::span<const std::pair<std::string, double>> words,
                               bool is_probability = true);
  static FinMeasure dirac(Group group, GroupElement g);

  const Group& group() const noexcept { return group_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool is_probability() const noexcept { return is_probability_; }
  double total_mass() const;

  // 0 when g is outside the support.
  double weight_of(const GroupElement& g) const;
  // Index of g in atoms(), if present.
  std::optional<std::size_t> index_of(const GroupElement& g) const;

private:
  Group group_;
  std::vector<Atom> atoms_;
  bool is_probability_;
};

struct LatticeAtom {
  IntVector point;
  double weight = 0.0;
};

// Finitely supported measure on Z^k, atoms sorted lexicographically.
struct LatticeMeasure {
  int k = 0;
  std::vector<LatticeAtom> atoms;

  double total_mass() const;
  double weight_of(const IntVector& m) const;
};

LatticeMeasure lattice_measure(int k, std::vector<LatticeAtom> atoms);

FinMeasure convolve(const FinMeasure& mu, const FinMeasure& nu);
LatticeMeasure pushforward(const FinMeasure& mu);
LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b);

// (1 - eps) mu + eps delta_e, requires 0 < eps < 1.
FinMeasure lazify(const FinMeasure& mu, double eps);

// One convolution power. Stored weights are mantissas: mu^{*n}(g) = weight * exp(scale_log).
struct PowerLayer {
  std::vector<std::pair<GroupElement, double>> atoms;  // sorted by element
  double scale_log = 0.0;
  double stored_mass = 0.0;   // sum of stored mantissas over the full support
  std::size_t support_size = 0;
  bool complete = true;       // false when pruned to the watched elements
};

struct PowerOptions {
  bool rescale = true;
  std::size_t support_cap = 50'000'000;
  unsigned threads = 1;
  // When set, every layer except the last one computed is pruned to the
  // identity plus these elements once it is no longer needed.
  std::optional<std::vector<GroupElement>> watch_only;
  // With watch_only, also prune the final layer.
  bool prune_last = false;
};

class ConvolutionTable {
public:
  // watch lists the elements retained in pruned layers (identity implied);
  // a watched element missing from a pruned layer has probability zero.
  ConvolutionTable(FinMeasure base, std::vector<PowerLayer> layers,
                   std::optional<std::vector<GroupElement>> watch = std::nullopt);

  const FinMeasure& base() const noexcept { return base_; }
  int n_max() const noexcept { return static_cast<int>(layers_.size()) - 1; }
  const PowerLayer& layer(int n) const;
  const std::optional<std::vector<GroupElement>>& watch() const noexcept { return watch_; }

  // mu^{*n}(g) as (mantissa, log-scale); n = 0 gives delta_e.
  ScaledValue probability(const GroupElement& g, int n) const;
  double total_mass(int n) const;

private:
  FinMeasure base_;
  std::vector<PowerLayer> layers_;
  std::optional<std::vector<GroupElement>> watch_;  // sorted
};

// Iterates mu^{*(n+1)} = mu^{*n} * mu for n < n_max. Throws ResourceError
// naming the step when a support exceeds options.support_cap.
ConvolutionTable power_sequence(const FinMeasure& mu, int n_max, const PowerOptions& options = {});

ScaledValue return_probability(const ConvolutionTable& table, const GroupElement& g, int n);

struct AperiodicityReport {
  int horizon = 0;
  std::optional<int> aperiodic_from;  // smallest n0 with mu^{*n}(e) > 0 on [n0, horizon]
  int period = 0;                     // gcd of returning steps; 0 if no return observed
  std::vector<int> zero_steps;        // n in [1, horizon] with mu^{*n}(e) = 0
  std::string note;
};

AperiodicityReport aperiodicity_check(const ConvolutionTable& table, int horizon);

struct NondegeneracyReport {
  bool ok = false;
  int radius = 0;
  std::vector<GroupElement> unreached;  // standard generators or inverses not found
  std::string note;
};

// Bounded search over positive products of support elements of length <= radius.
NondegeneracyReport nondegeneracy_check(const FinMeasure& mu, int radius);

// Draws i.i.d. steps from mu. The engine is std::mt19937_64 (fully specified by
// the standard); a uniform u in [0,1) is (draw >> 11) * 2^-53 and selects the
// first atom whose cumulative weight exceeds u * total_mass.
class PathSampler {
public:
  PathSampler(const FinMeasure& mu, std::uint64_t seed);

  const GroupElement& step();
  GroupElement path(int n);

private:
  const FinMeasure* mu_;
  std::mt19937_64 engine_;
  std::vector<double> cumulative_;
};

GroupElement sample_path(const FinMeasure& mu, int n, std::uint64_t seed);

}  // namespace rwg
