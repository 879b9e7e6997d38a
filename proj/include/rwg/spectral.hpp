#pragma once

// Spectral-radius estimation from return probabilities and the comparison
// of lambda(G, mu) with lambda(Zbar, mubar) = phi(xi).

#include "rwg/measures.hpp"
#include "rwg/scaled.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rwg {

struct IndexedValue {
  int n = 0;
  double value = 0.0;
};

// mu^{*n}(e) for n = 0..n_max.
std::vector<ScaledValue> return_sequence(const ConvolutionTable& table);

// Multiplies the n-th entry by factor^n, e.g. phi(xi)^n to recover mu from mu_xi.
std::vector<ScaledValue> rescale_geometric(std::span<const ScaledValue> returns, double log_factor);

// gcd of {n >= 1 : returns[n] > 0}; 0 when nothing returns.
int detect_period(std::span<const ScaledValue> returns);

// (mu^{*n}(e))^{1/n} for every n >= 1 with a nonzero return.
std::vector<IndexedValue> root_estimates(std::span<const ScaledValue> returns);

// (mu^{*(n+p)}(e) / mu^{*n}(e))^{1/p} for n a positive multiple of the period p.
std::vector<IndexedValue> gerl_ratio_sequence(std::span<const ScaledValue> returns, int period);

struct Extrapolation {
  double lambda = 0.0;
  double c = 0.0;             // r_m ~ lambda (1 - c/m)
  double residual_rms = 0.0;
  int points_used = 0;
};

// Least-squares fit of r_m = lambda (1 - c/m) on the last half of the sequence.
Extrapolation richardson_extrapolate(std::span<const IndexedValue> ratios);

enum class Verdict { amenable_consistent, gap_detected, inconclusive };
std::string_view verdict_name(Verdict v);

struct SpectralReport {
  int n_max = 0;
  int period = 0;
  std::vector<ScaledValue> return_probs;
  std::vector<IndexedValue> root_estimates;
  std::vector<IndexedValue> gerl_ratios;
  double fekete_lower = 0.0;
  std::optional<Extrapolation> extrapolation;
  std::string extrapolated_from;  // "gerl_ratios", "root_estimates" or "none"
  double lambda_bar = 1.0;
  double tolerance = 0.02;
  Verdict verdict = Verdict::inconclusive;
  std::string note;

  std::optional<double> extrapolated_lambda() const {
    return extrapolation ? std::optional<double>(extrapolation->lambda) : std::nullopt;
  }
  std::optional<double> gap() const {
    return extrapolation ? std::optional<double>(lambda_bar - extrapolation->lambda) : std::nullopt;
  }
};

SpectralReport spectral_report(std::span<const ScaledValue> returns, double lambda_bar, double tolerance = 0.02);

Verdict kesten_verdict(const SpectralReport& report, double tolerance);

// Largest relative residual of sum_t mu(t) h(g t) = lambda h(g), h(g) = e^{<xi, pi(g)>}
// and lambda = min phi of the abelianized walk, over the ball of the given
// radius in the standard generators. Small only at the minimizing xi.
double harmonic_check(const FinMeasure& mu, const Eigen::VectorXd& xi, int ball_radius);

// sum_{n=1}^{N} mu^{*n}(e) t^{-n}, N limited by the available returns.
ScaledValue zeta_truncated(std::span<const ScaledValue> returns, double t, int N);

// mu^{*n}(e), n = 0..n_max, for the uniform walk on the free group of rank r,
// from the birth-death chain of the distance to the identity.
std::vector<ScaledValue> free_group_radial_oracle(int r, int n_max);

}  // namespace rwg
