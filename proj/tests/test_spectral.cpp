#include "rwg/errors.hpp"
#include "rwg/spectral.hpp"
#include "rwg/stone.hpp"

#include <doctest.h>

#include <cmath>

using namespace rwg;

namespace {

using Words = std::vector<std::pair<std::string, double>>;

FinMeasure measure(GroupDescriptor d, const Words& w) { return FinMeasure::from_words(Group(d), w); }

FinMeasure free_uniform(int r) {
  Words w;
  for (int i = 0; i < r; ++i) {
    const std::string g(1, static_cast<char>('a' + i));
    w.emplace_back(g, 0.5 / r);
    w.emplace_back(g + "-", 0.5 / r);
  }
  return measure({Family::free, r}, w);
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("root estimates") {
    const auto sym = measure({Family::lattice, 1}, {{"x", 0.5}, {"x-", 0.5}});
    const auto roots = root_estimates(return_sequence(power_sequence(sym, 4)));
    REQUIRE(roots.size() == 2);  // odd n are omitted
    CHECK(roots[0].n == 2);
    CHECK(roots[0].value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    const auto fr = root_estimates(return_sequence(power_sequence(free_uniform(2), 2)));
    CHECK(fr[0].value == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("period and gerl ratios") {
    const auto ret = return_sequence(power_sequence(free_uniform(2), 10));
    CHECK(detect_period(ret) == 2);
    const auto g = gerl_ratio_sequence(ret, 2);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i].value >= g[i - 1].value);
    const auto single = measure({Family::lattice, 1}, {{"x", 1.0}});
    const auto none = return_sequence(power_sequence(single, 6));
    CHECK(detect_period(none) == 0);
    CHECK(gerl_ratio_sequence(none, detect_period(none)).empty());
    const auto report = spectral_report(none, 1.0);
    CHECK(report.verdict == Verdict::inconclusive);
    CHECK(report.extrapolated_from == "none");
  }

  TEST_CASE("lazy symmetric walk on Z has ratios tending to one") {
    const auto lazy = lazify(measure({Family::lattice, 1}, {{"x", 0.5}, {"x-", 0.5}}), 0.2);
    const auto rep = spectral_report(return_sequence(power_sequence(lazy, 2000)), 1.0);
    CHECK(rep.gerl_ratios.back().value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.verdict == Verdict::amenable_consistent);
  }

  TEST_CASE("richardson extrapolation") {
    std::vector<IndexedValue> exact, flat;
    for (int m = 10; m <= 40; ++m) {
      exact.push_back({m, 0.9 * (1.0 - 1.0 / m)});
      flat.push_back({m, 0.7});
    }
    const auto e = richardson_extrapolate(exact);
    CHECK(std::abs(e.lambda - 0.9) < 1e-9);
    CHECK(e.c == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(richardson_extrapolate(flat).lambda - 0.7) < 1e-12);
    CHECK_THROWS_AS(richardson_extrapolate(std::span(exact).first(3)), MeasureError);

    const auto oracle = free_group_radial_oracle(2, 1000);
    const auto ratios = gerl_ratio_sequence(oracle, 2);
    const double lam = richardson_extrapolate(ratios).lambda;
    CHECK(lam >= 0.8643);
    CHECK(lam <= 0.8677);
  }

  TEST_CASE("verdict rules") {
    SpectralReport r;
    r.lambda_bar = 1.0;
    r.fekete_lower = 0.7;
    r.extrapolation = Extrapolation{0.99, 0, 0, 10};
    CHECK(kesten_verdict(r, 0.02) == Verdict::amenable_consistent);
    r.extrapolation->lambda = 0.866;
    CHECK(kesten_verdict(r, 0.02) == Verdict::gap_detected);
    r.fekete_lower = 0.99;
    CHECK(kesten_verdict(r, 0.02) == Verdict::inconclusive);
    r.extrapolation.reset();
    CHECK(kesten_verdict(r, 0.02) == Verdict::inconclusive);
    CHECK(verdict_name(Verdict::gap_detected) == "gap-detected");
  }

  TEST_CASE("free group radial oracle") {
    const auto o = free_group_radial_oracle(2, 4);
    CHECK(o[2].value() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(o[4].value() == doctest::Approx(7.0 / 64).epsilon(1e-14));
    CHECK(o[3].is_zero());
    for (int r : {2, 3}) {
      const auto conv = return_sequence(power_sequence(free_uniform(r), 10));
      const auto dp = free_group_radial_oracle(r, 10);
      for (int n = 0; n <= 10; ++n) {
        if (conv[n].is_zero()) {
          CHECK(dp[n].is_zero());
          continue;
        }
        CHECK(std::abs(dp[n].value() / conv[n].value() - 1.0) <= 1e-12);
      }
    }
  }

  TEST_CASE("harmonic check") {
    const auto sym = measure({Family::heisenberg, 0}, {{"a", 0.25}, {"a-", 0.25}, {"b", 0.25}, {"b-", 0.25}});
    CHECK(harmonic_check(sym, Eigen::VectorXd::Zero(2), 3) == 0.0);
    const auto mu = measure({Family::heisenberg, 0}, {{"a", 0.4}, {"a-", 0.1}, {"b", 0.3}, {"b-", 0.2}});
    const auto xi = minimize_phi(pushforward(mu)).xi;
    CHECK(harmonic_check(mu, xi, 4) <= 1e-12);
    Eigen::VectorXd wrong = xi;
    wrong[0] += 0.1;
    CHECK(harmonic_check(mu, wrong, 4) > 1e-3);
  }

  TEST_CASE("zeta partial sums") {
    const auto ret = free_group_radial_oracle(2, 400);
    CHECK(zeta_truncated(ret, 2.0, 400).value() < 1.0);
    // t = 0.99 > lambda: converged well before N = 400.
    const double a = zeta_truncated(ret, 0.99, 200).value(), b = zeta_truncated(ret, 0.99, 400).value();
    CHECK(std::abs(b - a) < 1e-6 * b);
    // t = 0.80 < lambda: still growing geometrically.
    CHECK(zeta_truncated(ret, 0.80, 400).log() - zeta_truncated(ret, 0.80, 200).log() > 10.0);
  }
}
