#include "oracles/oracles.hpp"
#include "rwg/errors.hpp"
#include "rwg/measures.hpp"

#include <doctest.h>

#include <cmath>

using namespace rwg;

namespace {

using Words = std::vector<std::pair<std::string, double>>;

FinMeasure measure(GroupDescriptor d, const Words& w) { return FinMeasure::from_words(Group(d), w); }

const GroupDescriptor kZ1{Family::lattice, 1};
const GroupDescriptor kF2{Family::free, 2};
const GroupDescriptor kHeis{Family::heisenberg, 0};
const GroupDescriptor kLamp{Family::lamplighter, 0};

FinMeasure heisenberg_asymmetric() { return measure(kHeis, {{"a", 0.4}, {"a-", 0.1}, {"b", 0.3}, {"b-", 0.2}}); }

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("convolution examples") {
    const auto mu = measure(kZ1, {{"x", 0.75}, {"x-", 0.25}});
    CHECK(convolve(mu, mu).weight_of(mu.group().identity()) == doctest::Approx(0.375).epsilon(1e-15));
    const auto f = measure(kF2, {{"a", 0.25}, {"a-", 0.25}, {"b", 0.25}, {"b-", 0.25}});
    CHECK(convolve(f, f).weight_of(f.group().identity()) == doctest::Approx(0.25).epsilon(1e-15));
    const auto d = FinMeasure::dirac(mu.group(), mu.group().identity());
    const auto dm = convolve(d, mu);
    REQUIRE(dm.size() == mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      CHECK(dm.atoms()[i].element == mu.atoms()[i].element);
      CHECK(dm.atoms()[i].weight == mu.atoms()[i].weight);
    }
  }

  TEST_CASE("power sequence examples") {
    const auto mu = measure(kZ1, {{"x", 0.75}, {"x-", 0.25}});
    const auto e = mu.group().identity();
    const auto t = power_sequence(mu, 4);
    CHECK(t.probability(e, 2).value() == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(t.probability(mu.group().evaluate_word("x"), 1).value() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(t.probability(e, 0).value() == 1.0);
    CHECK(t.probability(mu.group().evaluate_word("x"), 0).is_zero());
    const auto f = measure(kF2, {{"a", 0.25}, {"a-", 0.25}, {"b", 0.25}, {"b-", 0.25}});
    CHECK(power_sequence(f, 4).probability(f.group().identity(), 4).value() == doctest::Approx(7.0 / 64).epsilon(1e-14));
    const auto up = measure(kZ1, {{"x", 1.0}});
    const auto tu = power_sequence(up, 6);
    for (int n = 1; n <= 6; ++n) CHECK(tu.probability(up.group().identity(), n).is_zero());
    CHECK_THROWS_AS(t.probability(e, 5), std::out_of_range);
  }

  TEST_CASE("power sequence matches path enumeration") {
    for (const auto& mu : {heisenberg_asymmetric(), measure(kLamp, {{"s", 0.3}, {"t", 0.45}, {"t-", 0.25}})}) {
      const auto t = power_sequence(mu, 6);
      for (int n = 0; n <= 6; ++n) {
        const auto ref = oracle::path_enumeration(mu, n);
        CHECK(t.layer(n).support_size == ref.size());
        for (const auto& [g, p] : ref) CHECK(t.probability(g, n).value() == doctest::Approx(p).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("support cap fails fast naming n") {
    PowerOptions opt;
    opt.support_cap = 50;
    try {
      (void)power_sequence(heisenberg_asymmetric(), 10, opt);
      FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
      CHECK(std::string(e.what()).find("mu^{*") != std::string::npos);
    }
  }

  TEST_CASE("watched elements survive pruning") {
    const auto mu = heisenberg_asymmetric();
    const auto& G = mu.group();
    PowerOptions opt;
    opt.watch_only = std::vector<GroupElement>{G.evaluate_word("a"), G.evaluate_word("aab")};
    const auto pruned = power_sequence(mu, 7, opt);
    const auto full = power_sequence(mu, 7);
    for (int n = 0; n <= 7; ++n)
      for (const auto& g : {G.identity(), G.evaluate_word("a"), G.evaluate_word("aab")})
        CHECK(pruned.probability(g, n).value() == full.probability(g, n).value());
    CHECK_THROWS_AS(pruned.probability(G.evaluate_word("b"), 3), std::out_of_range);
  }

  TEST_CASE("pushforward examples") {
    const auto l = pushforward(measure(kLamp, {{"s", 1.0 / 3}, {"t", 1.0 / 3}, {"t-", 1.0 / 3}}));
    CHECK(l.k == 1);
    CHECK(l.weight_of({0}) == doctest::Approx(1.0 / 3));
    CHECK(l.weight_of({1}) == doctest::Approx(1.0 / 3));
    CHECK(l.weight_of({-1}) == doctest::Approx(1.0 / 3));
    const auto h = pushforward(heisenberg_asymmetric());
    CHECK(h.weight_of({1, 0}) == 0.4);
    CHECK(h.weight_of({-1, 0}) == 0.1);
    CHECK(h.weight_of({0, 1}) == 0.3);
    CHECK(h.weight_of({0, -1}) == 0.2);
    const auto z = measure(kZ1, {{"x", 0.75}, {"x-", 0.25}});
    CHECK(pushforward(z).atoms.size() == 2);
  }

  TEST_CASE("aperiodicity examples") {
    const auto sym = measure(kZ1, {{"x", 0.5}, {"x-", 0.5}});
    const auto r = aperiodicity_check(power_sequence(sym, 10), 10);
    CHECK(r.period == 2);
    CHECK(r.zero_steps == std::vector<int>{1, 3, 5, 7, 9});
    // mu(e) = 0.1 gives mu^{*1}(e) = 0.1 > 0, so the returns start at n = 1.
    const auto lazy = lazify(sym, 0.1);
    const auto rl = aperiodicity_check(power_sequence(lazy, 10), 10);
    CHECK(rl.period == 1);
    CHECK(rl.aperiodic_from == 1);
    const auto f = measure(kF2, {{"a", 0.25}, {"a-", 0.25}, {"b", 0.25}, {"b-", 0.25}});
    CHECK(aperiodicity_check(power_sequence(f, 8), 8).period == 2);
  }

  TEST_CASE("lazify") {
    const auto up = measure(kZ1, {{"x", 1.0}});
    CHECK_THROWS_AS(lazify(up, 0.0), MeasureError);
    CHECK_THROWS_AS(lazify(up, 1.0), MeasureError);
    const auto l = lazify(up, 0.5);
    CHECK(l.weight_of(up.group().identity()) == 0.5);
    CHECK(l.weight_of(up.group().evaluate_word("x")) == 0.5);
    CHECK(l.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("nondegeneracy examples") {
    CHECK(nondegeneracy_check(measure(kZ1, {{"x", 0.5}, {"x-", 0.5}}), 1).ok);
    const auto one_sided = nondegeneracy_check(measure(kZ1, {{"x", 1.0}}), 8);
    CHECK_FALSE(one_sided.ok);
    CHECK(one_sided.unreached.size() == 1);
    const auto ab = nondegeneracy_check(measure(kHeis, {{"a", 0.5}, {"b", 0.5}}), 6);
    CHECK_FALSE(ab.ok);
    CHECK(nondegeneracy_check(heisenberg_asymmetric(), 2).ok);
  }

  TEST_CASE("measure validation") {
    const Group G(kZ1);
    CHECK_THROWS_AS(FinMeasure(G, {{G.identity(), 0.5}}), MeasureError);
    CHECK_THROWS_AS(FinMeasure(G, {{G.identity(), -0.5}, {G.evaluate_word("x"), 1.5}}), MeasureError);
    CHECK_THROWS_AS(FinMeasure(G, {}), MeasureError);
    const auto merged = FinMeasure::from_words(G, Words{{"x", 0.25}, {"xx-x", 0.25}, {"x-", 0.5}});
    CHECK(merged.size() == 2);
    CHECK(merged.weight_of(G.evaluate_word("x")) == 0.5);
  }

  TEST_CASE("sampler is deterministic and starts at e") {
    const auto mu = heisenberg_asymmetric();
    CHECK(sample_path(mu, 0, 7) == mu.group().identity());
    CHECK(sample_path(mu, 25, 7) == sample_path(mu, 25, 7));
  }
}
