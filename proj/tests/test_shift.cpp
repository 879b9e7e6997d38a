#include "oracles/oracles.hpp"
#include "rwg/errors.hpp"
#include "rwg/shift.hpp"
#include "rwg/stone.hpp"

#include <doctest.h>

#include <cmath>

using namespace rwg;

namespace {

using Words = std::vector<std::pair<std::string, double>>;

FinMeasure measure(GroupDescriptor d, const Words& w) { return FinMeasure::from_words(Group(d), w); }

FinMeasure tilted(const FinMeasure& mu) { return tilt_measure(mu, minimize_phi(pushforward(mu)).xi); }

FinMeasure z1_lazy_tilted() {
  return tilted(lazify(measure({Family::lattice, 1}, {{"x", 0.75}, {"x-", 0.25}}), 0.2));
}

CylinderWord cyl(const FinMeasure& mu, const std::vector<std::size_t>& idx) {
  std::vector<GroupElement> letters;
  for (auto i : idx) letters.push_back(mu.atoms()[i].element);
  return make_cylinder(mu, letters);
}

}  // namespace

TEST_SUITE("shift") {
  TEST_CASE("bernoulli cylinder weights") {
    const auto mx = z1_lazy_tilted();
    const auto& G = mx.group();
    const auto plus = G.evaluate_word("x");
    CHECK(nu_xi_cylinder(mx, make_cylinder(mx, {plus})) == mx.weight_of(plus));
    CHECK(nu_xi_cylinder(mx, make_cylinder(mx, {plus, plus})) == mx.weight_of(plus) * mx.weight_of(plus));
    double total = 0.0;
    oracle::for_each_word(mx.size(), 3, [&](const std::vector<std::size_t>& w) { total += nu_xi_cylinder(mx, cyl(mx, w)); });
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK_THROWS_AS(make_cylinder(mx, {G.evaluate_word("xx")}), MeasureError);
    CHECK_THROWS_AS(make_cylinder(mx, {}), MeasureError);
  }

  TEST_CASE("m_n at n = k uses the delta convention") {
    const auto mx = z1_lazy_tilted();
    const auto& G = mx.group();
    const auto t = power_sequence(mx, 4);
    const auto loop = make_cylinder(mx, {G.evaluate_word("x"), G.evaluate_word("x-")});
    const double expected = nu_xi_cylinder(mx, loop) / t.probability(G.identity(), 2).value();
    CHECK(m_n_cylinder(t, loop, 2) == doctest::Approx(expected).epsilon(1e-14));
    const auto open = make_cylinder(mx, {G.evaluate_word("x"), G.evaluate_word("x")});
    CHECK(m_n_cylinder(t, open, 2) == 0.0);
    CHECK_THROWS_AS(m_n_cylinder(t, open, 1), MeasureError);
  }

  TEST_CASE("m_n of a periodic walk fails naming n") {
    const auto sym = measure({Family::lattice, 1}, {{"x", 0.5}, {"x-", 0.5}});
    const auto t = power_sequence(sym, 5);
    CHECK_THROWS_WITH_AS(m_n_cylinder(t, make_cylinder(sym, {sym.group().evaluate_word("x")}), 3),
                         doctest::Contains("{*3}"), MeasureError);
  }

  TEST_CASE("lemma formula equals loop enumeration") {
    const auto heis = tilted(measure({Family::heisenberg, 0}, {{"a", 0.4}, {"a-", 0.1}, {"b", 0.3}, {"b-", 0.2}}));
    const auto lamp = tilted(lazify(measure({Family::lamplighter, 0}, {{"s", 0.3}, {"t", 0.45}, {"t-", 0.25}}), 0.1));
    const auto z1 = z1_lazy_tilted();
    for (const auto* mu : {&heis, &lamp, &z1}) {
      REQUIRE(mu->size() <= 4);
      const auto t = power_sequence(*mu, 10);
      for (int n = 2; n <= 10; ++n) {
        if (t.probability(mu->group().identity(), n).is_zero()) continue;
        for (const std::vector<std::size_t>& u : {std::vector<std::size_t>{0}, {1, 0}, {2, 1, 0}}) {
          if (static_cast<int>(u.size()) > n) continue;
          const double lemma = m_n_cylinder(t, cyl(*mu, u), n);
          const double brute = oracle::m_n_by_loops(*mu, u, n);
          CHECK(std::abs(lemma - brute) <= 1e-12 * std::max(1.0, brute));
        }
      }
    }
  }

  TEST_CASE("m_n is a probability on k-cylinders") {
    const auto mx = z1_lazy_tilted();
    const auto t = power_sequence(mx, 30);
    for (int k : {1, 2, 3})
      for (int n = k; n <= 30; ++n) {
        double total = 0.0;
        oracle::for_each_word(mx.size(), k, [&](const std::vector<std::size_t>& w) { total += m_n_cylinder(t, cyl(mx, w), n); });
        CHECK(std::abs(total - 1.0) <= 1e-9);
      }
  }

  TEST_CASE("equidistribution on Z") {
    const auto mx = z1_lazy_tilted();
    const auto t = power_sequence(mx, 2000);
    const auto rep = equidist_report(t, make_cylinder(mx, {mx.group().evaluate_word("x")}), 1, 2000);
    CHECK(rep.rows.back().deviation < 0.02 * rep.nu_xi);
    CHECK(rep.trending_down);
    for (const auto& r : rep.rows) {
      CHECK(r.m_n >= 0.0);
      CHECK(r.m_n <= 1.0);
    }
  }

  TEST_CASE("pressure matches word enumeration") {
    const auto mx = z1_lazy_tilted();
    for (const std::vector<std::size_t>& u : {std::vector<std::size_t>{2}, {0, 2}}) {
      for (int n : {4, 7}) {
        const auto h = orbit_histogram(mx, cyl(mx, u), n, false);
        for (double t : {-1.0, 0.3, 2.0})
          CHECK(pressure_finite_n(h, t) == doctest::Approx(oracle::pressure_by_words(mx, u, t, n)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("pressure identities") {
    const auto mx = z1_lazy_tilted();
    REQUIRE(mx.size() == 3);
    const auto u = cyl(mx, {2});
    const double nu = nu_xi_cylinder(mx, u);
    for (int n = 1; n <= 14; ++n) {
      const auto h = orbit_histogram(mx, u, n, false);
      CHECK(pressure_finite_n(h, 0.0) == 0.0);
      CHECK(pressure_finite_n(h, 5.0) <= 5.0 + 1e-12);
      CHECK(pressure_finite_n(h, -5.0) <= 1e-12);
      CHECK(std::abs(pressure_derivative(h, 1e-5) - nu) <= 2e-10);
    }
  }

  TEST_CASE("large deviation tail masses") {
    // Uniform on {e, x, x-}: already centred, nu = 1/3. Skewed weights show
    // lattice effects in the binomial tails at these small n.
    const auto mx = tilted(measure({Family::lattice, 1}, {{"x", 1.0 / 3}, {"x-", 1.0 / 3}, {"", 1.0 / 3}}));
    const auto u = cyl(mx, {2});
    CHECK(ld_tail_mass(mx, u, 1.0, 8) == 0.0);
    double prev = 2.0;
    for (int n : {6, 9, 12}) {
      const double tail = ld_tail_mass(mx, u, 0.3, n);
      CHECK(tail < prev);
      prev = tail;
      CHECK(ld_tail_mass_loops(mx, u, 0.3, n) <= tail);
    }
    EnumerationOptions guard;
    guard.max_words = 1000;
    CHECK_THROWS_AS(orbit_histogram(mx, u, 8, false, guard), ResourceError);
  }
}
