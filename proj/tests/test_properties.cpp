#include "properties.hpp"

#include <doctest.h>

using namespace rwg;

namespace {

FinMeasure lazy(const FinMeasure& mu) { return lazify(mu, 0.2); }

using Words = std::vector<std::pair<std::string, double>>;
const Words simple{{"a", 0.25}, {"a-", 0.25}, {"b", 0.25}, {"b-", 0.25}};

FinMeasure symmetric_free() { return FinMeasure::from_words(Group({Family::free, 2}), simple); }
FinMeasure symmetric_heisenberg() { return FinMeasure::from_words(Group({Family::heisenberg, 0}), simple); }

ExperimentConfig heisenberg_lazy(int n_max) {
  auto doc = nlohmann::json::parse(R"({
    "group": {"family": "heisenberg", "params": {}},
    "measure": [{"word": "a", "weight": 0.4}, {"word": "a-", "weight": 0.1},
                {"word": "b", "weight": 0.3}, {"word": "b-", "weight": 0.2}],
    "options": {"lazify_eps": 0.2, "test_elements": ["a", "b"], "cylinders": [["a"]], "pressure_n": 6}
  })");
  doc["options"]["n_max"] = n_max;
  return parse_config(doc);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("group axioms on random words") {
    for (const auto& G : props::all_families()) {
      const auto r = props::group_axioms(G, 10000, 42);
      CHECK_MESSAGE(r.ok, r.detail);
    }
  }

  TEST_CASE("pushforward commutes with convolution") {
    const auto r = props::pushforward_homomorphism();
    CHECK_MESSAGE(r.ok, r.detail);
  }

  TEST_CASE("supermultiplicativity and fekete monotonicity") {
    const auto ms = props::sample_measures();
    for (const auto& [mu, n] : std::vector<std::pair<FinMeasure, int>>{
             {ms[0], 12}, {ms[1], 12}, {ms[2], 24}, {lazy(ms[2]), 20}, {ms[3], 20}, {lazy(ms[4]), 16}}) {
      const auto r = props::fekete_monotonicity(mu, n);
      CHECK_MESSAGE(r.ok, r.detail);
    }
  }

  TEST_CASE("consecutive monotonicity of root estimates") {
    for (const auto& [mu, n] : std::vector<std::pair<FinMeasure, int>>{
             {symmetric_free(), 12}, {lazy(symmetric_heisenberg()), 20}, {lazy(props::sample_measures()[2]), 20}}) {
      const auto r = props::fekete_monotonicity(mu, n, true);
      CHECK_MESSAGE(r.ok, r.detail);
    }
    // Not a theorem for non-symmetric walks: mu^{*2}(e)^{1/2} = 0.49 > mu^{*3}(e)^{1/3} = 0.29 here.
    const auto r = props::fekete_monotonicity(props::sample_measures()[1], 12, true);
    CHECK_FALSE(r.ok);
    CHECK(r.detail.find("n = 3") != std::string::npos);
  }

  TEST_CASE("mass conservation") {
    for (const auto& mu : props::sample_measures()) {
      const auto r = props::mass_conservation(mu, 10);
      CHECK_MESSAGE(r.ok, r.detail);
    }
  }

  TEST_CASE("monte carlo agrees with the tables") {
    const auto ms = props::sample_measures();
    for (const auto& mu : {ms[2], lazy(ms[3]), lazy(ms[4])}) {
      for (int n : {3, 4}) {
        const auto r = props::monte_carlo(mu, n, 100000, 2024 + n);
        CHECK_MESSAGE(r.ok, r.detail);
      }
    }
  }

  TEST_CASE("cache round trip") {
    const auto r = props::cache_roundtrip(props::sample_measures()[2], 10,
                                          std::filesystem::temp_directory_path() / "rwg-test-props-cache");
    CHECK_MESSAGE(r.ok, r.detail);
  }

  TEST_CASE("run determinism across repeats and thread counts") {
    const auto r = props::run_determinism(heisenberg_lazy(16));
    CHECK_MESSAGE(r.ok, r.detail);
  }
}
