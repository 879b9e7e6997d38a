#include "rwg/cache.hpp"
#include "rwg/config.hpp"
#include "rwg/stone.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rwg;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "group": {"family": "heisenberg", "params": {}},
    "measure": [{"word": "a", "weight": 0.4}, {"word": "a-", "weight": 0.1},
                {"word": "b", "weight": 0.3}, {"word": "b-", "weight": 0.2}],
    "options": {"n_max": 12, "test_elements": ["a", "a-b"], "cylinders": [["a"]]}
  })");
}

std::string error_path(const json& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rwg-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FinMeasure heis() {
  return FinMeasure::from_words(Group({Family::heisenberg, 0}), std::vector<std::pair<std::string, double>>{
                                                                    {"a", 0.4}, {"a-", 0.1}, {"b", 0.3}, {"b-", 0.2}});
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("valid config parses with defaults") {
    const auto cfg = parse_config(base_config());
    CHECK(cfg.group.family == Family::heisenberg);
    CHECK(cfg.measure.size() == 4);
    CHECK(cfg.options.n_max == 12);
    CHECK(cfg.options.tolerance == 0.02);
    CHECK_FALSE(cfg.options.lazify_eps.has_value());
    CHECK(cfg.options.test_elements == std::vector<std::string>{"a", "a-b"});
  }

  TEST_CASE("errors carry the field path") {
    auto d = base_config();
    d["measure"][1]["weight"] = 0.2;
    CHECK(error_path(d) == "measure");
    d = base_config();
    d["measure"][2]["word"] = "c";
    CHECK(error_path(d) == "measure[2].word");
    d = base_config();
    d["options"]["n_max"] = 1;
    CHECK(error_path(d) == "options.n_max");
    d = base_config();
    d["options"]["test_elements"][1] = "a-x";
    CHECK(error_path(d) == "options.test_elements[1]");
    d = base_config();
    d["options"]["bogus"] = 1;
    CHECK(error_path(d) == "options.bogus");
    d = base_config();
    d["group"]["family"] = "torus";
    CHECK(error_path(d) == "group.family");
    d = base_config();
    d["group"] = {{"family", "free"}, {"params", {{"r", 1}}}};
    CHECK(error_path(d) == "group.params.r");
    d = base_config();
    d["options"]["lazify_eps"] = 1.0;
    CHECK(error_path(d) == "options.lazify_eps");
    d = base_config();
    d["measure"][0]["weight"] = -0.4;
    CHECK(error_path(d) == "measure[0].weight");
  }

  TEST_CASE("normalized echo is stable") {
    const auto a = config_to_json(parse_config(base_config())).dump();
    const auto b = config_to_json(parse_config(base_config())).dump();
    CHECK(a == b);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}

TEST_SUITE("cache") {
  TEST_CASE("store then load is bit-identical") {
    const auto dir = scratch_dir("roundtrip");
    const auto mu = heis();
    for (bool pruned : {false, true}) {
      PowerOptions opt;
      if (pruned) opt.watch_only = std::vector<GroupElement>{mu.group().evaluate_word("a")};
      const auto table = power_sequence(mu, 8, opt);
      const auto key = table_key(mu, 8, opt.watch_only);
      cache_store(table, dir, key);
      std::string reason;
      const auto back = cache_load(dir, key, mu, &reason);
      REQUIRE_MESSAGE(back.has_value(), reason);
      for (int n = 0; n <= 8; ++n) {
        const auto& a = table.layer(n);
        const auto& b = back->layer(n);
        CHECK(a.scale_log == b.scale_log);
        CHECK(a.stored_mass == b.stored_mass);
        CHECK(a.support_size == b.support_size);
        CHECK(a.complete == b.complete);
        REQUIRE(a.atoms.size() == b.atoms.size());
        for (std::size_t i = 0; i < a.atoms.size(); ++i) {
          CHECK(a.atoms[i].first == b.atoms[i].first);
          CHECK(a.atoms[i].second == b.atoms[i].second);
        }
      }
      const auto a = mu.group().evaluate_word("a");
      CHECK(back->probability(a, 3).log() == table.probability(a, 3).log());
    }
  }

  TEST_CASE("tampered or mismatched files are rejected") {
    const auto dir = scratch_dir("tamper");
    const auto mu = heis();
    const auto table = power_sequence(mu, 6);
    const auto key = table_key(mu, 6, std::nullopt);
    cache_store(table, dir, key);
    const auto path = cache_path(dir, key);
    const auto original = read_file(path);

    auto rewrite = [&](const std::string& text) {
      std::ofstream out(path, std::ios::trunc);
      out << text;
    };
    std::string reason;

    // Change one digit of the last mantissa on the final record.
    auto text = original;
    auto pos = text.rfind(' ');
    text[pos + 3] = text[pos + 3] == '1' ? '2' : '1';
    rewrite(text);
    CHECK_FALSE(cache_load(dir, key, mu, &reason).has_value());
    CHECK(reason == "record digest mismatch");

    text = original;
    const auto v = text.find("\"format_version\":1");
    text.replace(v, 18, "\"format_version\":9");
    rewrite(text);
    CHECK_FALSE(cache_load(dir, key, mu, &reason).has_value());
    CHECK(reason == "format version mismatch");

    rewrite(original.substr(0, original.size() / 2));
    CHECK_FALSE(cache_load(dir, key, mu, &reason).has_value());

    rewrite(original);
    const auto other = lazify(mu, 0.5);
    CHECK_FALSE(cache_load(dir, key, other, &reason).has_value());
    CHECK(reason == "measure mismatch");
    CHECK(cache_load(dir, key, mu, &reason).has_value());

    CHECK(table_key(mu, 6, std::nullopt) != table_key(other, 6, std::nullopt));
    CHECK(table_key(mu, 6, std::nullopt) != table_key(mu, 7, std::nullopt));
  }
}
