#include "rwg/config.hpp"

#include "sha256.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace rwg {

using json = nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(path + "." + key, "unknown field");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing required field");
  return obj.at(key);
}

int get_int(const json& v, const std::string& path, int min_value) {
  if (!v.is_number_integer()) throw ConfigError(path, "must be an integer");
  const auto x = v.get<long long>();
  if (x < min_value || x > 1'000'000'000) throw ConfigError(path, "must be an integer >= " + std::to_string(min_value));
  return static_cast<int>(x);
}

double get_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "must be a string");
  return v.get<std::string>();
}

void check_word(const Group& G, const std::string& word, const std::string& path) {
  try {
    (void)G.parse_word(word);
  } catch (const GroupError& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "configuration must be a JSON object");
  reject_unknown(doc, "$", {"group", "measure", "options"});
  ExperimentConfig cfg;

  const auto& group = require(doc, "group", "$");
  if (!group.is_object()) throw ConfigError("group", "must be an object");
  reject_unknown(group, "group", {"family", "params"});
  const auto family_name_str = get_string(require(group, "family", "group"), "group.family");
  try {
    cfg.group.family = parse_family(family_name_str);
  } catch (const GroupError&) {
    throw ConfigError("group.family", "must be one of lattice, free, heisenberg, lamplighter, bs12");
  }
  const json params = group.value("params", json::object());
  if (!params.is_object()) throw ConfigError("group.params", "must be an object");
  switch (cfg.group.family) {
    case Family::lattice:
      reject_unknown(params, "group.params", {"k"});
      cfg.group.param = get_int(require(params, "k", "group.params"), "group.params.k", 1);
      if (cfg.group.param > 26) throw ConfigError("group.params.k", "must be <= 26");
      break;
    case Family::free:
      reject_unknown(params, "group.params", {"r"});
      cfg.group.param = get_int(require(params, "r", "group.params"), "group.params.r", 2);
      if (cfg.group.param > 26) throw ConfigError("group.params.r", "must be <= 26");
      break;
    default:
      reject_unknown(params, "group.params", {});
      cfg.group.param = 0;
  }
  const Group G(cfg.group);

  const auto& measure = require(doc, "measure", "$");
  if (!measure.is_array() || measure.empty()) throw ConfigError("measure", "must be a nonempty array");
  double total = 0.0;
  for (std::size_t i = 0; i < measure.size(); ++i) {
    const std::string path = "measure[" + std::to_string(i) + "]";
    const auto& item = measure[i];
    if (!item.is_object()) throw ConfigError(path, "must be an object with word and weight");
    reject_unknown(item, path, {"word", "weight"});
    WeightedWord w;
    w.word = get_string(require(item, "word", path), path + ".word");
    check_word(G, w.word, path + ".word");
    w.weight = get_double(require(item, "weight", path), path + ".weight");
    if (!(w.weight > 0)) throw ConfigError(path + ".weight", "must be positive");
    total += w.weight;
    cfg.measure.push_back(std::move(w));
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("measure", "weights sum to " + std::to_string(total) + ", not 1");

  const json options = doc.value("options", json::object());
  if (!options.is_object()) throw ConfigError("options", "must be an object");
  reject_unknown(options, "options",
                 {"n_max", "lazify_eps", "tolerance", "cylinders", "test_elements", "cache_dir", "output_formats",
                  "support_cap", "nondegeneracy_radius", "harmonic_radius", "ratio_window", "monte_carlo_n",
                  "monte_carlo_samples", "pressure_n", "pressure_h", "ld_eps"});
  auto& o = cfg.options;
  if (options.contains("n_max")) o.n_max = get_int(options["n_max"], "options.n_max", 2);
  if (options.contains("lazify_eps") && !options["lazify_eps"].is_null()) {
    o.lazify_eps = get_double(options["lazify_eps"], "options.lazify_eps");
    if (!(*o.lazify_eps > 0 && *o.lazify_eps < 1)) throw ConfigError("options.lazify_eps", "must lie in (0, 1)");
  }
  if (options.contains("tolerance")) {
    o.tolerance = get_double(options["tolerance"], "options.tolerance");
    if (!(o.tolerance > 0)) throw ConfigError("options.tolerance", "must be positive");
  }
  if (options.contains("cylinders")) {
    const auto& cyl = options["cylinders"];
    if (!cyl.is_array()) throw ConfigError("options.cylinders", "must be an array of word lists");
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      const std::string path = "options.cylinders[" + std::to_string(i) + "]";
      if (!cyl[i].is_array() || cyl[i].empty()) throw ConfigError(path, "must be a nonempty array of words");
      std::vector<std::string> letters;
      for (std::size_t j = 0; j < cyl[i].size(); ++j) {
        const std::string lp = path + "[" + std::to_string(j) + "]";
        auto w = get_string(cyl[i][j], lp);
        check_word(G, w, lp);
        letters.push_back(std::move(w));
      }
      o.cylinders.push_back(std::move(letters));
    }
  }
  if (options.contains("test_elements")) {
    const auto& te = options["test_elements"];
    if (!te.is_array()) throw ConfigError("options.test_elements", "must be an array of words");
    for (std::size_t i = 0; i < te.size(); ++i) {
      const std::string path = "options.test_elements[" + std::to_string(i) + "]";
      auto w = get_string(te[i], path);
      check_word(G, w, path);
      o.test_elements.push_back(std::move(w));
    }
  }
  if (options.contains("cache_dir")) o.cache_dir = get_string(options["cache_dir"], "options.cache_dir");
  if (options.contains("output_formats")) {
    const auto& f = options["output_formats"];
    if (!f.is_array()) throw ConfigError("options.output_formats", "must be an array");
    o.output_formats.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string path = "options.output_formats[" + std::to_string(i) + "]";
      auto name = get_string(f[i], path);
      if (name != "json" && name != "csv" && name != "plot") throw ConfigError(path, "must be json, csv or plot");
      o.output_formats.push_back(std::move(name));
    }
  }
  if (options.contains("support_cap"))
    o.support_cap = static_cast<std::size_t>(get_int(options["support_cap"], "options.support_cap", 1));
  if (options.contains("nondegeneracy_radius"))
    o.nondegeneracy_radius = get_int(options["nondegeneracy_radius"], "options.nondegeneracy_radius", 1);
  if (options.contains("harmonic_radius"))
    o.harmonic_radius = get_int(options["harmonic_radius"], "options.harmonic_radius", 0);
  if (options.contains("ratio_window")) o.ratio_window = get_int(options["ratio_window"], "options.ratio_window", 2);
  if (options.contains("monte_carlo_n")) o.monte_carlo_n = get_int(options["monte_carlo_n"], "options.monte_carlo_n", 0);
  if (options.contains("monte_carlo_samples"))
    o.monte_carlo_samples = get_int(options["monte_carlo_samples"], "options.monte_carlo_samples", 0);
  if (options.contains("pressure_n")) o.pressure_n = get_int(options["pressure_n"], "options.pressure_n", 0);
  if (options.contains("pressure_h")) {
    o.pressure_h = get_double(options["pressure_h"], "options.pressure_h");
    if (!(o.pressure_h > 0)) throw ConfigError("options.pressure_h", "must be positive");
  }
  if (options.contains("ld_eps")) {
    o.ld_eps = get_double(options["ld_eps"], "options.ld_eps");
    if (!(o.ld_eps > 0)) throw ConfigError("options.ld_eps", "must be positive");
  }
  if (o.monte_carlo_n > o.n_max) throw ConfigError("options.monte_carlo_n", "must not exceed n_max");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["group"]["family"] = family_name(config.group.family);
  j["group"]["params"] = nlohmann::ordered_json::object();
  if (config.group.family == Family::lattice) j["group"]["params"]["k"] = config.group.param;
  if (config.group.family == Family::free) j["group"]["params"]["r"] = config.group.param;
  j["measure"] = nlohmann::ordered_json::array();
  for (const auto& w : config.measure) j["measure"].push_back({{"word", w.word}, {"weight", w.weight}});
  const auto& o = config.options;
  auto& jo = j["options"];
  jo["n_max"] = o.n_max;
  jo["lazify_eps"] = o.lazify_eps ? nlohmann::ordered_json(*o.lazify_eps) : nlohmann::ordered_json();
  jo["tolerance"] = o.tolerance;
  jo["cylinders"] = o.cylinders;
  jo["test_elements"] = o.test_elements;
  jo["cache_dir"] = o.cache_dir;
  jo["output_formats"] = o.output_formats;
  jo["support_cap"] = o.support_cap;
  jo["nondegeneracy_radius"] = o.nondegeneracy_radius;
  jo["harmonic_radius"] = o.harmonic_radius;
  jo["ratio_window"] = o.ratio_window;
  jo["monte_carlo_n"] = o.monte_carlo_n;
  jo["monte_carlo_samples"] = o.monte_carlo_samples;
  jo["pressure_n"] = o.pressure_n;
  jo["pressure_h"] = o.pressure_h;
  jo["ld_eps"] = o.ld_eps;
  return j;
}

std::string sha256_hex(std::string_view data) {
  detail::Sha256 h;
  h.update(data);
  return h.hex();
}

}  // namespace rwg
