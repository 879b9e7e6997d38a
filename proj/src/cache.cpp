#include "rwg/cache.hpp"

#include "rwg/config.hpp"
#include "sha256.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rwg {

using json = nlohmann::ordered_json;

namespace {

json measure_json(const FinMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({to_hex(canonical_key(a.element)), a.weight});
  return atoms;
}

json group_json(const Group& G) {
  return {{"family", family_name(G.family())}, {"param", G.descriptor().param}};
}

std::string format_mantissa(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string atom_record(const GroupElement& g, double w) {
  return to_hex(canonical_key(g)) + ' ' + format_mantissa(w) + '\n';
}

}  // namespace

std::string table_key(const FinMeasure& mu, int n_max, const std::optional<std::vector<GroupElement>>& watch) {
  json j;
  j["format_version"] = kCacheFormatVersion;
  j["group"] = group_json(mu.group());
  j["measure"] = measure_json(mu);
  j["n_max"] = n_max;
  if (watch) {
    json w = json::array();
    for (const auto& g : *watch) w.push_back(to_hex(canonical_key(g)));
    j["watch"] = w;
  } else {
    j["watch"] = nullptr;
  }
  return sha256_hex(j.dump());
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& key) {
  return dir / ("table-" + key + ".rwt");
}

void cache_store(const ConvolutionTable& table, const std::filesystem::path& dir, const std::string& key) {
  std::filesystem::create_directories(dir);
  const auto final_path = cache_path(dir, key);
  const auto tmp_path = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp_path);
    const json group = group_json(table.base().group());
    const json measure = measure_json(table.base());
    json watch = nullptr;
    if (table.watch()) {
      watch = json::array();
      for (const auto& g : *table.watch()) watch.push_back(to_hex(canonical_key(g)));
    }
    for (int n = 0; n <= table.n_max(); ++n) {
      const auto& L = table.layer(n);
      json h;
      h["format_version"] = kCacheFormatVersion;
      h["key"] = key;
      h["group"] = group;
      h["measure"] = measure;
      h["watch"] = watch;
      h["n"] = n;
      h["n_max"] = table.n_max();
      h["scale_log"] = L.scale_log;
      h["stored_mass"] = L.stored_mass;
      h["support_size"] = L.support_size;
      h["complete"] = L.complete;
      h["atoms"] = L.atoms.size();
      detail::Sha256 digest;
      for (const auto& [g, w] : L.atoms) digest.update(atom_record(g, w));
      h["records_sha256"] = digest.hex();
      out << h.dump() << '\n';
      for (const auto& [g, w] : L.atoms) out << atom_record(g, w);
    }
    if (!out) throw std::runtime_error("failed writing cache file " + tmp_path);
  }
  std::filesystem::rename(tmp_path, final_path);
}

std::optional<ConvolutionTable> cache_load(const std::filesystem::path& dir, const std::string& key,
                                           const FinMeasure& expected_base, std::string* reason) {
  auto fail = [&](const std::string& why) -> std::optional<ConvolutionTable> {
    if (reason) *reason = why;
    return std::nullopt;
  };
  std::ifstream in(cache_path(dir, key));
  if (!in) return fail("no cache file");
  const Group& G = expected_base.group();
  const json expected_measure = measure_json(expected_base);
  const json expected_group = group_json(G);
  std::vector<PowerLayer> layers;
  std::string line;
  int n_max = -1;
  std::optional<std::vector<GroupElement>> watch;
  try {
    while (std::getline(in, line)) {
      const auto h = json::parse(line);
      if (h.at("format_version").get<int>() != kCacheFormatVersion) return fail("format version mismatch");
      if (h.at("key").get<std::string>() != key) return fail("key mismatch");
      if (h.at("group") != expected_group || h.at("measure") != expected_measure) return fail("measure mismatch");
      const int n = h.at("n").get<int>();
      if (n != static_cast<int>(layers.size())) return fail("power blocks out of order");
      if (n_max < 0) {
        n_max = h.at("n_max").get<int>();
        if (!h.at("watch").is_null()) {
          watch.emplace();
          for (const auto& w : h.at("watch")) watch->push_back(G.decode_key(from_hex(w.get<std::string>())));
        }
      }
      if (h.at("n_max").get<int>() != n_max) return fail("inconsistent n_max");
      PowerLayer L;
      L.scale_log = h.at("scale_log").get<double>();
      L.stored_mass = h.at("stored_mass").get<double>();
      L.support_size = h.at("support_size").get<std::size_t>();
      L.complete = h.at("complete").get<bool>();
      const auto count = h.at("atoms").get<std::size_t>();
      L.atoms.reserve(count);
      double mass = 0.0;
      detail::Sha256 digest;
      for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) return fail("truncated atom records");
        digest.update(line);
        digest.update("\n");
        const auto space = line.find(' ');
        if (space == std::string::npos) return fail("corrupt atom record");
        char* end = nullptr;
        const std::string num = line.substr(space + 1);
        const double w = std::strtod(num.c_str(), &end);
        if (end == num.c_str() || *end != '\0' || !std::isfinite(w) || w < 0) return fail("corrupt atom mantissa");
        auto g = G.decode_key(from_hex(std::string_view(line).substr(0, space)));
        if (!L.atoms.empty() && !(L.atoms.back().first < g)) return fail("atom records not in canonical order");
        mass += w;
        L.atoms.emplace_back(std::move(g), w);
      }
      if (digest.hex() != h.at("records_sha256").get<std::string>()) return fail("record digest mismatch");
      if (L.complete) {
        if (count != L.support_size) return fail("support size mismatch");
        if (std::abs(mass - L.stored_mass) > 1e-9 * std::max(1.0, L.stored_mass)) return fail("mass check failed");
      }
      if (std::abs(L.stored_mass * std::exp(L.scale_log) - 1.0) > 1e-9) return fail("probability mass check failed");
      layers.push_back(std::move(L));
    }
  } catch (const std::exception& e) {
    return fail(std::string("corrupt cache file: ") + e.what());
  }
  if (layers.empty() || static_cast<int>(layers.size()) != n_max + 1) return fail("incomplete table");
  return ConvolutionTable(expected_base, std::move(layers), std::move(watch));
}

}  // namespace rwg
