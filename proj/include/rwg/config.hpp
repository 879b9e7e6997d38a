#pragma once

// Experiment configuration: a single JSON document naming the group, the
// measure as weighted words and the run options.
//
//   {
//     "group":   {"family": "heisenberg", "params": {}},
//     "measure": [{"word": "a", "weight": 0.4}, {"word": "a-", "weight": 0.1}, ...],
//     "options": {"n_max": 60, "lazify_eps": 0.2, "cylinders": [["a"]], "test_elements": ["a"]}
//   }

#include "rwg/groups.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwg {

class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

struct WeightedWord {
  std::string word;
  double weight = 0.0;
};

struct ExperimentOptions {
  int n_max = 60;
  std::optional<double> lazify_eps;
  double tolerance = 0.02;
  std::vector<std::vector<std::string>> cylinders;
  std::vector<std::string> test_elements;
  std::string cache_dir;
  std::vector<std::string> output_formats{"json", "csv"};
  std::size_t support_cap = 50'000'000;
  int nondegeneracy_radius = 6;
  int harmonic_radius = 4;
  int ratio_window = 20;
  int monte_carlo_n = 4;
  int monte_carlo_samples = 10000;
  int pressure_n = 10;
  double pressure_h = 1e-5;
  double ld_eps = 0.3;
};

struct ExperimentConfig {
  GroupDescriptor group;
  std::vector<WeightedWord> measure;
  ExperimentOptions options;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

// Normalized echo of the configuration with every option filled in.
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace rwg
