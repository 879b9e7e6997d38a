#pragma once

// Declarative experiment runner: config in, RunReport out, report files on disk.
//
// One power table is computed, for mu_xi (lazified first when requested).
// Quantities for mu follow from the exact tilt identity
//   mu^{*n}(g) = phi(xi)^n e^{-<xi, pi(g)>} mu_xi^{*n}(g).

#include "rwg/config.hpp"
#include "rwg/measures.hpp"
#include "rwg/shift.hpp"
#include "rwg/spectral.hpp"
#include "rwg/stone.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rwg {

enum class Stage { check, stone, spectral, ratio, equidist, all };
Stage parse_stage(std::string_view name);
std::string_view stage_name(Stage s);

struct RunOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool use_cache = true;
  Stage stage = Stage::all;
  std::ostream* log = nullptr;  // progress lines, if set
};

struct RatioRow {
  int n = 0;
  double ratio = 0.0;      // mu^{*n}(g) / mu^{*n}(e)
  double deviation = 0.0;  // |ratio / predicted - 1|
};

struct RatioEntry {
  std::string word;
  std::vector<std::int64_t> projection;
  double predicted = 0.0;  // e^{-<xi, pi(g)>}
  std::vector<RatioRow> rows;
  double final_deviation = 0.0;
  bool shrinking = false;  // deviation non-increasing over the last ratio_window steps
};

struct MonteCarloCheck {
  int n = 0;
  int samples = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double z_score = 0.0;
  bool consistent = false;  // |z| <= 4
};

struct PressureEntry {
  int cylinder = 0;
  int n = 0;
  double p_at_zero = 0.0;
  double derivative = 0.0;
  double nu_xi = 0.0;
  double ld_eps = 0.0;
  double ld_tail_mass = 0.0;
  double ld_tail_mass_loops = 0.0;
};

struct StageNote {
  std::string stage;
  std::string status;  // "ok", "skipped" or "failed"
  std::string message;
};

struct RunReport {
  nlohmann::ordered_json config;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string stage;
  std::vector<StageNote> stages;

  std::optional<NondegeneracyReport> nondegeneracy;
  std::optional<AperiodicityReport> aperiodicity;
  std::optional<CentredReport> centred;
  std::optional<TiltReport> tilt;
  std::optional<double> harmonic_residual;
  std::optional<MonteCarloCheck> monte_carlo;
  std::optional<SpectralReport> spectral;
  std::vector<RatioEntry> ratios;
  std::vector<EquidistReport> equidist;
  std::vector<PressureEntry> pressure;
  std::string table_cache;  // "hit", "miss", "disabled" or "rejected: <reason>"

  std::string kesten_verdict;  // verdict_name or "not-run"
  std::string ratio_verdict;
  std::string equidist_verdict;
};

// Throws ConfigError for words or options that only fail once the group is
// built, ResourceError when a support or enumeration guard is exceeded.
RunReport run(const ExperimentConfig& config, const RunOptions& options = {});

nlohmann::ordered_json report_to_json(const RunReport& report);

// Writes summary.json, CSV sequence files and two-column .dat files according
// to formats ("json", "csv", "plot"). Throws std::runtime_error when the
// output directory is not writable.
void emit(const RunReport& report, const std::filesystem::path& out_dir, const std::vector<std::string>& formats);

}  // namespace rwg
