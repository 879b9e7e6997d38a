#include "rwg/pipeline.hpp"

#include "rwg/cache.hpp"
#include "rwg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace rwg {

using ojson = nlohmann::ordered_json;

Stage parse_stage(std::string_view name) {
  if (name == "check") return Stage::check;
  if (name == "stone") return Stage::stone;
  if (name == "spectral") return Stage::spectral;
  if (name == "ratio") return Stage::ratio;
  if (name == "equidist") return Stage::equidist;
  if (name == "all") return Stage::all;
  throw std::invalid_argument("unknown stage '" + std::string(name) + "'");
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::check: return "check";
    case Stage::stone: return "stone";
    case Stage::spectral: return "spectral";
    case Stage::ratio: return "ratio";
    case Stage::equidist: return "equidist";
    case Stage::all: return "all";
  }
  return "?";
}

namespace {

// Largest |S|^n the pressure stage will enumerate.
constexpr double kEnumerationGuard = 1e8;

bool wants(Stage requested, Stage s) {
  if (requested == Stage::all) return true;
  if (requested == Stage::equidist && s == Stage::ratio) return false;
  return static_cast<int>(s) <= static_cast<int>(requested);
}

void log_line(const RunOptions& opt, const std::string& msg) {
  if (opt.log) *opt.log << "[rwg] " << msg << '\n' << std::flush;
}

FinMeasure build_measure(const Group& G, const ExperimentConfig& config) {
  std::vector<std::pair<std::string, double>> words;
  for (const auto& w : config.measure) words.emplace_back(w.word, w.weight);
  auto mu = FinMeasure::from_words(G, words);
  if (config.options.lazify_eps) mu = lazify(mu, *config.options.lazify_eps);
  return mu;
}

std::vector<CylinderWord> build_cylinders(const Group& G, const FinMeasure& mu, const ExperimentConfig& config) {
  std::vector<CylinderWord> out;
  const auto& cyl = config.options.cylinders;
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    std::vector<GroupElement> letters;
    for (std::size_t j = 0; j < cyl[i].size(); ++j) {
      auto g = G.evaluate_word(cyl[i][j]);
      if (!mu.index_of(g))
        throw ConfigError("options.cylinders[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                          "letter '" + cyl[i][j] + "' is not in the support of the measure");
      letters.push_back(std::move(g));
    }
    out.push_back(make_cylinder(mu, std::move(letters)));
  }
  return out;
}

GroupElement product(const Group& G, const CylinderWord& u) {
  GroupElement w = G.identity();
  for (const auto& l : u.letters) w = G.multiply(w, l);
  return w;
}

double dot(const Eigen::VectorXd& xi, const IntVector& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += xi[static_cast<Eigen::Index>(i)] * static_cast<double>(m[i]);
  return s;
}

ConvolutionTable tilted_table(const FinMeasure& mu_xi, const ExperimentConfig& config, const RunOptions& opt,
                              const std::vector<GroupElement>& watch, RunReport& report) {
  const auto& o = config.options;
  PowerOptions popt;
  popt.support_cap = o.support_cap;
  popt.threads = opt.threads;
  popt.watch_only = watch;
  popt.prune_last = true;
  const bool caching = opt.use_cache && !o.cache_dir.empty();
  std::string key;
  if (caching) {
    key = table_key(mu_xi, o.n_max, watch);
    std::string reason;
    if (auto hit = cache_load(o.cache_dir, key, mu_xi, &reason)) {
      report.table_cache = "hit";
      log_line(opt, "loaded power table from cache");
      return std::move(*hit);
    }
    report.table_cache = reason == "no cache file" ? "miss" : "rejected: " + reason;
  } else {
    report.table_cache = "disabled";
  }
  log_line(opt, "computing power table up to n = " + std::to_string(o.n_max));
  auto table = power_sequence(mu_xi, o.n_max, popt);
  if (caching) cache_store(table, o.cache_dir, key);
  return table;
}

MonteCarloCheck monte_carlo(const FinMeasure& mu, std::span<const ScaledValue> returns, int n, int samples,
                            std::uint64_t seed) {
  MonteCarloCheck mc;
  mc.n = n;
  mc.samples = samples;
  mc.exact = returns[static_cast<std::size_t>(n)].value();
  PathSampler sampler(mu, seed);
  const auto e = mu.group().identity();
  long long hits = 0;
  for (int i = 0; i < samples; ++i) hits += sampler.path(n) == e ? 1 : 0;
  mc.empirical = static_cast<double>(hits) / samples;
  const double sigma = std::sqrt(mc.exact * (1.0 - mc.exact) / samples);
  if (sigma > 0) {
    mc.z_score = (mc.empirical - mc.exact) / sigma;
    mc.consistent = std::abs(mc.z_score) <= 4.0;
  } else {
    mc.consistent = mc.empirical == mc.exact;
  }
  return mc;
}

RatioEntry ratio_entry(const Group& G, const ConvolutionTable& table_xi, const Eigen::VectorXd& xi,
                       const std::string& word, int window) {
  RatioEntry entry;
  entry.word = word;
  const auto g = G.evaluate_word(word);
  entry.projection = G.project(g);
  const double tilt = dot(xi, entry.projection);
  entry.predicted = std::exp(-tilt);
  const auto e = G.identity();
  for (int n = 1; n <= table_xi.n_max(); ++n) {
    const auto pe = table_xi.probability(e, n);
    const auto pg = table_xi.probability(g, n);
    if (pe.is_zero() || pg.is_zero()) continue;
    // mu^{*n}(g)/mu^{*n}(e) = e^{-<xi,pi(g)>} mu_xi^{*n}(g)/mu_xi^{*n}(e).
    const double r_xi = ratio(pg, pe);
    entry.rows.push_back({n, entry.predicted * r_xi, std::abs(r_xi - 1.0)});
  }
  if (!entry.rows.empty()) {
    entry.final_deviation = entry.rows.back().deviation;
    const int first = table_xi.n_max() - window;
    std::vector<double> tail;
    for (const auto& r : entry.rows)
      if (r.n >= first) tail.push_back(r.deviation);
    entry.shrinking = tail.size() >= 2;
    for (std::size_t i = 1; i < tail.size(); ++i) entry.shrinking = entry.shrinking && tail[i] <= tail[i - 1];
  }
  return entry;
}

}  // namespace

RunReport run(const ExperimentConfig& config, const RunOptions& opt) {
  const auto& o = config.options;
  RunReport report;
  report.config = config_to_json(config);
  report.config_hash = sha256_hex(report.config.dump());
  report.seed = opt.seed;
  report.stage = std::string(stage_name(opt.stage));
  report.kesten_verdict = "not-run";
  report.ratio_verdict = "not-run";
  report.equidist_verdict = "not-run";
  report.table_cache = "not-used";
  auto note = [&](Stage s, std::string status, std::string message) {
    report.stages.push_back({std::string(stage_name(s)), std::move(status), std::move(message)});
  };

  const Group G(config.group);
  const auto mu = build_measure(G, config);
  for (std::size_t i = 0; i < o.test_elements.size(); ++i) (void)G.evaluate_word(o.test_elements[i]);
  const auto cylinders = build_cylinders(G, mu, config);

  // check
  log_line(opt, "checking measure");
  report.nondegeneracy = nondegeneracy_check(mu, o.nondegeneracy_radius);
  const auto mubar = pushforward(mu);
  report.centred = is_centred(mubar);
  {
    const int horizon = std::min(o.n_max, 8);
    PowerOptions popt;
    popt.support_cap = o.support_cap;
    popt.threads = opt.threads;
    report.aperiodicity = aperiodicity_check(power_sequence(mu, horizon, popt), horizon);
  }
  note(Stage::check, "ok", report.nondegeneracy->ok ? "" : report.nondegeneracy->note);
  if (!wants(opt.stage, Stage::stone)) return report;

  // stone
  log_line(opt, "minimizing phi");
  MinimizeOptions mopt;
  mopt.seed = opt.seed;
  try {
    report.tilt = minimize_phi(mubar, mopt);
  } catch (const MeasureError& e) {
    note(Stage::stone, "failed", e.what());
    return report;
  }
  const Eigen::VectorXd xi = report.tilt->xi;
  const double phi_min = report.tilt->phi_min;
  report.harmonic_residual = harmonic_check(mu, xi, o.harmonic_radius);
  note(Stage::stone, report.tilt->converged ? "ok" : "failed",
       report.tilt->converged ? "" : "Newton iteration did not reach the gradient tolerance");
  if (!wants(opt.stage, Stage::spectral)) return report;

  // spectral
  const auto mu_xi = tilt_measure(mu, xi);
  std::vector<GroupElement> watch;
  for (const auto& w : o.test_elements) watch.push_back(G.evaluate_word(w));
  for (const auto& u : cylinders) watch.push_back(G.inverse(product(G, u)));
  std::sort(watch.begin(), watch.end());
  watch.erase(std::unique(watch.begin(), watch.end()), watch.end());
  const auto table = tilted_table(mu_xi, config, opt, watch, report);
  const auto returns = rescale_geometric(return_sequence(table), std::log(phi_min));
  report.aperiodicity = aperiodicity_check(table, o.n_max);
  report.spectral = spectral_report(returns, phi_min, o.tolerance);
  report.kesten_verdict = std::string(verdict_name(report.spectral->verdict));
  if (o.monte_carlo_n > 0 && o.monte_carlo_samples > 0)
    report.monte_carlo = monte_carlo(mu, returns, o.monte_carlo_n, o.monte_carlo_samples, opt.seed);
  note(Stage::spectral, "ok", report.spectral->note);

  const auto& ap = *report.aperiodicity;
  const bool aperiodic = o.lazify_eps.has_value() || (ap.period == 1 && ap.aperiodic_from.has_value());
  const std::string gating =
      "walk has period " + std::to_string(ap.period) +
      " on the computed horizon; set options.lazify_eps to run this stage";

  // ratio
  if (wants(opt.stage, Stage::ratio)) {
    if (!aperiodic) {
      note(Stage::ratio, "skipped", gating);
      report.ratio_verdict = "skipped";
    } else {
      for (const auto& w : o.test_elements) report.ratios.push_back(ratio_entry(G, table, xi, w, o.ratio_window));
      if (report.spectral->verdict == Verdict::gap_detected) {
        report.ratio_verdict = "not-asserted";
        note(Stage::ratio, "ok",
             "spectral gap detected: the group is not amenable-consistent, so ratio limits are reported but not asserted");
      } else if (report.ratios.empty()) {
        report.ratio_verdict = "no-test-elements";
        note(Stage::ratio, "ok", "no test elements configured");
      } else {
        const bool all_shrinking =
            std::all_of(report.ratios.begin(), report.ratios.end(), [](const RatioEntry& r) { return r.shrinking; });
        report.ratio_verdict = all_shrinking ? "converging" : "not-monotone";
        note(Stage::ratio, "ok", "");
      }
    }
  }

  // equidist
  if (wants(opt.stage, Stage::equidist)) {
    if (!aperiodic) {
      note(Stage::equidist, "skipped", gating);
      report.equidist_verdict = "skipped";
    } else if (cylinders.empty()) {
      report.equidist_verdict = "no-cylinders";
      note(Stage::equidist, "ok", "no cylinder words configured");
    } else {
      const int n_first = ap.aperiodic_from.value_or(1);
      bool all_down = true;
      std::string pressure_note;
      for (std::size_t i = 0; i < cylinders.size(); ++i) {
        const auto& u = cylinders[i];
        report.equidist.push_back(equidist_report(table, u, std::max<int>(n_first, static_cast<int>(u.size())), o.n_max));
        all_down = all_down && report.equidist.back().trending_down;
        const int pn = o.pressure_n;
        if (pn <= 0) continue;
        if (std::pow(static_cast<double>(mu_xi.size()), pn) > kEnumerationGuard) {
          pressure_note = "pressure skipped: |S|^n exceeds the enumeration guard of 1e8";
          continue;
        }
        log_line(opt, "enumerating words of length " + std::to_string(pn) + " for cylinder " + std::to_string(i));
        EnumerationOptions eopt;
        eopt.max_words = kEnumerationGuard;
        eopt.threads = opt.threads;
        const auto hist = orbit_histogram(mu_xi, u, pn, false, eopt);
        const auto loops = orbit_histogram(mu_xi, u, pn, true, eopt);
        PressureEntry p;
        p.cylinder = static_cast<int>(i);
        p.n = pn;
        p.p_at_zero = pressure_finite_n(hist, 0.0);
        p.derivative = pressure_derivative(hist, o.pressure_h);
        p.nu_xi = nu_xi_cylinder(mu_xi, u);
        p.ld_eps = o.ld_eps;
        p.ld_tail_mass = ld_tail_mass(hist, p.nu_xi, o.ld_eps);
        p.ld_tail_mass_loops = ld_tail_mass(loops, p.nu_xi, o.ld_eps);
        report.pressure.push_back(p);
      }
      report.equidist_verdict = all_down ? "trending-down" : "not-trending";
      note(Stage::equidist, "ok", pressure_note);
    }
  }
  return report;
}

namespace {

ojson finite_or_null(double x) { return std::isfinite(x) ? ojson(x) : ojson(); }

ojson vec_json(const Eigen::VectorXd& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(finite_or_null(v[i]));
  return a;
}

ojson optional_number(const std::optional<double>& x) { return x ? finite_or_null(*x) : ojson(); }

}  // namespace

ojson report_to_json(const RunReport& r) {
  ojson j;
  j["config"] = r.config;
  j["config_sha256"] = r.config_hash;
  j["seed"] = r.seed;
  j["stage"] = r.stage;
  j["stages"] = ojson::array();
  for (const auto& s : r.stages) j["stages"].push_back({{"stage", s.stage}, {"status", s.status}, {"message", s.message}});

  ojson verdicts;
  verdicts["kesten"] = r.kesten_verdict;
  verdicts["ratio"] = r.ratio_verdict;
  verdicts["equidist"] = r.equidist_verdict;
  j["verdicts"] = verdicts;

  if (r.nondegeneracy) {
    ojson u = ojson::array();
    for (const auto& g : r.nondegeneracy->unreached) u.push_back(to_string(g));
    j["nondegeneracy"] = {{"ok", r.nondegeneracy->ok},
                          {"radius", r.nondegeneracy->radius},
                          {"unreached", u},
                          {"note", r.nondegeneracy->note}};
  }
  if (r.aperiodicity) {
    const auto& a = *r.aperiodicity;
    j["aperiodicity"] = {{"horizon", a.horizon},
                         {"aperiodic_from", a.aperiodic_from ? ojson(*a.aperiodic_from) : ojson()},
                         {"period", a.period},
                         {"zero_steps", a.zero_steps.size()},
                         {"note", a.note}};
  }
  if (r.centred) j["centred"] = {{"mean", vec_json(r.centred->mean)}, {"centred", r.centred->centred}};
  if (r.tilt) {
    const auto& t = *r.tilt;
    j["stone"] = {{"xi", vec_json(t.xi)},
                  {"phi_min", finite_or_null(t.phi_min)},
                  {"grad_norm", finite_or_null(t.grad_norm)},
                  {"iterations", t.iterations},
                  {"hessian_min_eigenvalue_estimate", finite_or_null(t.hessian_min_eigenvalue_estimate)},
                  {"restart_spread", finite_or_null(t.restart_spread)},
                  {"converged", t.converged},
                  {"hull",
                   {{"full_dimensional", t.hull.full_dimensional},
                    {"origin_interior", t.hull.origin_interior},
                    {"lattice_index", t.hull.lattice_index}}}};
  }
  if (r.harmonic_residual) j["harmonic_residual"] = finite_or_null(*r.harmonic_residual);
  if (r.spectral) {
    const auto& s = *r.spectral;
    ojson sp;
    sp["n_max"] = s.n_max;
    sp["period"] = s.period;
    sp["lambda_bar"] = finite_or_null(s.lambda_bar);
    sp["fekete_lower"] = finite_or_null(s.fekete_lower);
    sp["extrapolated_from"] = s.extrapolated_from;
    sp["lambda_hat"] = optional_number(s.extrapolated_lambda());
    sp["gap"] = optional_number(s.gap());
    sp["richardson_c"] = s.extrapolation ? finite_or_null(s.extrapolation->c) : ojson();
    sp["richardson_residual_rms"] = s.extrapolation ? finite_or_null(s.extrapolation->residual_rms) : ojson();
    sp["tolerance"] = s.tolerance;
    sp["verdict"] = std::string(verdict_name(s.verdict));
    sp["note"] = s.note;
    j["spectral"] = sp;
    j["table_cache"] = r.table_cache;
  }
  if (r.monte_carlo) {
    const auto& m = *r.monte_carlo;
    j["monte_carlo"] = {{"n", m.n},
                        {"samples", m.samples},
                        {"empirical", finite_or_null(m.empirical)},
                        {"exact", finite_or_null(m.exact)},
                        {"z_score", finite_or_null(m.z_score)},
                        {"consistent", m.consistent}};
  }
  if (!r.ratios.empty()) {
    ojson rows = ojson::array();
    for (const auto& e : r.ratios) {
      ojson x;
      x["element"] = e.word;
      x["projection"] = e.projection;
      x["predicted"] = finite_or_null(e.predicted);
      x["final_n"] = e.rows.empty() ? ojson() : ojson(e.rows.back().n);
      x["final_ratio"] = e.rows.empty() ? ojson() : finite_or_null(e.rows.back().ratio);
      x["final_deviation"] = finite_or_null(e.final_deviation);
      x["shrinking"] = e.shrinking;
      rows.push_back(x);
    }
    j["ratio"] = rows;
  }
  if (!r.equidist.empty()) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < r.equidist.size(); ++i) {
      const auto& e = r.equidist[i];
      ojson letters = ojson::array();
      for (const auto& l : e.cylinder.letters) letters.push_back(to_string(l));
      rows.push_back({{"cylinder", letters},
                      {"nu_xi", finite_or_null(e.nu_xi)},
                      {"final_m_n", e.rows.empty() ? ojson() : finite_or_null(e.rows.back().m_n)},
                      {"final_quartile_max_deviation", finite_or_null(e.final_quartile_max_deviation)},
                      {"deviation_slope", finite_or_null(e.deviation_slope)},
                      {"trending_down", e.trending_down}});
    }
    j["equidist"] = rows;
  }
  if (!r.pressure.empty()) {
    ojson rows = ojson::array();
    for (const auto& p : r.pressure)
      rows.push_back({{"cylinder", p.cylinder},
                      {"n", p.n},
                      {"p_at_zero", finite_or_null(p.p_at_zero)},
                      {"derivative_at_zero", finite_or_null(p.derivative)},
                      {"nu_xi", finite_or_null(p.nu_xi)},
                      {"ld_eps", p.ld_eps},
                      {"ld_tail_mass", finite_or_null(p.ld_tail_mass)},
                      {"ld_tail_mass_loops", finite_or_null(p.ld_tail_mass_loops)}});
    j["pressure"] = rows;
  }
  return j;
}

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class OutFile {
public:
  explicit OutFile(const std::filesystem::path& p) : path_(p), out_(p, std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot write " + p.string());
  }
  ~OutFile() noexcept(false) {
    out_.close();
    if (!out_ && std::uncaught_exceptions() == 0) throw std::runtime_error("failed writing " + path_.string());
  }
  std::ofstream& operator*() { return out_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Decimal mantissa in [1, 10) of a positive value given its log10.
double decimal_mantissa(double log10_value) { return std::pow(10.0, log10_value - std::floor(log10_value)); }

void write_spectral_csv(const SpectralReport& s, const std::filesystem::path& dir) {
  OutFile f(dir / "spectral.csv");
  *f << "n,return_prob_mantissa,return_prob_log10,root_estimate,gerl_ratio\n";
  std::vector<std::string> roots(s.return_probs.size()), gerl(s.return_probs.size());
  for (const auto& r : s.root_estimates) roots[static_cast<std::size_t>(r.n)] = num(r.value);
  for (const auto& r : s.gerl_ratios) gerl[static_cast<std::size_t>(r.n)] = num(r.value);
  for (std::size_t n = 0; n < s.return_probs.size(); ++n) {
    const auto& p = s.return_probs[n];
    const double l10 = p.log10();
    *f << n << ',' << (p.is_zero() ? "0" : num(decimal_mantissa(l10))) << ',' << (p.is_zero() ? "" : num(l10)) << ','
       << roots[n] << ',' << gerl[n] << '\n';
  }
}

void write_dat(const std::filesystem::path& p, const std::vector<std::pair<int, double>>& rows) {
  OutFile f(p);
  for (const auto& [n, v] : rows)
    if (std::isfinite(v)) *f << n << ' ' << num(v) << '\n';
}

}  // namespace

void emit(const RunReport& report, const std::filesystem::path& out_dir, const std::vector<std::string>& formats) {
  auto has = [&](std::string_view f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  if (has("json")) {
    OutFile f(out_dir / "summary.json");
    *f << report_to_json(report).dump(2) << '\n';
  }
  if (has("csv")) {
    if (report.spectral) write_spectral_csv(*report.spectral, out_dir);
    if (!report.ratios.empty()) {
      OutFile f(out_dir / "ratio.csv");
      *f << "element,n,ratio,predicted,deviation\n";
      for (const auto& e : report.ratios)
        for (const auto& r : e.rows)
          *f << e.word << ',' << r.n << ',' << num(r.ratio) << ',' << num(e.predicted) << ',' << num(r.deviation) << '\n';
    }
    if (!report.equidist.empty()) {
      OutFile f(out_dir / "equidist.csv");
      *f << "cylinder,n,m_n,nu_xi,deviation\n";
      for (std::size_t i = 0; i < report.equidist.size(); ++i)
        for (const auto& r : report.equidist[i].rows)
          *f << i << ',' << r.n << ',' << num(r.m_n) << ',' << num(report.equidist[i].nu_xi) << ','
             << num(r.deviation) << '\n';
    }
    if (!report.pressure.empty()) {
      OutFile f(out_dir / "pressure.csv");
      *f << "cylinder,n,p_at_zero,derivative_at_zero,nu_xi,ld_eps,ld_tail_mass,ld_tail_mass_loops\n";
      for (const auto& p : report.pressure)
        *f << p.cylinder << ',' << p.n << ',' << num(p.p_at_zero) << ',' << num(p.derivative) << ',' << num(p.nu_xi)
           << ',' << num(p.ld_eps) << ',' << num(p.ld_tail_mass) << ',' << num(p.ld_tail_mass_loops) << '\n';
    }
  }
  if (has("plot")) {
    if (report.spectral) {
      std::vector<std::pair<int, double>> rows;
      for (const auto& r : report.spectral->gerl_ratios) rows.emplace_back(r.n, r.value);
      write_dat(out_dir / "gerl_ratio.dat", rows);
      rows.clear();
      for (const auto& r : report.spectral->root_estimates) rows.emplace_back(r.n, r.value);
      write_dat(out_dir / "root_estimate.dat", rows);
      rows.clear();
      for (std::size_t n = 0; n < report.spectral->return_probs.size(); ++n)
        if (!report.spectral->return_probs[n].is_zero())
          rows.emplace_back(static_cast<int>(n), report.spectral->return_probs[n].log10());
      write_dat(out_dir / "return_prob_log10.dat", rows);
    }
    for (std::size_t i = 0; i < report.ratios.size(); ++i) {
      std::vector<std::pair<int, double>> rows;
      for (const auto& r : report.ratios[i].rows) rows.emplace_back(r.n, r.ratio);
      write_dat(out_dir / ("ratio_" + std::to_string(i) + ".dat"), rows);
    }
    for (std::size_t i = 0; i < report.equidist.size(); ++i) {
      std::vector<std::pair<int, double>> rows;
      for (const auto& r : report.equidist[i].rows) rows.emplace_back(r.n, r.deviation);
      write_dat(out_dir / ("equidist_deviation_" + std::to_string(i) + ".dat"), rows);
    }
  }
}

}  // namespace rwg
