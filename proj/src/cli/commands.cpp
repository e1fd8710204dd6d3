#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "frogsim/cli.hpp"
#include "frogsim/experiments.hpp"
#include "frogsim/fm.hpp"
#include "frogsim/harness.hpp"
#include "frogsim/rfm.hpp"
#include "frogsim/walks.hpp"

namespace frogsim::cli {
namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values are written as the strings "nan", "inf", "-inf".
json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

json estimate_json(const Estimate& e) {
  return {{"n", e.n},
          {"mean", num(e.mean)},
          {"std_err", num(e.std_err)},
          {"ci_low", num(e.ci_low)},
          {"ci_high", num(e.ci_high)},
          {"confidence", num(e.confidence)}};
}

json interval_json(const Interval& i) { return json::array({num(i.lo), num(i.hi)}); }

json histogram_json(const Histogram& h) {
  json j = json::object();
  for (const auto& [value, count] : h) j[std::to_string(value)] = count;
  return j;
}

json certificate_json(const Certificate& c) {
  return {{"t", c.t},
          {"p_interval", interval_json(c.p_interval)},
          {"q_interval", interval_json(c.q_interval)},
          {"rho_interval", interval_json(c.rho_interval)},
          {"frak_q_interval", interval_json(c.frakq_interval)},
          {"lower_bound", num(c.lower_bound)},
          {"threshold", num(c.threshold)},
          {"holds", c.holds},
          {"monotonicity_verified", c.monotonicity_verified}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  os << prefix << ": ";
  if (j.is_number_float()) {
    os << format_number(j.get<double>());
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
  os << '\n';
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream os;
  flatten(doc, "", os);
  return os.str();
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw UsageError("failed writing '" + path + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Appends `--key=value` for every config entry whose key is not already on
// the command line, so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  auto given = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  for (std::size_t n = 1; std::getline(f, line); ++n) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(n) + ": bad key");
    }
    if (!given(key)) extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// ---------------------------------------------------------------------------

struct Common {
  int d = 2;
  double p = 0.45;
  double q = 0.999;
  int t = 52;
  std::size_t trials = 10'000;
  std::uint64_t seed = 1;
  int depth_cap = 20;
  std::int64_t round_cap = 1'000'000;
  std::string out;
  std::string format;
  std::string config;
};

void add_config_flag(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key=value file; flags on the command line win");
}

void add_format(CLI::App* sub, std::string& format, const std::string& fallback,
                std::vector<std::string> allowed) {
  format = fallback;
  sub->add_option("--format", format, "output format")
      ->check(CLI::IsMember(allowed))
      ->capture_default_str();
}

int cmd_analyze(const Common& c, std::optional<double> rho_override,
                std::optional<double> fq_override, std::ostream& out) {
  const ModelParams mp{c.d, c.q, c.p};
  mp.validate();
  if (c.t < 2) throw std::invalid_argument("t must be at least 2");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr double inf = std::numeric_limits<double>::infinity();

  double r = nan, s = nan;
  if (c.p < 0.5) {
    const auto ex = excursion_constants(c.p);
    r = ex.r;
    s = ex.s;
  }
  double rho_v = c.p < 1.0 ? rho(c.p) : inf;
  double fq = c.p < 0.5 ? effective_survival(c.q, c.p) : nan;
  if (rho_override) {
    if (!(*rho_override >= 0.0 && *rho_override <= 1.0)) {
      throw std::invalid_argument("--rho must lie in [0, 1]");
    }
    rho_v = *rho_override;
  }
  if (fq_override) {
    if (!(*fq_override >= 0.0 && *fq_override <= 1.0)) {
      throw std::invalid_argument("--frak-q must lie in [0, 1]");
    }
    fq = *fq_override;
  }

  double lb = nan, threshold = nan;
  if (rho_v <= 1.0 && !std::isnan(fq)) {
    lb = conditional_visit_lower_bound(rho_v, fq, c.t);
    threshold = rho_v * fq * fq * fq > 0.0 ? recurrence_threshold(rho_v, fq) : inf;
  }
  const std::vector<Certificate> certs{default_certificate()};
  const auto region = classify_region(mp, certs);

  json config = {{"command", "analyze"}, {"d", c.d}, {"p", c.p}, {"q", c.q}, {"t", c.t}};
  if (rho_override) config["rho"] = *rho_override;
  if (fq_override) config["frak_q"] = *fq_override;
  json doc = {
      {"config", config},
      {"rho", num(rho_v)},
      {"r", num(r)},
      {"s", num(s)},
      {"frak_q", num(fq)},
      {"conditional_visit_lower_bound", num(lb)},
      {"recurrence_threshold", num(threshold)},
      {"condition_holds", !std::isnan(lb) && lb >= threshold},
      {"branching_mean", num(branching_mean(c.q, c.p))},
      {"all_awake_visits",
       num(c.p < 0.5 ? all_awake_expected_visits(c.d, c.q, c.p) : nan)},
      {"region", to_string(region.tag)},
      {"region_detail", region.detail},
  };
  emit(c.out, render(doc, c.format), out);
  return kExitOk;
}

int cmd_certify(const Common& c, Interval p_iv, Interval q_iv, std::ostream& out) {
  Certificate cert;
  try {
    cert = certify_rectangle(p_iv, q_iv, c.t);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  json doc = certificate_json(cert);
  doc["config"] = {{"command", "certify"},
                   {"p_lo", p_iv.lo},
                   {"p_hi", p_iv.hi},
                   {"q_lo", q_iv.lo},
                   {"q_hi", q_iv.hi},
                   {"t", c.t}};
  emit(c.out, render(doc, c.format), out);
  return cert.holds ? kExitOk : kExitFails;
}

int cmd_sweep(const SweepSpec& spec, const Common& c, std::ostream& out) {
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto rows = sweep(spec);
  std::ostringstream os;
  write_sweep_csv(os, rows);
  emit(c.out, os.str(), out);
  if (spec.mode == SweepMode::Simulate) {
    std::size_t capped = 0, total = 0;
    for (const auto& r : rows) {
      capped += r.sim->capped;
      total += r.sim->trials;
    }
    if (total > 0 && 100 * capped > total) return kExitCapped;
  }
  return kExitOk;
}

json simulate_rfm(const Common& c, bool identity, std::size_t& capped) {
  const ModelParams mp{c.d, c.q, c.p};
  mp.validate_recursive();
  if (c.t < 1) throw std::invalid_argument("t must be at least 1");
  if (c.trials < 2) throw std::invalid_argument("trials must be at least 2");
  RfmOptions opts;
  opts.round_cap = c.round_cap;
  const auto runs = run_trials(
      [&](std::uint64_t s, std::size_t) { return run_rfm(mp, c.t, s, opts); }, c.trials,
      c.seed);
  const auto derived = derive(c.q, c.p);
  const auto moments = moment_report(runs, c.t);
  capped = moments.capped;

  std::vector<std::int64_t> visits;
  std::size_t visited = 0;
  for (const auto& o : runs) {
    visits.push_back(o.v_t);
    visited += o.v_t > 0;
  }
  json results = {
      {"v_t", estimate_json(moments.ev)},
      {"v_t_squared", estimate_json(moments.ev2)},
      {"v_t_histogram", histogram_json(histogram(visits))},
      {"p_root_visited", estimate_json(wilson(visited, runs.size(), three_sigma_confidence()))},
      {"moment_ratio", moments.ratio ? num(*moments.ratio) : json(nullptr)},
      {"moment_ratio_std_err", num(moments.ratio_std_err)},
      {"paley_zygmund_bound", moments.pz_bound ? num(*moments.pz_bound) : json(nullptr)},
  };
  if (c.t >= 2) {
    const auto pyx = pyx_estimate(runs);
    results["p_y_given_x"] = {
        {"conditioning_events", pyx.conditioning_events},
        {"estimate", pyx.estimate ? estimate_json(*pyx.estimate) : json(nullptr)},
        {"lower_bound", num(conditional_visit_lower_bound(derived.rho, derived.frak_q, c.t))},
    };
  }
  if (identity) {
    const auto id = check_first_moment_identity(mp, c.t, c.trials, derive_seed(c.seed, 7));
    results["first_moment_identity"] = {
        {"observed", num(id.observed)},
        {"predicted", num(id.predicted)},
        {"residual", num(id.residual)},
        {"sigma", num(id.sigma)},
        {"within_3_sigma", id.within},
        {"predicted_conditioned", num(id.predicted_conditioned)},
        {"residual_conditioned", num(id.residual_conditioned)},
        {"sigma_conditioned", num(id.sigma_conditioned)},
    };
  }
  return {{"derived",
           {{"rho", num(derived.rho)},
            {"r", num(derived.r)},
            {"s", num(derived.s)},
            {"frak_q", num(derived.frak_q)},
            {"rho_frak_q_squared", num(derived.rho * derived.frak_q * derived.frak_q)}}},
          {"results", results}};
}

json simulate_fm(const Common& c, std::size_t& capped) {
  const ModelParams mp{c.d, c.q, c.p};
  mp.validate();
  if (c.trials < 2) throw std::invalid_argument("trials must be at least 2");
  const auto runs = run_trials(
      [&](std::uint64_t s, std::size_t) { return run_fm(mp, c.depth_cap, c.round_cap, s); },
      c.trials, c.seed);
  std::vector<std::int64_t> visits;
  std::vector<double> visits_d, awakened, rounds;
  std::size_t extinct = 0;
  capped = 0;
  for (const auto& o : runs) {
    visits.push_back(o.root_visits);
    visits_d.push_back(static_cast<double>(o.root_visits));
    awakened.push_back(static_cast<double>(o.awakened));
    rounds.push_back(static_cast<double>(o.rounds));
    extinct += o.extinction_round.has_value();
    capped += o.capped;
  }
  const double conf = three_sigma_confidence();
  json derived = {{"branching_mean", num(branching_mean(c.q, c.p))}};
  if (c.p < 0.5) {
    derived["all_awake_visits"] = num(all_awake_expected_visits(c.d, c.q, c.p));
  }
  return {{"derived", derived},
          {"results",
           {{"root_visits", estimate_json(mean_estimate(visits_d, conf))},
            {"root_visits_histogram", histogram_json(histogram(visits))},
            {"awakened", estimate_json(mean_estimate(awakened, conf))},
            {"rounds", estimate_json(mean_estimate(rounds, conf))},
            {"extinct", estimate_json(wilson(extinct, runs.size(), conf))}}}};
}

int cmd_simulate(const Common& c, const std::string& model, bool identity, std::ostream& out) {
  std::size_t capped = 0;
  json doc = model == "rfm" ? simulate_rfm(c, identity, capped) : simulate_fm(c, capped);
  json config = {{"command", "simulate"}, {"model", model}, {"d", c.d},
                 {"p", c.p},              {"q", c.q},         {"trials", c.trials},
                 {"seed", c.seed},        {"round_cap", c.round_cap}};
  if (model == "rfm") {
    config["t"] = c.t;
    config["identity"] = identity;
  } else {
    config["depth_cap"] = c.depth_cap;
  }
  const bool dominated = 100 * capped > c.trials;
  doc["config"] = config;
  doc["schema_version"] = kSchemaVersion;
  doc["capped"] = capped;
  doc["capped_fraction"] = num(static_cast<double>(capped) / static_cast<double>(c.trials));
  doc["cap_dominated"] = dominated;
  doc["timestamp"] = utc_timestamp();
  emit(c.out, render(doc, c.format), out);
  return dominated ? kExitCapped : kExitOk;
}

int cmd_plot(const std::string& in_path, const Common& c, std::ostream& out) {
  std::ifstream f(in_path);
  if (!f) throw UsageError("cannot read '" + in_path + "'");
  const auto rows = read_sweep_csv(f);
  std::string svg;
  try {
    svg = render_phase_svg(rows, {default_certificate()});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(c.out, svg, out);
  return kExitOk;
}

json dominance_json(const DominanceReport& r, double success) {
  json tails = json::array();
  for (int m = 0; m <= r.m_max; ++m) {
    tails.push_back({{"m", m},
                     {"empirical", num(r.empirical_tail[m])},
                     {"bound", num(r.bound_tail[m])},
                     {"slack", num(r.slack[m])}});
  }
  return {{"success", num(success)}, {"offset", r.offset}, {"dominated", r.dominated},
          {"tails", tails}};
}

int cmd_dominance(const Common& c, const std::string& test, int m_max, int start,
                  int fm_depth_cap, std::ostream& out) {
  json doc;
  bool ok = true;
  std::size_t capped = 0;
  const double conf = three_sigma_confidence();
  if (test == "fm-rfm") {
    const ModelParams mp{c.d, c.q, c.p};
    const auto rep = estimate_domination_vs_rfm(mp, c.t, c.trials, c.seed, c.round_cap, 0,
                                                fm_depth_cap);
    json levels = json::array();
    for (std::size_t i = 0; i < rep.levels.levels.size(); ++i) {
      levels.push_back({{"level", rep.levels.levels[i]},
                        {"rfm_tail", num(rep.levels.tail_lower[i])},
                        {"fm_tail", num(rep.levels.tail_upper[i])},
                        {"sigma", num(rep.levels.sigma[i])}});
    }
    doc["results"] = {{"levels", levels},
                      {"worst_z", num(rep.levels.worst_z)},
                      {"dominated", rep.levels.dominated},
                      {"fm_mean", estimate_json(rep.fm_mean)},
                      {"rfm_mean", estimate_json(rep.rfm_mean)},
                      {"mean_gap_sigma", num(rep.mean_gap_sigma)},
                      {"fm_capped", rep.fm_capped},
                      {"rfm_capped", rep.rfm_capped},
                      {"fm_depth_cap", rep.fm_depth_cap}};
    ok = rep.levels.dominated;
    capped = rep.fm_capped + rep.rfm_capped;
  } else {
    if (!(c.p > 0.0 && c.p < 0.5)) throw std::invalid_argument("walk tests need 0 < p < 1/2");
    if (c.trials < 1) throw std::invalid_argument("trials must be positive");
    const auto ex = excursion_constants(c.p);
    std::vector<std::int64_t> samples;
    double success = 0.0;
    if (test == "return-time") {
      const auto runs = run_trials(
          [&](std::uint64_t s, std::size_t) {
            SplitMix64 rng(s);
            return sample_conditioned_return_time(c.p, rng);
          },
          c.trials, c.seed);
      for (const auto& r : runs) {
        samples.push_back(r.tau);
        capped += r.overflow;
      }
      success = 1.0 - ex.r;
    } else {
      const bool conditioned = test == "conditioned-last-visit";
      const auto runs = run_trials(
          [&](std::uint64_t s, std::size_t) {
            SplitMix64 rng(s);
            return conditioned ? sample_conditioned_last_return(start, c.p, rng)
                               : sample_last_visit_time(start, c.p, rng);
          },
          c.trials, c.seed);
      for (const auto& r : runs) {
        samples.push_back(r.time);
        capped += r.overflow;
      }
      success = ex.s;
    }
    const auto rep = dominance_check(samples, success, m_max, conf);
    doc["results"] = dominance_json(rep, success);
    ok = rep.dominated;
  }
  doc["config"] = {{"command", "dominance"}, {"test", test}, {"d", c.d},
                   {"p", c.p},               {"q", c.q},   {"t", c.t},
                   {"trials", c.trials},     {"seed", c.seed}, {"m_max", m_max},
                   {"start", start},         {"round_cap", c.round_cap}};
  doc["schema_version"] = kSchemaVersion;
  doc["capped"] = capped;
  doc["timestamp"] = utc_timestamp();
  emit(c.out, render(doc, c.format), out);
  return ok ? kExitOk : kExitFails;
}

}  // namespace

std::string canonical_form(const nlohmann::json& doc) {
  std::function<json(const json&)> strip = [&](const json& j) -> json {
    if (j.is_object()) {
      json o = json::object();
      for (const auto& [k, v] : j.items()) {
        if (k != "timestamp") o[k] = strip(v);
      }
      return o;
    }
    if (j.is_array()) {
      json a = json::array();
      for (const auto& v : j) a.push_back(strip(v));
      return a;
    }
    return j;
  };
  return strip(doc).dump();
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frog model with death and drift on d-ary trees"};
  app.name(raw_args.empty() ? "frogsim" : raw_args.front());
  app.require_subcommand(1);

  Common c;
  std::optional<double> rho_override, fq_override;
  Interval p_iv{0.4950, 0.4975}, q_iv{0.9999998, 1.0};
  SweepSpec spec;
  std::string mode = "classify";
  std::string model = "rfm";
  bool identity = false;
  std::string plot_in;
  std::string test = "fm-rfm";
  int m_max = 20;
  int start = 1;
  int fm_depth_cap = 0;
  std::string fmt_analyze, fmt_sweep, fmt_simulate, fmt_dominance;

  auto add_model = [&](CLI::App* sub, bool with_t, bool with_sim) {
    sub->add_option("--d", c.d, "branching factor")->capture_default_str();
    sub->add_option("--p", c.p, "drift toward the root")->capture_default_str();
    sub->add_option("--q", c.q, "per-step survival")->capture_default_str();
    if (with_t) sub->add_option("--t", c.t, "truncation depth")->capture_default_str();
    if (with_sim) {
      sub->add_option("--trials", c.trials, "number of runs")->capture_default_str();
      sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
      sub->add_option("--round-cap", c.round_cap, "round limit per run")->capture_default_str();
    }
    sub->add_option("--out", c.out, "output path (default stdout)");
    add_config_flag(sub, c);
  };

  auto* analyze = app.add_subcommand("analyze", "closed-form constants and bounds");
  add_model(analyze, true, false);
  analyze->add_option("--rho", rho_override, "override rho");
  analyze->add_option("--frak-q", fq_override, "override the effective survival");
  add_format(analyze, fmt_analyze, "text", {"text", "json"});

  auto* certify = app.add_subcommand("certify", "certify a (p, q) rectangle");
  certify->add_option("--p-lo", p_iv.lo)->capture_default_str();
  certify->add_option("--p-hi", p_iv.hi)->capture_default_str();
  certify->add_option("--q-lo", q_iv.lo)->default_str(format_number(q_iv.lo));
  certify->add_option("--q-hi", q_iv.hi)->capture_default_str();
  certify->add_option("--t", c.t, "truncation depth")->capture_default_str();
  certify->add_option("--out", c.out, "output path (default stdout)");
  add_config_flag(certify, c);

  auto* sweep_cmd = app.add_subcommand("sweep", "phase-diagram CSV over a (p, q) grid");
  sweep_cmd->add_option("--d", spec.d)->capture_default_str();
  sweep_cmd->add_option("--p-min", spec.p_grid.min)->capture_default_str();
  sweep_cmd->add_option("--p-max", spec.p_grid.max)->capture_default_str();
  sweep_cmd->add_option("--p-steps", spec.p_grid.steps)->capture_default_str();
  sweep_cmd->add_option("--q-min", spec.q_grid.min)->capture_default_str();
  sweep_cmd->add_option("--q-max", spec.q_grid.max)->capture_default_str();
  sweep_cmd->add_option("--q-steps", spec.q_grid.steps)->capture_default_str();
  sweep_cmd->add_option("--mode", mode)
      ->check(CLI::IsMember({"classify", "simulate"}))
      ->capture_default_str();
  sweep_cmd->add_option("--t", spec.t, "depth for lb and threshold")->capture_default_str();
  sweep_cmd->add_option("--trials", spec.trials, "FM runs per cell")->capture_default_str();
  sweep_cmd->add_option("--depth-cap", spec.depth_cap)->capture_default_str();
  sweep_cmd->add_option("--round-cap", spec.round_cap)->capture_default_str();
  sweep_cmd->add_option("--seed", spec.seed)->capture_default_str();
  sweep_cmd->add_option("--out", c.out, "output path (default stdout)");
  add_format(sweep_cmd, fmt_sweep, "csv", {"csv"});
  add_config_flag(sweep_cmd, c);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs of FM or RFM");
  add_model(simulate, true, true);
  simulate->add_option("--model", model)->check(CLI::IsMember({"fm", "rfm"}))->capture_default_str();
  simulate->add_option("--depth-cap", c.depth_cap, "FM truncation depth")->capture_default_str();
  simulate->add_flag("--identity", identity, "RFM: also check the first-moment recursion");
  add_format(simulate, fmt_simulate, "json", {"json", "text"});

  auto* plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
  plot->add_option("csv", plot_in, "sweep CSV")->required();
  plot->add_option("--out", c.out, "output path (default stdout)");
  add_config_flag(plot, c);

  auto* dominance = app.add_subcommand("dominance", "stochastic dominance tests");
  add_model(dominance, true, true);
  dominance->add_option("--test", test)
      ->check(CLI::IsMember({"fm-rfm", "return-time", "last-visit", "conditioned-last-visit"}))
      ->capture_default_str();
  dominance->add_option("--m-max", m_max)->capture_default_str();
  dominance->add_option("--start", start, "walk start for last-visit tests")->capture_default_str();
  dominance->add_option("--fm-depth-cap", fm_depth_cap, "FM depth cap for fm-rfm, 0 means 2t")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_format(dominance, fmt_dominance, "json", {"json", "text"});

  try {
    auto args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*analyze) {
      c.format = fmt_analyze;
      return cmd_analyze(c, rho_override, fq_override, out);
    }
    if (*certify) {
      c.format = "json";
      return cmd_certify(c, p_iv, q_iv, out);
    }
    if (*sweep_cmd) {
      spec.mode = mode == "simulate" ? SweepMode::Simulate : SweepMode::Classify;
      return cmd_sweep(spec, c, out);
    }
    if (*simulate) {
      c.format = fmt_simulate;
      return cmd_simulate(c, model, identity, out);
    }
    if (*plot) return cmd_plot(plot_in, c, out);
    if (*dominance) {
      c.format = fmt_dominance;
      return cmd_dominance(c, test, m_max, start, fm_depth_cap, out);
    }
  } catch (const CsvError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace frogsim::cli
