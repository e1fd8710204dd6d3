#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "frogsim/cli.hpp"
#include "frogsim/fm.hpp"
#include "frogsim/harness.hpp"

namespace frogsim::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double GridSpec::at(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void SweepSpec::validate() const {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  for (const GridSpec* g : {&p_grid, &q_grid}) {
    if (g->steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
    if (!(g->min >= 0.0 && g->max <= 1.0 && g->min <= g->max)) {
      throw std::invalid_argument("grid bounds must satisfy 0 <= min <= max <= 1");
    }
  }
  if (t < 2) throw std::invalid_argument("t must be at least 2");
  if (mode == SweepMode::Simulate) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (depth_cap < 1) throw std::invalid_argument("depth-cap must be positive");
    if (round_cap < 1) throw std::invalid_argument("round-cap must be positive");
  }
}

SweepRow classify_cell(int d, double p, double q, int t,
                       const std::vector<Certificate>& certificates) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr double inf = std::numeric_limits<double>::infinity();
  SweepRow row;
  row.d = d;
  row.p = p;
  row.q = q;
  row.cls = classify_region(ModelParams{d, q, p}, certificates).tag;
  row.branching_mean = branching_mean(q, p);
  row.rho = p < 1.0 ? rho(p) : inf;
  if (p < 0.5) {
    row.frak_q = effective_survival(q, p);
    row.all_awake_visits = all_awake_expected_visits(d, q, p);
    row.lb = conditional_visit_lower_bound(row.rho, row.frak_q, t);
    const double a = row.rho * row.frak_q * row.frak_q * row.frak_q;
    row.threshold = a > 0.0 ? recurrence_threshold(row.rho, row.frak_q) : inf;
  } else {
    row.frak_q = nan;
    row.all_awake_visits = nan;
    row.lb = nan;
    row.threshold = nan;
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::vector<Certificate> certs{default_certificate()};
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.p_grid.steps) * spec.q_grid.steps);
  for (int i = 0; i < spec.p_grid.steps; ++i) {
    for (int j = 0; j < spec.q_grid.steps; ++j) {
      rows.push_back(classify_cell(spec.d, spec.p_grid.at(i), spec.q_grid.at(j), spec.t, certs));
    }
  }
  if (spec.mode == SweepMode::Classify) return rows;

  for (std::size_t c = 0; c < rows.size(); ++c) {
    auto& row = rows[c];
    const ModelParams params{spec.d, row.q, row.p};
    const auto runs = run_trials(
        [&](std::uint64_t s, std::size_t) {
          return run_fm(params, spec.depth_cap, spec.round_cap, s);
        },
        spec.trials, derive_seed(spec.seed, c), threads);
    std::vector<double> visits;
    visits.reserve(runs.size());
    SweepSimulation sim;
    sim.trials = runs.size();
    for (const auto& o : runs) {
      visits.push_back(static_cast<double>(o.root_visits));
      sim.capped += o.capped;
    }
    const auto m = sample_moments(visits);
    sim.mean = m.mean;
    sim.std_err = m.n > 1 ? std::sqrt(m.variance / static_cast<double>(m.n)) : 0.0;
    row.sim = sim;
  }
  return rows;
}

}  // namespace frogsim::cli
