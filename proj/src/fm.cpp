#include "frogsim/fm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "frogsim/harness.hpp"
#include "frogsim/rfm.hpp"
#include "frogsim/rng.hpp"

namespace frogsim {
namespace {

struct FmFrog {
  VertexId vertex;
  int depth;
};

}  // namespace

FmOutcome run_fm(const ModelParams& params, int depth_cap,
                 std::int64_t round_cap, std::uint64_t seed,
                 const FmOptions& options) {
  params.validate();
  if (depth_cap < 1 || depth_cap >= max_indexable_depth(params.d)) {
    throw std::invalid_argument("depth_cap out of range");
  }
  if (round_cap < 1) throw std::invalid_argument("round_cap must be positive");
  const int d = params.d;
  const double q = params.q;
  const double p = params.p;

  FmOutcome out;
  SplitMix64 rng(seed);
  VisitedSet woken(vertices_up_to(d, depth_cap));
  woken.insert(kRoot);

  std::vector<FmFrog> frogs{{kRoot, 0}};
  std::vector<FmFrog> next;
  std::vector<FmFrog> newborn;

  std::int64_t round = 0;
  while (!frogs.empty()) {
    if (round >= round_cap) {
      out.capped = true;
      break;
    }
    ++round;
    next.clear();
    newborn.clear();
    for (FmFrog f : frogs) {
      if (!rng.bernoulli(q)) continue;
      if (rng.bernoulli(p)) {
        if (f.depth == 0) {
          next.push_back(f);  // stays at the root
          continue;
        }
        f.vertex = parent_of(f.vertex, d);
        --f.depth;
        if (options.on_arrival) options.on_arrival(f.vertex, f.depth);
        if (f.vertex == kRoot) ++out.root_visits;
        next.push_back(f);
        continue;
      }
      if (f.depth + 1 > depth_cap) continue;  // absorbed
      f.vertex = child_of(f.vertex, d, rng.below(d));
      ++f.depth;
      if (options.on_arrival) options.on_arrival(f.vertex, f.depth);
      if (woken.insert(f.vertex)) {
        newborn.push_back(f);
        ++out.awakened;
      }
      next.push_back(f);
    }
    next.insert(next.end(), newborn.begin(), newborn.end());
    frogs.swap(next);
    if (frogs.size() > options.live_cap) {
      out.capped = true;
      break;
    }
  }
  out.rounds = round;
  if (frogs.empty()) out.extinction_round = round;
  return out;
}

DominationReport estimate_domination_vs_rfm(const ModelParams& params, int t,
                                            std::size_t n_trials,
                                            std::uint64_t seed,
                                            std::int64_t fm_round_cap,
                                            unsigned threads,
                                            int fm_depth_cap) {
  params.validate();
  if (params.d != 2) throw std::invalid_argument("domination check uses d = 2");
  if (!(params.p > 0.0 && params.p < 0.5)) {
    throw std::invalid_argument("domination check needs 0 < p < 1/2");
  }
  if (n_trials < 2) throw std::invalid_argument("need at least two trials");
  const int cap = fm_depth_cap > 0 ? fm_depth_cap : 2 * t;

  const auto fm_runs = run_trials(
      [&](std::uint64_t s, std::size_t) {
        return run_fm(params, cap, fm_round_cap, s);
      },
      n_trials, derive_seed(seed, 0), threads);
  const auto rfm_runs = run_trials(
      [&](std::uint64_t s, std::size_t) { return run_rfm(params, t, s); },
      n_trials, derive_seed(seed, 1), threads);

  DominationReport report;
  report.fm_depth_cap = cap;
  std::vector<std::int64_t> fm_visits, rfm_visits;
  std::vector<double> fm_values, rfm_values;
  for (const auto& o : fm_runs) {
    fm_visits.push_back(o.root_visits);
    fm_values.push_back(static_cast<double>(o.root_visits));
    report.fm_capped += o.capped;
  }
  for (const auto& o : rfm_runs) {
    rfm_visits.push_back(o.v_t);
    rfm_values.push_back(static_cast<double>(o.v_t));
    report.rfm_capped += o.capped;
  }
  report.levels = one_sided_dominance(rfm_visits, fm_visits, 3.0);
  report.fm_mean = mean_estimate(fm_values, confidence_for_z(3.0));
  report.rfm_mean = mean_estimate(rfm_values, confidence_for_z(3.0));
  const double sd = std::hypot(report.fm_mean.std_err, report.rfm_mean.std_err);
  const double gap = report.rfm_mean.mean - report.fm_mean.mean;
  report.mean_gap_sigma = sd > 0.0 ? gap / sd : (gap > 0.0 ? INFINITY : 0.0);
  report.means_consistent = gap <= 3.0 * sd;
  return report;
}

}  // namespace frogsim
