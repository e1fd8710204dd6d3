#pragma once

// Full frog model FM(d, q, p) on the d-ary tree truncated at depth_cap.
//
// Every round each live frog dies with probability 1 - q. A survivor at a
// non-root vertex steps to its parent with probability p and to a uniform
// child otherwise; at the root it stays put with probability p. Stepping
// below depth_cap kills the frog. Arriving at the root counts a visit;
// staying there does not. Arriving at a vertex with a sleeping frog wakes
// it, and the woken frog moves from the next round on.

#include <cstdint>
#include <functional>
#include <optional>

#include "frogsim/analysis.hpp"
#include "frogsim/stats.hpp"
#include "frogsim/tree.hpp"

namespace frogsim {

inline constexpr std::size_t kDefaultLiveCap = 10'000'000;

struct FmOptions {
  std::size_t live_cap = kDefaultLiveCap;
  // Called for every arrival at a vertex (not for staying at the root).
  std::function<void(VertexId, int depth)> on_arrival;
};

struct FmOutcome {
  std::int64_t root_visits = 0;
  std::int64_t awakened = 0;
  std::optional<std::int64_t> extinction_round;
  std::int64_t rounds = 0;
  bool capped = false;

  bool operator==(const FmOutcome&) const = default;
};

FmOutcome run_fm(const ModelParams& params, int depth_cap,
                 std::int64_t round_cap, std::uint64_t seed,
                 const FmOptions& options = {});

struct DominationReport {
  TwoSampleDominance levels;  // lower = RFM v_t, upper = FM root visits
  Estimate fm_mean;
  Estimate rfm_mean;
  double mean_gap_sigma = 0.0;  // (rfm - fm) / combined sd
  bool means_consistent = true; // fm_mean >= rfm_mean - 3 sd
  std::size_t fm_capped = 0;
  std::size_t rfm_capped = 0;
  int fm_depth_cap = 0;
};

// One-sided check that FM root visits stochastically dominate RFM v_t at the
// same (q, p), at 3 sigma per level. fm_depth_cap <= 0 means 2t. A cap of t
// absorbs FM excursions that RFM's trimmed walks never make, which breaks
// the comparison near zero visits.
DominationReport estimate_domination_vs_rfm(const ModelParams& params, int t,
                                            std::size_t n_trials,
                                            std::uint64_t seed,
                                            std::int64_t fm_round_cap = 1'000'000,
                                            unsigned threads = 0,
                                            int fm_depth_cap = 0);

}  // namespace frogsim
