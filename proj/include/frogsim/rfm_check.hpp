#pragma once

// Distributional check of the decomposition
//   V_t = 1{A_x} X_t + 1{A_y and A_x} Y_t + 1{A_root_child} Z
// with X_t, Y_t ~ Bin(V_{t-1}, rho fq) from independent depth-(t-1) copies
// and Z ~ Ber(rho fq).

#include <cstddef>
#include <cstdint>

#include "frogsim/analysis.hpp"
#include "frogsim/stats.hpp"

namespace frogsim {

struct RecursionReport {
  int t = 0;
  std::size_t n = 0;
  double tv_direct_vs_composed = 0.0;
  // TV between two independent direct batches: the sampling-noise floor.
  double tv_noise_floor = 0.0;
  // Composition with the depth-(t-1) copies conditioned on their root frog
  // surviving its first step. Diagnostic.
  double tv_direct_vs_conditioned = 0.0;
  Estimate direct_mean;
  Estimate composed_mean;
  Estimate conditioned_mean;
  double direct_variance = 0.0;
  double composed_variance = 0.0;
  // tv_direct_vs_composed <= tv_noise_floor + tv_budget
  bool within_budget = false;
};

inline constexpr double kRecursionTvBudget = 0.01;

RecursionReport verify_recursion(const ModelParams& params, int t,
                                 std::size_t n_trials, std::uint64_t seed,
                                 unsigned threads = 0);

}  // namespace frogsim
