#pragma once

// Monte Carlo estimators for the quantities the analysis predicts about the
// recursive model. Every estimator takes a master seed and reproduces its
// output exactly for any thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "frogsim/analysis.hpp"
#include "frogsim/rfm.hpp"
#include "frogsim/stats.hpp"

namespace frogsim {

// Confidence matching the +-3 sigma tolerances used throughout.
double three_sigma_confidence();

struct TrialSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_err = 0.0;
  std::size_t capped = 0;
};

// Aggregates per-trial values in index order. capped may be empty.
TrialSummary summarize(std::span<const double> values,
                       std::span<const bool> capped = {});

struct PyxEstimate {
  std::size_t trials = 0;
  std::size_t conditioning_events = 0;  // runs with a_x
  std::size_t capped = 0;
  std::optional<Estimate> estimate;     // empty when a_x never occurred
};

// P(a_y | a_x) at depth t, Wilson interval at 3 sigma.
PyxEstimate estimate_pyx(const ModelParams& params, int t, std::size_t n_trials,
                         std::uint64_t seed, unsigned threads = 0);

struct IdentityCheck {
  double observed = 0.0;     // E^[V_t]
  double predicted = 0.0;    // rho fq^3 (1 + P^yx) E^[V_{t-1}] + rho fq^2
  double residual = 0.0;     // observed - predicted
  double sigma = 0.0;        // combined standard error of the residual
  bool within = false;       // |residual| <= 3 sigma
  // Same check with the first-step-conditioned coefficient rho fq^2;
  // reported for diagnosis only.
  double predicted_conditioned = 0.0;
  double residual_conditioned = 0.0;
  double sigma_conditioned = 0.0;
};

struct MomentReport {
  int t = 0;
  Estimate ev;   // E[V_t]
  Estimate ev2;  // E[V_t^2]
  std::optional<double> ratio;     // E[V^2] / E[V]^2; empty if every V_t = 0
  std::optional<double> pz_bound;  // 1 / (4 ratio)
  double ratio_std_err = 0.0;      // delta-method standard error of ratio
  std::optional<IdentityCheck> identity;  // filled for t >= 1 when requested
  std::size_t capped = 0;
};

MomentReport estimate_moments(const ModelParams& params, int t,
                              std::size_t n_trials, std::uint64_t seed,
                              bool check_identity = true, unsigned threads = 0);

// Moments and the P(a_y | a_x) estimate reduced from an existing batch.
// The identity check is left empty.
MomentReport moment_report(std::span<const RfmOutcome> runs, int t);
PyxEstimate pyx_estimate(std::span<const RfmOutcome> runs);

// Three independent batches (depth t, depth t - 1, and P(a_y | a_x) at t)
// compared against the first-moment recursion.
IdentityCheck check_first_moment_identity(const ModelParams& params, int t,
                                          std::size_t n_trials,
                                          std::uint64_t seed,
                                          unsigned threads = 0);

}  // namespace frogsim
