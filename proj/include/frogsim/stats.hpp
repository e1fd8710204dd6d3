#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace frogsim {

struct Estimate {
  std::size_t n = 0;
  double mean = 0.0;
  double std_err = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence = 0.0;
};

// Two-sided normal quantile for the given coverage, e.g. 0.95 -> 1.95996.
double z_for_confidence(double confidence);
// Coverage of a symmetric +-z normal interval, e.g. 3 -> 0.9973.
double confidence_for_z(double z);

// Wilson score interval for a proportion. std_err is the plug-in
// sqrt(p(1-p)/n). Requires n > 0.
Estimate wilson(std::size_t successes, std::size_t n, double confidence);

// Lower end of the Wilson interval with multiplier z.
double wilson_lower(std::size_t successes, std::size_t n, double z);

// Normal-approximation interval for a sample mean.
Estimate mean_estimate(std::span<const double> values, double confidence);

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

// Two-pass moments with compensated summation, evaluated in index order.
Moments sample_moments(std::span<const double> values);

using Histogram = std::map<std::int64_t, std::size_t>;

Histogram histogram(std::span<const std::int64_t> values);

// Total-variation distance between two empirical laws.
double total_variation(const Histogram& a, std::size_t n_a, const Histogram& b,
                       std::size_t n_b);
double total_variation(std::span<const std::int64_t> a,
                       std::span<const std::int64_t> b);

// Per-level comparison of P(upper >= k) against P(lower >= k).
struct TwoSampleDominance {
  std::vector<std::int64_t> levels;
  std::vector<double> tail_lower;
  std::vector<double> tail_upper;
  std::vector<double> sigma;  // sd of the difference of the two tail estimates
  double worst_z = 0.0;       // max over levels of (lower - upper) / sigma
  bool dominated = true;      // tail_lower <= tail_upper + k sigma everywhere
};

// One-sided empirical-CDF test of `lower` being stochastically smaller than
// `upper`. Levels are every distinct value seen in either sample.
TwoSampleDominance one_sided_dominance(std::span<const std::int64_t> lower,
                                       std::span<const std::int64_t> upper,
                                       double k_sigma);

}  // namespace frogsim
