#pragma once

// Nearest-neighbour walk on the integers that steps left with probability p.
// Position is the distance-from-root coordinate of a frog on the tree.

#include <cstdint>
#include <span>
#include <vector>

#include "frogsim/rng.hpp"

namespace frogsim {

inline constexpr std::int64_t kWalkStepCap = 10'000'000;

// Extra distance past which a right-drifting walk counts as escaped. The
// chance of ever coming back that far is rho^margin < 1e-12.
int escape_margin(double p);

// rho^n: probability that the walk started at n ever reaches 0.
double hit_probability(int n, double p);

struct HitSample {
  bool hit = false;
  bool overflow = false;
  std::int64_t steps = 0;
};

// Runs the walk from n until it reaches 0 or escapes.
HitSample sample_hit(int n, double p, SplitMix64& rng);

struct ExcursionSample {
  std::int64_t tau = 0;  // odd when returned
  bool returned = false;
  bool overflow = false;
};

// Return time to 0 from 1, conditioned on returning. Conditioning reverses
// the drift, so this runs a walk with left probability 1 - p.
ExcursionSample sample_conditioned_return_time(double p, SplitMix64& rng);

struct LastVisitSample {
  std::int64_t time = 0;   // last visit to the start; even
  std::int64_t returns = 0;
  std::int64_t attempts = 1;  // rejection rounds (conditioned sampler only)
  bool overflow = false;
};

// Time of the final visit to n for the walk started at n.
LastVisitSample sample_last_visit_time(int n, double p, SplitMix64& rng);

// Same, with the walk conditioned never to go below n (rejection sampling;
// acceptance probability 1 - rho).
LastVisitSample sample_conditioned_last_return(int n, double p, SplitMix64& rng);

struct DominanceReport {
  int m_max = 0;
  int offset = 0;
  std::vector<double> empirical_tail;  // P((x - offset)/2 >= m), m = 0..m_max
  std::vector<double> bound_tail;      // (1 - success)^m
  std::vector<double> slack;           // empirical - Wilson lower end
  bool dominated = true;
};

// Compares the empirical tail of (x - offset)/2 with the Geo(success) tail.
// offset is 1 when every sample is odd and 0 otherwise.
DominanceReport dominance_check(std::span<const std::int64_t> samples,
                                double success, int m_max, double confidence);

}  // namespace frogsim
