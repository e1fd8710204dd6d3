#include "frogsim/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frogsim/analysis.hpp"
#include "frogsim/stats.hpp"

namespace frogsim {
namespace {

void require_drift(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("walk samplers need 0 < p < 1/2");
  }
}

// Walk from offset 0 until it is `margin` to the right of its start.
// Returns false if it drops below 0 while `stay_above` is set.
bool run_to_escape(double p, int margin, bool stay_above, SplitMix64& rng,
                   LastVisitSample& out) {
  std::int64_t x = 0;
  std::int64_t t = 0;
  out.time = 0;
  out.returns = 0;
  while (x < margin) {
    if (t >= kWalkStepCap) {
      out.overflow = true;
      return true;
    }
    x += rng.bernoulli(p) ? -1 : 1;
    ++t;
    if (x < 0 && stay_above) return false;
    if (x == 0) {
      out.time = t;
      ++out.returns;
    }
  }
  return true;
}

}  // namespace

int escape_margin(double p) {
  require_drift(p);
  return static_cast<int>(std::ceil(12.0 * std::log(10.0) / std::log(1.0 / rho(p))));
}

double hit_probability(int n, double p) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::domain_error("hit probability needs 0 <= p < 1/2");
  }
  return std::pow(rho(p), n);
}

HitSample sample_hit(int n, double p, SplitMix64& rng) {
  require_drift(p);
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  HitSample out;
  const std::int64_t escape = static_cast<std::int64_t>(n) + escape_margin(p);
  std::int64_t x = n;
  while (x != 0 && x < escape) {
    if (out.steps >= kWalkStepCap) {
      out.overflow = true;
      return out;
    }
    x += rng.bernoulli(p) ? -1 : 1;
    ++out.steps;
  }
  out.hit = x == 0;
  return out;
}

ExcursionSample sample_conditioned_return_time(double p, SplitMix64& rng) {
  require_drift(p);
  ExcursionSample out;
  std::int64_t x = 1;
  // Reversed drift: left with probability 1 - p.
  const double left = 1.0 - p;
  while (x != 0) {
    if (out.tau >= kWalkStepCap) {
      out.overflow = true;
      return out;
    }
    x += rng.bernoulli(left) ? -1 : 1;
    ++out.tau;
  }
  out.returned = true;
  return out;
}

LastVisitSample sample_last_visit_time(int n, double p, SplitMix64& rng) {
  require_drift(p);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  LastVisitSample out;
  run_to_escape(p, escape_margin(p), false, rng, out);
  return out;
}

LastVisitSample sample_conditioned_last_return(int n, double p, SplitMix64& rng) {
  require_drift(p);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const int margin = escape_margin(p);
  LastVisitSample out;
  std::int64_t attempts = 1;
  while (!run_to_escape(p, margin, true, rng, out)) {
    if (++attempts > kWalkStepCap) {
      out.overflow = true;
      break;
    }
  }
  out.attempts = attempts;
  return out;
}

DominanceReport dominance_check(std::span<const std::int64_t> samples,
                                double success, int m_max, double confidence) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  if (!(success > 0.0 && success <= 1.0)) {
    throw std::invalid_argument("success must lie in (0, 1]");
  }
  if (m_max < 0) throw std::invalid_argument("m_max must be nonnegative");

  DominanceReport report;
  report.m_max = m_max;
  report.offset = std::all_of(samples.begin(), samples.end(),
                              [](std::int64_t x) { return x % 2 != 0; })
                      ? 1
                      : 0;
  const double z = z_for_confidence(confidence);
  const std::size_t n = samples.size();

  std::vector<std::int64_t> halves;
  halves.reserve(n);
  for (auto x : samples) halves.push_back(x - report.offset);
  std::sort(halves.begin(), halves.end());

  for (int m = 0; m <= m_max; ++m) {
    const auto it = std::lower_bound(halves.begin(), halves.end(),
                                     static_cast<std::int64_t>(2) * m);
    const auto count = static_cast<std::size_t>(halves.end() - it);
    const double empirical = static_cast<double>(count) / static_cast<double>(n);
    const double bound = std::pow(1.0 - success, m);
    const double slack = empirical - wilson_lower(count, n, z);
    report.empirical_tail.push_back(empirical);
    report.bound_tail.push_back(bound);
    report.slack.push_back(slack);
    if (empirical > bound + slack) report.dominated = false;
  }
  return report;
}

}  // namespace frogsim
