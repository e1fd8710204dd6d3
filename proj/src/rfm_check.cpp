#include "frogsim/rfm_check.hpp"

#include <stdexcept>
#include <vector>

#include "frogsim/experiments.hpp"
#include "frogsim/harness.hpp"
#include "frogsim/rfm.hpp"

namespace frogsim {
namespace {

std::int64_t binomial(std::int64_t n, double prob, SplitMix64& rng) {
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < n; ++i) k += rng.bernoulli(prob);
  return k;
}

struct Composed {
  std::int64_t literal = 0;
  std::int64_t conditioned = 0;
};

}  // namespace

RecursionReport verify_recursion(const ModelParams& params, int t,
                                 std::size_t n_trials, std::uint64_t seed,
                                 unsigned threads) {
  params.validate_recursive();
  if (t < 2) throw std::invalid_argument("recursion check needs t >= 2");
  if (n_trials < 2) throw std::invalid_argument("need at least two trials");
  const auto derived = derive(params.q, params.p);
  const double back = derived.rho * derived.frak_q;

  auto direct = [&](std::uint64_t master) {
    const auto runs = run_trials(
        [&](std::uint64_t s, std::size_t) { return run_rfm(params, t, s).v_t; },
        n_trials, master, threads);
    return runs;
  };
  const auto direct_a = direct(derive_seed(seed, 0));
  const auto direct_b = direct(derive_seed(seed, 1));

  const auto composed = run_trials(
      [&](std::uint64_t s, std::size_t) {
        const auto events = run_rfm(params, t, derive_seed(s, 0));
        const auto vx = run_rfm(params, t - 1, derive_seed(s, 1)).v_t;
        const auto vy = run_rfm(params, t - 1, derive_seed(s, 2)).v_t;
        // First-step-conditioned copies: resample until the copy's root frog
        // made its first jump.
        auto conditioned_copy = [&](std::uint64_t stream) -> std::int64_t {
          if (derived.frak_q <= 0.0) return 0;
          for (std::uint64_t k = 0;; ++k) {
            const auto o = run_rfm(params, t - 1, derive_seed(stream, k));
            if (o.a_rootchild || k > 10'000) return o.v_t;
          }
        };
        const auto cx = conditioned_copy(derive_seed(s, 3));
        const auto cy = conditioned_copy(derive_seed(s, 4));

        SplitMix64 rng(derive_seed(s, 5));
        const std::int64_t x_part = events.a_x ? binomial(vx, back, rng) : 0;
        const std::int64_t y_part = events.a_x && events.a_y ? binomial(vy, back, rng) : 0;
        const std::int64_t z_part = events.a_rootchild ? rng.bernoulli(back) : 0;
        const std::int64_t cx_part = events.a_x ? binomial(cx, back, rng) : 0;
        const std::int64_t cy_part = events.a_x && events.a_y ? binomial(cy, back, rng) : 0;
        return Composed{x_part + y_part + z_part, cx_part + cy_part + z_part};
      },
      n_trials, derive_seed(seed, 2), threads);

  std::vector<std::int64_t> literal, conditioned;
  literal.reserve(n_trials);
  conditioned.reserve(n_trials);
  for (const auto& c : composed) {
    literal.push_back(c.literal);
    conditioned.push_back(c.conditioned);
  }

  auto as_double = [](const std::vector<std::int64_t>& v) {
    return std::vector<double>(v.begin(), v.end());
  };
  const double confidence = three_sigma_confidence();

  RecursionReport report;
  report.t = t;
  report.n = n_trials;
  report.tv_direct_vs_composed = total_variation(direct_a, literal);
  report.tv_noise_floor = total_variation(direct_a, direct_b);
  report.tv_direct_vs_conditioned = total_variation(direct_a, conditioned);
  const auto da = as_double(direct_a);
  const auto la = as_double(literal);
  report.direct_mean = mean_estimate(da, confidence);
  report.composed_mean = mean_estimate(la, confidence);
  report.conditioned_mean = mean_estimate(as_double(conditioned), confidence);
  report.direct_variance = sample_moments(da).variance;
  report.composed_variance = sample_moments(la).variance;
  report.within_budget =
      report.tv_direct_vs_composed <= report.tv_noise_floor + kRecursionTvBudget;
  return report;
}

}  // namespace frogsim
