#include <doctest.h>

#include <cmath>
#include <vector>

#include "frogsim/analysis.hpp"
#include "frogsim/experiments.hpp"
#include "frogsim/harness.hpp"
#include "frogsim/rfm_check.hpp"

using namespace frogsim;
using doctest::Approx;

namespace {
const ModelParams kParams{2, 0.999, 0.45};
}

TEST_CASE("P(a_y | a_x) is reproducible and above its lower bound") {
  const auto a = estimate_pyx(kParams, 3, 20000, 4, 1);
  const auto b = estimate_pyx(kParams, 3, 20000, 4, 2);
  REQUIRE(a.estimate);
  REQUIRE(b.estimate);
  CHECK(a.estimate->mean == b.estimate->mean);
  CHECK(a.conditioning_events == b.conditioning_events);
  CHECK(a.conditioning_events <= a.trials);
  const auto dp = derive(kParams.q, kParams.p);
  CHECK(a.estimate->ci_high >= conditional_visit_lower_bound(dp.rho, dp.frak_q, 3));
  CHECK_THROWS(estimate_pyx(kParams, 1, 10, 1));
}

TEST_CASE("moment report") {
  const auto rep = estimate_moments(kParams, 3, 20000, 8, false, 1);
  CHECK(rep.t == 3);
  CHECK_FALSE(rep.identity);
  REQUIRE(rep.ratio);
  CHECK(*rep.ratio >= 1.0);  // Jensen
  CHECK(*rep.pz_bound == Approx(1.0 / (4.0 * *rep.ratio)));
  CHECK(rep.ev2.mean >= rep.ev.mean);  // V is integer valued
  CHECK(rep.ratio_std_err > 0.0);
  CHECK(rep.capped == 0);
}

TEST_CASE("moment report from a hand-built batch") {
  std::vector<RfmOutcome> runs(4);
  runs[0].v_t = 0;
  runs[1].v_t = 1;
  runs[2].v_t = 1;
  runs[3].v_t = 2;
  runs[3].a_x = true;
  runs[3].a_y = true;
  runs[2].a_x = true;
  const auto rep = moment_report(runs, 2);
  CHECK(rep.ev.mean == 1.0);
  CHECK(rep.ev2.mean == 1.5);
  CHECK(*rep.ratio == 1.5);
  const auto pyx = pyx_estimate(runs);
  CHECK(pyx.conditioning_events == 2);
  CHECK(pyx.estimate->mean == 0.5);
  std::vector<RfmOutcome> zeros(3);
  CHECK_FALSE(moment_report(zeros, 2).ratio);
  CHECK_FALSE(pyx_estimate(zeros).estimate);
}

TEST_CASE("first-moment identity at depth one is exact in expectation") {
  // E[V_0] = 0, so the prediction is rho frak_q^2 for both coefficients.
  const auto id = check_first_moment_identity(kParams, 1, 40000, 3, 1);
  const auto dp = derive(kParams.q, kParams.p);
  CHECK(id.predicted == Approx(dp.rho * dp.frak_q * dp.frak_q));
  CHECK(id.predicted_conditioned == id.predicted);
  CHECK(id.within);
}

TEST_CASE("first-moment identity: the conditioned coefficient fits at depth two") {
  const auto id = check_first_moment_identity(kParams, 2, 40000, 21, 1);
  CHECK(std::abs(id.residual_conditioned) <= 3.0 * id.sigma_conditioned);
  // The rho frak_q^3 version predicts less; its residual is positive.
  CHECK(id.residual > id.residual_conditioned);
}

TEST_CASE("recursion check report is structurally sound") {
  const auto rep = verify_recursion(kParams, 2, 5000, 6, 1);
  CHECK(rep.t == 2);
  CHECK(rep.n == 5000);
  CHECK(rep.tv_noise_floor >= 0.0);
  CHECK(rep.tv_noise_floor < 0.05);
  CHECK(rep.tv_direct_vs_composed <= 1.0);
  // Means agree once the copies are conditioned on their first step.
  CHECK(std::abs(rep.direct_mean.mean - rep.conditioned_mean.mean) <
        4.0 * std::hypot(rep.direct_mean.std_err, rep.conditioned_mean.std_err));
  CHECK(rep.within_budget ==
        (rep.tv_direct_vs_composed <= rep.tv_noise_floor + kRecursionTvBudget));
  CHECK_THROWS(verify_recursion(kParams, 1, 100, 1));
}

TEST_CASE("summaries") {
  const std::vector<double> v{2, 4};
  const bool capped[] = {true, false};
  const auto s = summarize(v, capped);
  CHECK(s.mean == 3.0);
  CHECK(s.capped == 1);
  CHECK(s.std_err == Approx(1.0));
  CHECK(three_sigma_confidence() == Approx(0.9973002039367398));
}
