#include <doctest.h>

#include <cmath>
#include <vector>

#include "frogsim/analysis.hpp"
#include "frogsim/harness.hpp"
#include "frogsim/stats.hpp"
#include "frogsim/walks.hpp"

using namespace frogsim;
using doctest::Approx;

namespace {

template <class F>
auto sample(F f, std::size_t n, std::uint64_t seed) {
  return run_trials(
      [&](std::uint64_t s, std::size_t) {
        SplitMix64 rng(s);
        return f(rng);
      },
      n, seed, 1);
}

}  // namespace

TEST_CASE("escape margin keeps the return probability below 1e-12") {
  for (double p : {0.05, 0.2, 0.3, 0.45, 0.49}) {
    const int m = escape_margin(p);
    CHECK(std::pow(rho(p), m) <= 1e-12);
    CHECK(std::pow(rho(p), m - 1) > 1e-12);
  }
  CHECK(hit_probability(3, 0.3) == Approx(std::pow(3.0 / 7.0, 3)));
  CHECK(hit_probability(3, 0.3) == Approx(0.0787172011662).epsilon(1e-11));
}

TEST_CASE("hitting walks: parity and frequency") {
  const auto runs = sample([](SplitMix64& r) { return sample_hit(2, 0.3, r); }, 20000, 3);
  std::size_t hits = 0;
  for (const auto& h : runs) {
    CHECK_FALSE(h.overflow);
    if (h.hit) {
      ++hits;
      CHECK(h.steps % 2 == 0);
      CHECK(h.steps >= 2);
    }
  }
  const auto est = wilson(hits, runs.size(), confidence_for_z(4.0));
  CHECK(est.ci_low <= hit_probability(2, 0.3));
  CHECK(hit_probability(2, 0.3) <= est.ci_high);
}

TEST_CASE("hit sampler input validation") {
  SplitMix64 rng(1);
  CHECK_THROWS(sample_hit(1, 0.0, rng));
  CHECK_THROWS(sample_hit(-1, 0.3, rng));
  const auto h = sample_hit(0, 0.3, rng);
  CHECK(h.hit);
  CHECK(h.steps == 0);
}

TEST_CASE("conditioned return time is odd and its tail is geometric") {
  const auto runs =
      sample([](SplitMix64& r) { return sample_conditioned_return_time(0.3, r); }, 20000, 5);
  std::vector<std::int64_t> taus;
  for (const auto& e : runs) {
    REQUIRE(e.returned);
    CHECK(e.tau % 2 == 1);
    taus.push_back(e.tau);
  }
  const double r = excursion_constants(0.3).r;
  const auto rep = dominance_check(taus, 1.0 - r, 20, confidence_for_z(3.0));
  CHECK(rep.offset == 1);
  CHECK(rep.dominated);
  CHECK(rep.empirical_tail[0] == 1.0);
}

TEST_CASE("last visit times are even and conditioned ones are smaller") {
  const auto free_runs =
      sample([](SplitMix64& r) { return sample_last_visit_time(3, 0.3, r); }, 20000, 7);
  const auto cond_runs = sample(
      [](SplitMix64& r) { return sample_conditioned_last_return(3, 0.3, r); }, 20000, 8);
  std::vector<std::int64_t> t, tc;
  std::size_t no_return = 0;
  for (const auto& s : free_runs) {
    CHECK(s.time % 2 == 0);
    t.push_back(s.time);
    no_return += s.returns == 0;
    CHECK((s.returns == 0) == (s.time == 0));
  }
  for (const auto& s : cond_runs) {
    CHECK(s.time % 2 == 0);
    CHECK(s.attempts >= 1);
    tc.push_back(s.time);
  }
  const auto est = wilson(no_return, free_runs.size(), confidence_for_z(4.0));
  CHECK(est.ci_low <= 0.4);
  CHECK(0.4 <= est.ci_high);
  CHECK(one_sided_dominance(tc, t, 3.0).dominated);
}

TEST_CASE("exact last-visit tail at p = 0.3 exceeds the Geo(s) tail") {
  // P(T >= 4) = (2p)^2 + 2p (1 - 2p) P(excursion >= 4 | return) = 0.432,
  // against (1 - s)^2 = 0.41132. The empirical tail must see it.
  const double s = excursion_constants(0.3).s;
  CHECK((1.0 - s) * (1.0 - s) == Approx(0.41131755984775182).epsilon(1e-13));
  const auto runs =
      sample([](SplitMix64& r) { return sample_last_visit_time(1, 0.3, r); }, 40000, 9);
  std::size_t tail = 0;
  for (const auto& x : runs) tail += x.time >= 4;
  const auto est = wilson(tail, runs.size(), confidence_for_z(4.0));
  CHECK(est.ci_low <= 0.432);
  CHECK(0.432 <= est.ci_high);
  CHECK(est.ci_low > (1.0 - s) * (1.0 - s));
}

TEST_CASE("dominance_check on constructed samples") {
  // All samples equal 2: P(x/2 >= 1) = 1 > (1 - 0.5).
  std::vector<std::int64_t> twos(1000, 2);
  auto rep = dominance_check(twos, 0.5, 3, 0.95);
  CHECK(rep.offset == 0);
  CHECK_FALSE(rep.dominated);
  // All zeros trivially satisfy any geometric tail.
  std::vector<std::int64_t> zeros(1000, 0);
  rep = dominance_check(zeros, 0.5, 3, 0.95);
  CHECK(rep.dominated);
  CHECK(rep.bound_tail[3] == Approx(0.125));
  CHECK_THROWS(dominance_check(std::vector<std::int64_t>{}, 0.5, 3, 0.95));
  CHECK_THROWS(dominance_check(zeros, 0.0, 3, 0.95));
}

TEST_CASE("walk samplers are deterministic per seed") {
  SplitMix64 a(123), b(123);
  for (int i = 0; i < 50; ++i) {
    const auto x = sample_last_visit_time(2, 0.4, a);
    const auto y = sample_last_visit_time(2, 0.4, b);
    CHECK(x.time == y.time);
    CHECK(x.returns == y.returns);
  }
}

TEST_CASE("walk samplers reject invalid drift") {
  SplitMix64 rng(1);
  CHECK_THROWS(sample_conditioned_return_time(0.5, rng));
  CHECK_THROWS(sample_last_visit_time(1, 0.6, rng));
  CHECK_THROWS(sample_last_visit_time(0, 0.3, rng));
}
