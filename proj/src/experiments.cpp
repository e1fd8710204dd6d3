#include "frogsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "frogsim/harness.hpp"
#include "frogsim/rfm.hpp"

namespace frogsim {
namespace {

std::vector<RfmOutcome> rfm_batch(const ModelParams& params, int t,
                                  std::size_t n, std::uint64_t seed,
                                  unsigned threads) {
  return run_trials(
      [&](std::uint64_t s, std::size_t) { return run_rfm(params, t, s); }, n,
      seed, threads);
}

std::vector<double> visits_of(const std::vector<RfmOutcome>& runs) {
  std::vector<double> v;
  v.reserve(runs.size());
  for (const auto& o : runs) v.push_back(static_cast<double>(o.v_t));
  return v;
}

PyxEstimate pyx_from(std::span<const RfmOutcome> runs) {
  PyxEstimate out;
  out.trials = runs.size();
  std::size_t hits = 0;
  for (const auto& o : runs) {
    out.capped += o.capped;
    if (!o.a_x) continue;
    ++out.conditioning_events;
    hits += o.a_y;
  }
  if (out.conditioning_events > 0) {
    out.estimate = wilson(hits, out.conditioning_events, three_sigma_confidence());
  }
  return out;
}

}  // namespace

double three_sigma_confidence() { return confidence_for_z(3.0); }

TrialSummary summarize(std::span<const double> values,
                       std::span<const bool> capped) {
  const auto m = sample_moments(values);
  TrialSummary s;
  s.n = m.n;
  s.mean = m.mean;
  s.variance = m.variance;
  s.std_err = m.n > 0 ? std::sqrt(m.variance / static_cast<double>(m.n)) : 0.0;
  for (bool c : capped) s.capped += c;
  return s;
}

PyxEstimate estimate_pyx(const ModelParams& params, int t, std::size_t n_trials,
                         std::uint64_t seed, unsigned threads) {
  if (t < 2) throw std::invalid_argument("P(a_y | a_x) needs t >= 2");
  if (n_trials == 0) throw std::invalid_argument("need at least one trial");
  return pyx_from(rfm_batch(params, t, n_trials, seed, threads));
}

IdentityCheck check_first_moment_identity(const ModelParams& params, int t,
                                          std::size_t n_trials,
                                          std::uint64_t seed,
                                          unsigned threads) {
  params.validate_recursive();
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (n_trials < 2) throw std::invalid_argument("need at least two trials");
  const auto derived = derive(params.q, params.p);
  const double rho_v = derived.rho;
  const double fq = derived.frak_q;

  const auto current =
      summarize(visits_of(rfm_batch(params, t, n_trials, derive_seed(seed, 0), threads)));
  TrialSummary previous;  // E[V_0] = 0 exactly
  double pyx = 0.0;
  double pyx_se = 0.0;
  if (t >= 2) {
    previous = summarize(visits_of(
        rfm_batch(params, t - 1, n_trials, derive_seed(seed, 1), threads)));
    const auto est = pyx_from(rfm_batch(params, t, n_trials, derive_seed(seed, 2), threads));
    if (est.estimate) {
      pyx = est.estimate->mean;
      pyx_se = est.estimate->std_err;
    }
  }

  auto check = [&](double a, double& predicted, double& residual, double& sigma) {
    predicted = a * (1.0 + pyx) * previous.mean + rho_v * fq * fq;
    residual = current.mean - predicted;
    sigma = std::sqrt(current.std_err * current.std_err +
                      std::pow(a * (1.0 + pyx) * previous.std_err, 2) +
                      std::pow(a * previous.mean * pyx_se, 2));
  };

  IdentityCheck out;
  out.observed = current.mean;
  check(rho_v * fq * fq * fq, out.predicted, out.residual, out.sigma);
  check(rho_v * fq * fq, out.predicted_conditioned, out.residual_conditioned,
        out.sigma_conditioned);
  out.within = std::abs(out.residual) <= 3.0 * out.sigma;
  return out;
}

MomentReport moment_report(std::span<const RfmOutcome> runs, int t) {
  if (runs.size() < 2) throw std::invalid_argument("need at least two trials");
  std::vector<double> v, v2;
  v.reserve(runs.size());
  v2.reserve(runs.size());
  MomentReport report;
  report.t = t;
  for (const auto& o : runs) {
    const double x = static_cast<double>(o.v_t);
    v.push_back(x);
    v2.push_back(x * x);
    report.capped += o.capped;
  }
  const double confidence = three_sigma_confidence();
  report.ev = mean_estimate(v, confidence);
  report.ev2 = mean_estimate(v2, confidence);

  const double m1 = report.ev.mean;
  const double m2 = report.ev2.mean;
  if (m1 > 0.0) {
    const double ratio = m2 / (m1 * m1);
    report.ratio = ratio;
    report.pz_bound = 1.0 / (4.0 * ratio);
    // Delta method on (mean V, mean V^2).
    double c11 = 0.0, c12 = 0.0, c22 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = v[i] - m1;
      const double b = v2[i] - m2;
      c11 += a * a;
      c12 += a * b;
      c22 += b * b;
    }
    const double n = static_cast<double>(v.size());
    c11 /= (n - 1.0);
    c12 /= (n - 1.0);
    c22 /= (n - 1.0);
    const double g1 = -2.0 * m2 / (m1 * m1 * m1);
    const double g2 = 1.0 / (m1 * m1);
    const double var = (g1 * g1 * c11 + 2.0 * g1 * g2 * c12 + g2 * g2 * c22) / n;
    report.ratio_std_err = std::sqrt(std::max(0.0, var));
  }
  return report;
}

PyxEstimate pyx_estimate(std::span<const RfmOutcome> runs) { return pyx_from(runs); }

MomentReport estimate_moments(const ModelParams& params, int t,
                              std::size_t n_trials, std::uint64_t seed,
                              bool check_identity, unsigned threads) {
  params.validate_recursive();
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (n_trials < 2) throw std::invalid_argument("need at least two trials");

  const auto runs = rfm_batch(params, t, n_trials, seed, threads);
  MomentReport report = moment_report(runs, t);
  if (check_identity) {
    report.identity =
        check_first_moment_identity(params, t, n_trials, derive_seed(seed, 7), threads);
  }
  return report;
}

}  // namespace frogsim
