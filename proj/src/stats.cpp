#include "frogsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace frogsim {

double z_for_confidence(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  const boost::math::normal standard;
  return boost::math::quantile(standard, 0.5 + confidence / 2.0);
}

double confidence_for_z(double z) {
  const boost::math::normal standard;
  return 2.0 * boost::math::cdf(standard, z) - 1.0;
}

double wilson_lower(std::size_t successes, std::size_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson interval needs n > 0");
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double centre = phat + z2 / (2.0 * nn);
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  return std::max(0.0, (centre - half) / (1.0 + z2 / nn));
}

Estimate wilson(std::size_t successes, std::size_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("wilson interval needs n > 0");
  const double z = z_for_confidence(confidence);
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  Estimate e;
  e.n = n;
  e.mean = phat;
  e.std_err = std::sqrt(phat * (1.0 - phat) / nn);
  e.ci_low = std::clamp(centre - half, 0.0, phat);
  e.ci_high = std::clamp(centre + half, phat, 1.0);
  e.confidence = confidence;
  return e;
}

Moments sample_moments(std::span<const double> values) {
  Moments m;
  m.n = values.size();
  if (m.n == 0) return m;
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  m.mean = sum / static_cast<double>(m.n);
  if (m.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.variance = ss / static_cast<double>(m.n - 1);
  }
  return m;
}

Estimate mean_estimate(std::span<const double> values, double confidence) {
  if (values.empty()) throw std::invalid_argument("mean of empty sample");
  const auto m = sample_moments(values);
  const double z = z_for_confidence(confidence);
  Estimate e;
  e.n = m.n;
  e.mean = m.mean;
  e.std_err = std::sqrt(m.variance / static_cast<double>(m.n));
  e.ci_low = m.mean - z * e.std_err;
  e.ci_high = m.mean + z * e.std_err;
  e.confidence = confidence;
  return e;
}

Histogram histogram(std::span<const std::int64_t> values) {
  Histogram h;
  for (auto v : values) ++h[v];
  return h;
}

double total_variation(const Histogram& a, std::size_t n_a, const Histogram& b,
                       std::size_t n_b) {
  if (n_a == 0 || n_b == 0) throw std::invalid_argument("empty law");
  std::set<std::int64_t> support;
  for (const auto& [k, c] : a) support.insert(k);
  for (const auto& [k, c] : b) support.insert(k);
  double sum = 0.0;
  for (auto k : support) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const double fa = ia == a.end() ? 0.0 : static_cast<double>(ia->second) / n_a;
    const double fb = ib == b.end() ? 0.0 : static_cast<double>(ib->second) / n_b;
    sum += std::abs(fa - fb);
  }
  return sum / 2.0;
}

double total_variation(std::span<const std::int64_t> a,
                       std::span<const std::int64_t> b) {
  return total_variation(histogram(a), a.size(), histogram(b), b.size());
}

namespace {

// Fraction of samples >= level for every level, from a sorted copy.
std::vector<double> tails_at(std::vector<std::int64_t> sorted,
                             const std::vector<std::int64_t>& levels) {
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(levels.size());
  const double n = static_cast<double>(sorted.size());
  for (auto k : levels) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
    out.push_back(static_cast<double>(sorted.end() - it) / n);
  }
  return out;
}

}  // namespace

TwoSampleDominance one_sided_dominance(std::span<const std::int64_t> lower,
                                       std::span<const std::int64_t> upper,
                                       double k_sigma) {
  if (lower.empty() || upper.empty()) {
    throw std::invalid_argument("dominance test needs two nonempty samples");
  }
  std::set<std::int64_t> support(lower.begin(), lower.end());
  support.insert(upper.begin(), upper.end());
  TwoSampleDominance out;
  out.levels.assign(support.begin(), support.end());
  out.tail_lower = tails_at({lower.begin(), lower.end()}, out.levels);
  out.tail_upper = tails_at({upper.begin(), upper.end()}, out.levels);
  const double nl = static_cast<double>(lower.size());
  const double nu = static_cast<double>(upper.size());
  out.worst_z = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.levels.size(); ++i) {
    const double a = out.tail_lower[i];
    const double b = out.tail_upper[i];
    const double sigma = std::sqrt(a * (1.0 - a) / nl + b * (1.0 - b) / nu);
    out.sigma.push_back(sigma);
    const double gap = a - b;
    if (sigma > 0.0) {
      out.worst_z = std::max(out.worst_z, gap / sigma);
    } else if (gap > 0.0) {
      out.worst_z = std::numeric_limits<double>::infinity();
    }
    if (gap > k_sigma * sigma) out.dominated = false;
  }
  return out;
}

}  // namespace frogsim
