#include "frogsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace frogsim {
namespace {

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0, 1], got " << x;
    throw std::invalid_argument(os.str());
  }
}

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

void ModelParams::validate() const {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  require_probability(q, "q");
  require_probability(p, "p");
}

void ModelParams::validate_recursive() const {
  validate();
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("recursive model needs 0 < p < 1/2");
  }
}

std::string to_string(Region region) {
  switch (region) {
    case Region::TransientBranching: return "TransientBranching";
    case Region::TransientAllAwake: return "TransientAllAwake";
    case Region::CertifiedRecurrent: return "CertifiedRecurrent";
    case Region::Unknown: return "Unknown";
  }
  return "Unknown";
}

Region region_from_string(const std::string& name) {
  for (auto r : {Region::TransientBranching, Region::TransientAllAwake,
                 Region::CertifiedRecurrent, Region::Unknown}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown region class '" + name + "'");
}

double rho(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::domain_error("rho needs 0 <= p < 1");
  }
  return p / (1.0 - p);
}

ExcursionConstants excursion_constants(double p) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::domain_error("excursion constants need 0 <= p < 1/2");
  }
  const double gap = 1.0 - 2.0 * p;
  const double r = std::exp(-3.0 * gap * gap / (2.0 * (1.0 + 4.0 * p)));
  return {r, gap * r};
}

double effective_survival(double q, double p) {
  require_probability(q, "q");
  const auto [r, s] = excursion_constants(p);
  // 1 - (1-s) q^2 written without cancellation near q = 1.
  const double denom = (1.0 - q) * (1.0 + q) + s * q * q;
  if (denom == 0.0) return 0.0;  // q = 0 only
  return s * q / denom;
}

DerivedParams derive(double q, double p) {
  const auto c = excursion_constants(p);
  return {rho(p), c.r, c.s, effective_survival(q, p)};
}

double visit_bound_from_terms(double decay, double base, int t) {
  if (t < 2) throw std::domain_error("t must be at least 2");
  if (!(decay >= 0.0 && decay <= 1.0) || !(base >= 0.0 && base <= 1.0)) {
    throw std::domain_error("bound terms must lie in [0, 1]");
  }
  CompensatedSum log_product;
  double term = base;
  for (int k = 0; k <= t - 2; ++k) {
    if (term >= 1.0) return 1.0;
    log_product.add(std::log1p(-term));
    term *= decay;
  }
  return 0.0 - std::expm1(log_product.value());  // no -0
}

double visit_bound_direct(double decay, double base, int t) {
  double product = 1.0;
  double term = base;
  for (int k = 0; k <= t - 2; ++k) {
    product *= 1.0 - term;
    term *= decay;
  }
  return 1.0 - product;
}

double conditional_visit_lower_bound(double rho_value, double frak_q, int t) {
  if (!(rho_value >= 0.0 && rho_value <= 1.0)) {
    throw std::domain_error("rho must lie in [0, 1]");
  }
  require_probability(frak_q, "frak_q");
  return visit_bound_from_terms(rho_value * frak_q,
                                frak_q * (1.0 - rho_value) / 2.0, t);
}

double recurrence_threshold(double rho_value, double frak_q) {
  const double denom = rho_value * frak_q * frak_q * frak_q;
  if (!(denom > 0.0)) {
    throw std::domain_error("threshold needs rho * frak_q^3 > 0");
  }
  return 1.0 / denom - 1.0;
}

Certificate certify_rectangle(Interval p_interval, Interval q_interval, int t) {
  if (!(p_interval.lo <= p_interval.hi) || !(q_interval.lo <= q_interval.hi)) {
    throw std::domain_error("empty interval");
  }
  if (!(p_interval.lo >= 0.0 && p_interval.hi < 0.5)) {
    throw std::domain_error("p interval must lie in [0, 1/2)");
  }
  if (!(q_interval.lo >= 0.0 && q_interval.hi <= 1.0)) {
    throw std::domain_error("q interval must lie in [0, 1]");
  }
  if (t < 2) throw std::domain_error("t must be at least 2");

  Certificate cert;
  cert.t = t;
  cert.p_interval = p_interval;
  cert.q_interval = q_interval;
  // rho is increasing in p.
  cert.rho_interval = {rho(p_interval.lo), rho(p_interval.hi)};

  double corner_min = std::numeric_limits<double>::infinity();
  double corner_max = -corner_min;
  for (double p : {p_interval.lo, p_interval.hi}) {
    for (double q : {q_interval.lo, q_interval.hi}) {
      const double fq = effective_survival(q, p);
      corner_min = std::min(corner_min, fq);
      corner_max = std::max(corner_max, fq);
    }
  }
  double grid_min = corner_min;
  double grid_max = corner_max;
  constexpr int n = kCertificateGrid;
  for (int i = 0; i < n; ++i) {
    const double p = p_interval.lo + (p_interval.hi - p_interval.lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double q = q_interval.lo + (q_interval.hi - q_interval.lo) * j / (n - 1);
      const double fq = effective_survival(q, p);
      grid_min = std::min(grid_min, fq);
      grid_max = std::max(grid_max, fq);
    }
  }
  cert.monotonicity_verified = grid_min >= corner_min;
  cert.frakq_interval = {grid_min, grid_max};

  const double rho_lo = cert.rho_interval.lo;
  const double rho_hi = cert.rho_interval.hi;
  const double fq_lo = cert.frakq_interval.lo;
  // Each term (rho fq)^k * fq * (1 - rho) / 2 is increasing in the rho of the
  // decay and decreasing in the rho of the escape factor, so the smallest
  // term uses rho_lo for the former and rho_hi for the latter.
  cert.lower_bound = visit_bound_from_terms(rho_lo * fq_lo,
                                            fq_lo * (1.0 - rho_hi) / 2.0, t);
  const double denom = rho_lo * fq_lo * fq_lo * fq_lo;
  cert.threshold = denom > 0.0 ? 1.0 / denom - 1.0
                               : std::numeric_limits<double>::infinity();
  cert.holds = cert.lower_bound >= cert.threshold;
  return cert;
}

Certificate default_certificate() {
  return certify_rectangle({0.4950, 0.4975}, {0.9999998, 1.0}, 52);
}

double branching_mean(double q, double p) {
  return q * p + 2.0 * q * (1.0 - p);
}

bool all_awake_divergent(int d, double q, double p) {
  // q rho d >= 1  <=>  p (1 + q d) >= 1
  return p * (1.0 + q * d) >= 1.0;
}

double all_awake_expected_visits(int d, double q, double p) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  require_probability(q, "q");
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::domain_error("all-awake bound needs 0 <= p < 1/2");
  }
  if (all_awake_divergent(d, q, p)) {
    return std::numeric_limits<double>::infinity();
  }
  return 1.0 / (1.0 - q * rho(p) * d);
}

RegionClass classify_region(const ModelParams& params,
                            std::span<const Certificate> certificates) {
  params.validate();
  const double q = params.q;
  const double p = params.p;
  std::ostringstream os;
  os.precision(12);
  // The branching comparison needs q < 1: with q = 1 nobody dies.
  if (q < 1.0 && (q <= 0.5 || p >= 2.0 - 1.0 / q)) {
    os << (q <= 0.5 ? "q <= 1/2" : "p >= 2 - 1/q") << " (branching mean "
       << branching_mean(q, p) << " <= 1)";
    return {Region::TransientBranching, os.str()};
  }
  if (p * (1.0 + q * params.d) < 1.0) {
    os << "p < 1/(1+qd) = " << 1.0 / (1.0 + q * params.d);
    return {Region::TransientAllAwake, os.str()};
  }
  for (const auto& cert : certificates) {
    if (cert.holds && cert.p_interval.contains(p) && cert.q_interval.contains(q)) {
      os << "inside certified rectangle [" << cert.p_interval.lo << ", "
         << cert.p_interval.hi << "] x [" << cert.q_interval.lo << ", "
         << cert.q_interval.hi << "] at t=" << cert.t;
      return {Region::CertifiedRecurrent, os.str()};
    }
  }
  return {Region::Unknown, "no criterion applies"};
}

std::vector<double> iterate_first_moment(double rho_value, double frak_q,
                                         std::span<const double> pyx,
                                         int t_max) {
  if (t_max < 0 || pyx.size() < static_cast<std::size_t>(t_max)) {
    throw std::invalid_argument("pyx must cover t = 1..t_max");
  }
  const double a = rho_value * frak_q * frak_q * frak_q;
  const double b = rho_value * frak_q * frak_q;
  std::vector<double> out;
  out.reserve(t_max);
  double prev = 0.0;
  for (int t = 1; t <= t_max; ++t) {
    prev = a * (1.0 + pyx[t - 1]) * prev + b;
    out.push_back(prev);
  }
  return out;
}

MomentRatioTrace iterate_moment_ratio(double rho_value, double frak_q,
                                      std::span<const double> pyx, int t_max,
                                      double c0, double v0) {
  if (t_max < 0 || pyx.size() < static_cast<std::size_t>(t_max)) {
    throw std::invalid_argument("pyx must cover t = 1..t_max");
  }
  MomentRatioTrace trace;
  double v = v0;
  trace.sup = v0;
  for (int t = 1; t <= t_max; ++t) {
    const double conditional = pyx[t - 1];
    const double coefficient = 1.0 / (frak_q * frak_q * (1.0 + conditional));
    const double growth = rho_value * frak_q * frak_q * frak_q * (1.0 + conditional);
    const bool ok = coefficient < 1.0 && growth > 1.0;
    v = coefficient * v + c0;
    trace.values.push_back(v);
    trace.hypothesis_ok.push_back(ok);
    trace.hypothesis_violated = trace.hypothesis_violated || !ok;
    trace.sup = std::max(trace.sup, v);
  }
  return trace;
}

}  // namespace frogsim
