#pragma once

// Closed-form quantities for the frog model with death and drift: derived
// constants, the recursive-model lower bound, transience criteria and the
// parameter-rectangle certificate. Everything here is a pure function.

#include <span>
#include <string>
#include <vector>

namespace frogsim {

// (d, q, p): branching factor, per-step survival, drift toward the root.
struct ModelParams {
  int d = 2;
  double q = 1.0;
  double p = 0.0;

  // Throws std::invalid_argument unless d >= 2 and q, p lie in [0, 1].
  void validate() const;
  // validate() plus 0 < p < 1/2, which the recursive model needs.
  void validate_recursive() const;
};

struct DerivedParams {
  double rho = 0.0;      // p / (1 - p)
  double r = 0.0;        // excursion tail base
  double s = 0.0;        // (1 - 2p) r
  double frak_q = 0.0;   // effective per-step survival E[q^T]
};

struct ExcursionConstants {
  double r = 0.0;
  double s = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Worst-case evaluation of the sufficient recurrence condition over a
// (p, q) rectangle.
struct Certificate {
  int t = 0;
  Interval p_interval;
  Interval q_interval;
  Interval rho_interval;
  Interval frakq_interval;
  double lower_bound = 0.0;
  double threshold = 0.0;
  bool holds = false;
  // The frak_q grid scan found no interior value below the corner minimum.
  bool monotonicity_verified = false;
};

enum class Region { TransientBranching, TransientAllAwake, CertifiedRecurrent, Unknown };

struct RegionClass {
  Region tag = Region::Unknown;
  std::string detail;
};

std::string to_string(Region region);
Region region_from_string(const std::string& name);

// rho = p / (1 - p). Throws std::domain_error for p outside [0, 1).
double rho(double p);

// r = exp(-3(1-2p)^2 / (2(1+4p))), s = (1-2p) r. Requires 0 <= p < 1/2.
ExcursionConstants excursion_constants(double p);

// E[q^T] for T = 2 Geo(s) + 1, Geo counting failures before a success of
// probability s:  s q / (1 - (1 - s) q^2).
double effective_survival(double q, double p);

DerivedParams derive(double q, double p);

// 1 - prod_{k=0}^{t-2} (1 - (rho frak_q)^k frak_q (1 - rho) / 2), in log space.
double conditional_visit_lower_bound(double rho, double frak_q, int t);

// Same product with every term written as decay^k * base. The certificate
// uses it with decay and base taken at different interval endpoints.
double visit_bound_from_terms(double decay, double base, int t);

// Direct (non-log) evaluation of the same product. Reference only.
double visit_bound_direct(double decay, double base, int t);

// 1 / (rho frak_q^3) - 1. Throws std::domain_error when rho frak_q^3 <= 0.
double recurrence_threshold(double rho, double frak_q);

// Resolution of the interior grid scanned for the frak_q minimum.
inline constexpr int kCertificateGrid = 65;

Certificate certify_rectangle(Interval p_interval, Interval q_interval, int t);

// The rectangle [0.4950, 0.4975] x [0.9999998, 1] at depth 52.
Certificate default_certificate();

// Mean offspring of the dominating branching process: qp + 2q(1-p).
double branching_mean(double q, double p);

// 1 / (1 - q rho d), or +infinity when the series diverges.
double all_awake_expected_visits(int d, double q, double p);
bool all_awake_divergent(int d, double q, double p);

RegionClass classify_region(const ModelParams& params,
                            std::span<const Certificate> certificates);

// E[V_1..t_max] from E[V_t] = rho fq^3 (1 + pyx_t) E[V_{t-1}] + rho fq^2,
// E[V_0] = 0. pyx[i] is the conditional probability at t = i + 1.
std::vector<double> iterate_first_moment(double rho, double frak_q,
                                         std::span<const double> pyx,
                                         int t_max);

struct MomentRatioTrace {
  std::vector<double> values;      // v_1..v_{t_max}
  std::vector<bool> hypothesis_ok; // per t: growth > 1 and contraction < 1
  bool hypothesis_violated = false;
  double sup = 0.0;
};

// Leading-order recursion v_t = v_{t-1} / (fq^2 (1 + pyx_t)) + c0.
// Diagnostic only: c0 stands in for an unquantified O(1) remainder.
MomentRatioTrace iterate_moment_ratio(double rho, double frak_q,
                                      std::span<const double> pyx, int t_max,
                                      double c0, double v0 = 1.0);

}  // namespace frogsim
