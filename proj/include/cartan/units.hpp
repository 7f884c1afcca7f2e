// Numerical verification of the Siegel-function and modular-unit estimates:
// the q-product for g_a, the orbit products U_c, and the explicit error
// envelopes they satisfy on the fundamental domain.

#ifndef CARTAN_UNITS_HPP
#define CARTAN_UNITS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cartan {

// Rational in [0, 1) with small denominator.
struct UnitFraction {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Index a = (a1, a2) of a Siegel function, components normalized to [0, 1),
// not both zero.
struct SiegelIndex {
  UnitFraction a1, a2;
};

SiegelIndex make_siegel_index(long n1, long n2, long den);

// Point of D + Z: all estimates only use |q(tau)| <= exp(-pi*sqrt(3)),
// equivalently Im tau >= sqrt(3)/2; the constructor enforces that.
class DomainPoint {
 public:
  explicit DomainPoint(std::complex<double> tau);
  std::complex<double> tau() const { return tau_; }
  std::complex<double> q() const { return q_; }
  double log_abs_q() const;

 private:
  std::complex<double> tau_;
  std::complex<double> q_;
};

// B_2(t) = t^2 - t + 1/6.
double bernoulli2(double t);

// Truncated q-product for g_a at arbitrary tau in the upper half-plane
// (`terms` factors of each of the two sub-products).
std::complex<double> siegel_g_at(const SiegelIndex& a, std::complex<double> tau, int terms);
std::complex<double> siegel_g(const SiegelIndex& a, const DomainPoint& tau, int terms);

// log|g_a(tau)| with automatic truncation (geometric tail below 1e-15 of the
// accumulated magnitude).
double log_abs_siegel_g(const SiegelIndex& a, const DomainPoint& tau);

// The 2(p-1) indices of A*beta_c: {(k/p, 0)} joined with {(0, k/p)} when
// p | c, else with {(k/p, k*b/p)} where b*c = 1 mod p.
std::vector<SiegelIndex> orbit(long p, long c);

// log|U_c(tau)| = 12p * sum of log|g_a| over the orbit.
double log_abs_Uc(long p, long c, const DomainPoint& tau);

struct CheckResult {
  double lhs = 0;
  double bound = 0;
  bool pass = false;
};

// |sum_{k=1}^N log|1-z^k|| <= (pi^2/6) / log|z^-1|, for 0 < |z| < 1.
CheckResult check_euler_product_log_bound(std::complex<double> z, int N);

// |log(1+z)| <= -(log(1-r)/r)*|z| for |z| <= r < 1 (principal branch).
CheckResult check_basic_inequality(std::complex<double> z, double r);

// Residual of log|g_a| against its three main terms, bounded by 3|q|.
// The residual is accumulated as the n >= 1 factor sum directly; forming it
// as log|g| minus main terms in doubles would drown in cancellation once
// |q| falls below roundoff of the main terms.
CheckResult check_siegel_log_envelope(const SiegelIndex& a, const DomainPoint& tau);

// log|U_c| envelope, both branches:
//   p | c:  (p-1)^2 log|q|  +- (4pi^2 p^2/log|q^-1| + 12p log p + 77 p^2 |q|)
//   p ∤ c: -2(p-1) log|q|  +- (8pi^2 p^2/log|q^-1| + 72 p^2 |q|)
CheckResult check_unit_product_envelope(long p, long c, const DomainPoint& tau);

// Sampling batteries behind the verify-units command.
struct BatterySpec {
  int siegel_samples = 1000;
  int unit_product_samples_per_branch = 100;
  int euler_sum_samples = 10000;
  int basic_log_samples = 10000;
};

struct BatteryRow {
  std::string check;
  std::size_t index = 0;
  double lhs = 0;
  double bound = 0;
  bool pass = false;
};

struct BatteryResult {
  std::string name;
  int samples = 0;
  int failures = 0;
  double min_margin = 0; // min over samples of (bound - lhs)
};

struct UnitsVerification {
  std::vector<BatteryResult> batteries;
  std::vector<BatteryRow> rows; // populated when keep_rows
  bool all_pass = false;
};

UnitsVerification verify_unit_estimates(const BatterySpec& spec, std::uint64_t seed,
                                        bool keep_rows = false);

} // namespace cartan

#endif
