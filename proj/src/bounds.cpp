#include "cartan/bounds.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace cartan {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_p(double p) {
  if (!(p >= 3.0)) throw std::domain_error("bound evaluation requires p >= 3");
}

// Least integer P with fails(x) for all real x >= P, given one point where
// the inequality still holds and one where it fails.
std::int64_t crossover(const std::function<bool(double)>& holds, double lo, double hi) {
  if (!holds(lo) || holds(hi)) throw std::runtime_error("crossover: bracket failure");
  // dominance beyond the bracket: once it fails it keeps failing
  for (double x = hi; x < 1e18; x *= 4.0) {
    if (holds(x)) throw std::runtime_error("crossover: inequality recovered past the bracket");
  }
  while (hi - lo >= 0.25) {
    double mid = lo + (hi - lo) / 2.0;
    (holds(mid) ? lo : hi) = mid;
  }
  auto k = static_cast<std::int64_t>(std::floor(lo));
  while (holds(static_cast<double>(k))) ++k;
  return k;
}

} // namespace

double runge_rhs(double x) {
  double s = std::sqrt(x), l = std::log(x);
  return 2.0 * kPi * s + 6.0 * l + 21.0 * l * l / s;
}

double faltings_rhs(double x) { return 2.0 * x * std::log(x) + 4.0 * x; }

double split_cartan_rhs(double x) { return 24.0 * x * std::log(3.0 * x); }

double runge_height_bound(double p) {
  require_p(p);
  return runge_rhs(p);
}

double faltings_height_bound(double p) {
  require_p(p);
  return faltings_rhs(p);
}

double split_cartan_height_bound(double p) {
  require_p(p);
  return split_cartan_rhs(p);
}

double faltings_transfer(double h_f, long delta) {
  if (delta < 1) throw std::domain_error("faltings_transfer: delta must be >= 1");
  return h_f + 0.5 * std::log(static_cast<double>(delta));
}

double faltings_from_j(double h_j) {
  if (h_j < 0) throw std::domain_error("faltings_from_j: height must be >= 0");
  return h_j / 12.0 + 3.0;
}

double gr_isogeny_bound(long d, double h_f) {
  if (d < 1) throw std::domain_error("gr_isogeny_bound: degree must be >= 1");
  double dd = static_cast<double>(d);
  double core = std::max(h_f, 985.0) + 4.0 * std::log(dd);
  return 1e7 * dd * dd * core * core;
}

double inequality_r2_rhs(double p) {
  double s = std::sqrt(p), l = std::log(p);
  return 7e3 * ((2.0 * kPi / 12.0) * s + l + 3.0 + (21.0 / 12.0) * l * l / s);
}

bool inequality_r2_holds(double p) { return p <= inequality_r2_rhs(p); }

double inequality_r3_rhs(double p) { return 7e3 * (2.0 * std::log(p) + 4.0); }

bool inequality_r3_holds(double p) { return std::sqrt(p) <= inequality_r3_rhs(p); }

std::int64_t crossover_r2() { return crossover(inequality_r2_holds, 1.0e7, 2.0e7); }

std::int64_t crossover_r3() { return crossover(inequality_r3_holds, 1.0e11, 2.0e11); }

std::vector<BoundEvaluation> evaluate_bounds(double p) {
  require_p(p);
  std::vector<BoundEvaluation> out;
  out.push_back({p, "runge_height_bound", runge_rhs(p), "2*pi*sqrt(p) + 6*ln(p) + 21*ln(p)^2/sqrt(p)"});
  out.push_back({p, "faltings_height_bound", faltings_rhs(p), "2*p*ln(p) + 4*p"});
  out.push_back({p, "split_cartan_height_bound", split_cartan_rhs(p), "24*p*ln(3p)"});
  double hf = faltings_transfer(faltings_from_j(runge_rhs(p)), static_cast<long>(p));
  out.push_back({p, "faltings_via_runge", hf, "runge/12 + 3 + ln(p)/2"});
  out.push_back({p, "gr_isogeny_bound_d2", gr_isogeny_bound(2, hf), "1e7*4*(max(h_F,985) + 4*ln 2)^2"});
  return out;
}

} // namespace cartan
