// Explicit height and isogeny bounds, and the two crossover thresholds where
// the isogeny lower bounds overtake the Runge/Faltings upper bounds.
//
// All logarithms are natural. Evaluation is double precision with a 1e-9
// relative-tolerance contract; the inequalities involved have slack far
// beyond rounding error.

#ifndef CARTAN_BOUNDS_HPP
#define CARTAN_BOUNDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cartan {

// One evaluated bound at a prime argument; value is finite and positive for
// p >= 3.
struct BoundEvaluation {
  double p = 0;
  std::string quantity;
  double value = 0;
  std::string formula;
};

// Every bound this module knows, evaluated at p (requires p >= 3).
std::vector<BoundEvaluation> evaluate_bounds(double p);

// Raw formula evaluators, defined for any x > 0 (plumbing/test hooks).
double runge_rhs(double x);    // 2*pi*sqrt(x) + 6*ln(x) + 21*ln(x)^2/sqrt(x)
double faltings_rhs(double x); // 2*x*ln(x) + 4*x
double split_cartan_rhs(double x);    // 24*x*ln(3*x)

// Checked bound evaluations; throw std::domain_error for p < 3.
double runge_height_bound(double p);
double faltings_height_bound(double p);
double split_cartan_height_bound(double p);

// Height bookkeeping across isogenies: h_F + ln(delta)/2 for a degree-delta
// isogeny, and h_F <= h_j/12 + 3 from the j-invariant.
double faltings_transfer(double h_f, long delta);
double faltings_from_j(double h_j);

// Smallest-degree isogeny bound: 1e7 * d^2 * (max(h_f, 985) + 4*ln(d))^2.
double gr_isogeny_bound(long d, double h_f);

// r=2: p <= 7e3 * ((2pi/12)*sqrt(p) + ln(p) + 3 + (21/12)*ln(p)^2/sqrt(p)).
double inequality_r2_rhs(double p);
bool inequality_r2_holds(double p);
// r=3: sqrt(p) <= 7e3 * (2*ln(p) + 4).
double inequality_r3_rhs(double p);
bool inequality_r3_holds(double p);

// Least integer P such that the respective inequality fails for every real
// p >= P (bisection to width < 1 after a monotone-dominance check; throws on
// bracket failure).
std::int64_t crossover_r2();
std::int64_t crossover_r3();

} // namespace cartan

#endif
