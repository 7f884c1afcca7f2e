// Reduced positive-definite integral binary quadratic forms, class numbers,
// and the tables of imaginary quadratic discriminants with small class number.

#ifndef CARTAN_QUADFORMS_HPP
#define CARTAN_QUADFORMS_HPP

#include <map>
#include <vector>

namespace cartan {

// A (negative) imaginary quadratic discriminant, validated on construction:
// value < 0 and value = 0 or 1 mod 4.
class Discriminant {
 public:
  explicit Discriminant(long value);
  long value() const { return value_; }
  bool is_fundamental() const { return fundamental_; }

 private:
  long value_;
  bool fundamental_;
};

// Reduced primitive form (a, b, c): b^2 - 4ac = D, |b| <= a <= c,
// b >= 0 when |b| = a or a = c, gcd(a, b, c) = 1.
struct QuadForm {
  long a, b, c;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

// One reduced form per class, ordered lexicographically by (a, b).
std::vector<QuadForm> reduced_forms(const Discriminant& D);
std::vector<QuadForm> reduced_forms(long D);

long class_number(const Discriminant& D);
long class_number(long D);

// For each h <= h_max, the fundamental imaginary discriminants of class
// number h with |D| <= ceiling, ascending in |D|. The default ceiling is far
// above the largest fundamental discriminant with h <= 6 (|D| = 3763).
std::map<long, std::vector<long>> discriminant_table(int h_max, long ceiling = 20000);

} // namespace cartan

#endif
