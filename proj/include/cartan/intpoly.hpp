// Dense univariate polynomials over arbitrary-precision integers:
// derivative, content, evaluation, and the subresultant-PRS resultant.

#ifndef CARTAN_INTPOLY_HPP
#define CARTAN_INTPOLY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cartan {

class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long> coeffs); // coeffs[i] multiplies X^i
  explicit IntPoly(std::vector<mpz_class> coeffs);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<mpz_class>& coefficients() const { return c_; }
  const mpz_class& leading() const;

  mpz_class operator()(const mpz_class& x) const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
  std::string to_string() const; // human form, e.g. "X^2 + 191025*X - 121287375"

 private:
  void trim();
  std::vector<mpz_class> c_;
};

IntPoly derivative(const IntPoly& p);
IntPoly multiply(const IntPoly& p, const IntPoly& q);
mpz_class content(const IntPoly& p);

// Res(P, Q) = lc(P)^deg(Q) * prod Q(alpha) over roots alpha of P.
// Conventions: Res(const k, Q) = k^deg(Q); zero if either input is zero.
// Throws if both inputs are zero.
mpz_class resultant(const IntPoly& p, const IntPoly& q);

} // namespace cartan

#endif
