// Minimal RAII wrapper over MPFR reals plus the complex layer needed for
// high-precision q-series work. Each value carries its own precision;
// binary operations produce results at the wider operand precision.

#ifndef CARTAN_BIGFLOAT_HPP
#define CARTAN_BIGFLOAT_HPP

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace cartan {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat pi(mpfr_prec_t prec);
  static BigFloat from(double x, mpfr_prec_t prec);
  static BigFloat from(long x, mpfr_prec_t prec);
  static BigFloat from(const mpz_class& x, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpz_class round_to_integer() const;
  // |x - nearest integer| as a double
  double distance_to_integer() const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  std::string to_string(int digits = 20) const;

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator*=(unsigned long k);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  BigFloat sqrt() const;
  BigFloat exp() const;
  BigFloat abs() const;
  void sin_cos(BigFloat& s, BigFloat& c) const;

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(double x) const { return mpfr_cmp_d(v_, x); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  void widen_to(mpfr_prec_t prec);
  mpfr_t v_;
};

struct BigComplex {
  BigFloat re, im;

  explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  static BigComplex from(double r, double i, mpfr_prec_t prec);

  BigComplex conj() const;
  BigFloat abs() const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator*=(unsigned long k);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

  BigComplex pow(unsigned long e) const;
};

} // namespace cartan

#endif
