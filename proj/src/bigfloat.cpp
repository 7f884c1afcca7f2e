#include "cartan/bigfloat.hpp"

#include <algorithm>

namespace cartan {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from(double x, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_d(r.v_, x, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from(long x, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_si(r.v_, x, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from(const mpz_class& x, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
  return r;
}

mpz_class BigFloat::round_to_integer() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_round(t, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

double BigFloat::distance_to_integer() const {
  mpz_class n = round_to_integer();
  mpfr_t d;
  mpfr_init2(d, mpfr_get_prec(v_));
  mpfr_sub_z(d, v_, n.get_mpz_t(), MPFR_RNDN);
  mpfr_abs(d, d, MPFR_RNDN);
  double out = mpfr_get_d(d, MPFR_RNDN);
  mpfr_clear(d);
  return out;
}

std::string BigFloat::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

void BigFloat::widen_to(mpfr_prec_t prec) {
  if (mpfr_get_prec(v_) >= prec) return;
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set(t, v_, MPFR_RNDN);
  mpfr_swap(v_, t);
  mpfr_clear(t);
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen_to(mpfr_get_prec(o.v_));
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen_to(mpfr_get_prec(o.v_));
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen_to(mpfr_get_prec(o.v_));
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen_to(mpfr_get_prec(o.v_));
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(unsigned long k) {
  mpfr_mul_ui(v_, v_, k, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(*this);
  mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::exp() const {
  BigFloat r(*this);
  mpfr_exp(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(*this);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

void BigFloat::sin_cos(BigFloat& s, BigFloat& c) const {
  mpfr_prec_t p = mpfr_get_prec(v_);
  s.widen_to(p);
  c.widen_to(p);
  mpfr_sin_cos(s.v_, c.v_, v_, MPFR_RNDN);
}

BigComplex BigComplex::from(double r, double i, mpfr_prec_t prec) {
  return {BigFloat::from(r, prec), BigFloat::from(i, prec)};
}

BigComplex BigComplex::conj() const { return {re, -im}; }

BigFloat BigComplex::abs() const {
  BigFloat r(std::max(re.precision(), im.precision()));
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
  return r;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat ac = re * o.re, bd = im * o.im, ad = re * o.im, bc = im * o.re;
  re = ac - bd;
  im = ad + bc;
  return *this;
}

BigComplex& BigComplex::operator*=(unsigned long k) {
  re *= k;
  im *= k;
  return *this;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat den = b.re * b.re + b.im * b.im;
  BigComplex num = a * b.conj();
  return {num.re / den, num.im / den};
}

BigComplex BigComplex::pow(unsigned long e) const {
  mpfr_prec_t p = std::max(re.precision(), im.precision());
  BigComplex r(p);
  mpfr_set_ui(r.re.raw(), 1, MPFR_RNDN);
  BigComplex base(*this);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

} // namespace cartan
