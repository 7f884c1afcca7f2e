#include "cartan/intpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace cartan {

namespace {

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

void divexact_all(std::vector<mpz_class>& c, const mpz_class& d) {
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

// Pseudo-remainder: returns lc(B)^(deg A - deg B + 1) * A mod B.
std::vector<mpz_class> prem(std::vector<mpz_class> r, const std::vector<mpz_class>& b) {
  const mpz_class& lcb = b.back();
  long db = static_cast<long>(b.size()) - 1;
  long e = static_cast<long>(r.size()) - 1 - db + 1;
  while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
    mpz_class lcr = r.back();
    long shift = static_cast<long>(r.size()) - 1 - db;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= lcb;
    for (long i = 0; i <= db; ++i) r[i + shift] -= lcr * b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    --e;
  }
  if (e > 0) {
    mpz_class f = pow_z(lcb, e);
    for (auto& x : r) x *= f;
  }
  return r;
}

} // namespace

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  c_.assign(coeffs.begin(), coeffs.end());
  trim();
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::leading() const {
  if (c_.empty()) throw std::logic_error("IntPoly::leading: zero polynomial");
  return c_.back();
}

mpz_class IntPoly::operator()(const mpz_class& x) const {
  mpz_class v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const mpz_class& a = c_[i];
    if (a == 0) continue;
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    mpz_class m = abs(a);
    if (m != 1 || i == 0) os << m.get_str();
    if (i > 0) {
      if (m != 1) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly derivative(const IntPoly& p) {
  if (p.degree() < 1) return IntPoly{};
  std::vector<mpz_class> d(p.degree());
  for (int i = 1; i <= p.degree(); ++i) d[i - 1] = p[i] * i;
  return IntPoly(std::move(d));
}

IntPoly multiply(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) return IntPoly{};
  std::vector<mpz_class> r(p.degree() + q.degree() + 1, mpz_class(0));
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; j <= q.degree(); ++j) r[i + j] += p[i] * q[j];
  return IntPoly(std::move(r));
}

mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class resultant(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("resultant: both inputs zero");
  if (p.is_zero() || q.is_zero()) return 0;
  if (p.degree() == 0 && q.degree() == 0) return 1;
  if (p.degree() == 0) return pow_z(p[0], q.degree());
  if (q.degree() == 0) return pow_z(q[0], p.degree());

  std::vector<mpz_class> a = p.coefficients(), b = q.coefficients();
  int s = 1;
  if (a.size() < b.size()) {
    std::swap(a, b);
    if ((p.degree() & 1) && (q.degree() & 1)) s = -s;
  }
  mpz_class ca = content(IntPoly(a)), cb = content(IntPoly(b));
  divexact_all(a, ca);
  divexact_all(b, cb);
  mpz_class t = pow_z(ca, b.size() - 1) * pow_z(cb, a.size() - 1);

  mpz_class g = 1, h = 1;
  while (true) {
    long da = static_cast<long>(a.size()) - 1;
    long db = static_cast<long>(b.size()) - 1;
    long delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    std::vector<mpz_class> r = prem(a, b);
    if (r.empty()) return 0; // positive-degree common factor
    mpz_class denom = g * pow_z(h, delta);
    a = std::move(b);
    b = std::move(r);
    divexact_all(b, denom);
    g = a.back();
    if (delta > 0) {
      mpz_class hn = pow_z(g, delta);
      mpz_divexact(hn.get_mpz_t(), hn.get_mpz_t(), pow_z(h, delta - 1).get_mpz_t());
      h = hn;
    }
    if (b.size() == 1) {
      long dA = static_cast<long>(a.size()) - 1;
      mpz_class res = pow_z(b[0], dA);
      mpz_divexact(res.get_mpz_t(), res.get_mpz_t(), pow_z(h, dA - 1).get_mpz_t());
      return s * t * res;
    }
  }
}

} // namespace cartan
