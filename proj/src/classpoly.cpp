#include "cartan/classpoly.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cartan {

namespace {

// sigma_3(n) for n = 1..limit
std::vector<std::uint64_t> sigma3_table(long limit) {
  std::vector<std::uint64_t> s(limit + 1, 0);
  for (long d = 1; d <= limit; ++d) {
    std::uint64_t d3 = std::uint64_t(d) * d * d;
    for (long n = d; n <= limit; n += d) s[n] += d3;
  }
  return s;
}

// Number of series terms so that |q|^terms < 2^-(bits). log2|q| = -2*pi*im_tau/ln2.
long terms_for(double im_tau, long bits) {
  double log2_absq = -2.0 * 3.141592653589793 * im_tau / 0.6931471805599453;
  long t = static_cast<long>(std::ceil(bits / -log2_absq)) + 8;
  return std::max<long>(t, 8);
}

BigComplex one_at(mpfr_prec_t prec) {
  BigComplex r(prec);
  mpfr_set_ui(r.re.raw(), 1, MPFR_RNDN);
  return r;
}

// E4(q)^3 / Delta(q) with Delta = q * prod (1-q^n)^24.
BigComplex j_from_q(const BigComplex& q, long terms, mpfr_prec_t prec) {
  static thread_local std::vector<std::uint64_t> sigma3;
  if (static_cast<long>(sigma3.size()) <= terms)
    sigma3 = sigma3_table(std::max<long>(terms + 16, 2 * sigma3.size()));

  BigComplex e4 = one_at(prec);
  BigComplex eta_prod = one_at(prec); // prod (1 - q^n), without the q^{1/24} front
  BigComplex qn = q;
  for (long n = 1; n <= terms; ++n) {
    BigComplex term = qn;
    term *= sigma3[n];
    term *= 240ul;
    e4 += term;
    eta_prod -= eta_prod * qn;
    qn *= q;
  }
  BigComplex delta = eta_prod.pow(24);
  delta *= q;
  return e4.pow(3) / delta;
}

// q(tau) for tau = (-b + i*sqrt(|D|)) / (2a): modulus exp(-pi*sqrt(|D|)/a),
// argument -pi*b/a.
BigComplex q_for_form(long D, long a, long b, mpfr_prec_t prec) {
  BigFloat pi = BigFloat::pi(prec);
  BigFloat root = BigFloat::from(mpz_class(-D), prec).sqrt();
  BigFloat modulus = (-(pi * root) / BigFloat::from(a, prec)).exp();
  BigFloat angle = pi * BigFloat::from(-b, prec) / BigFloat::from(a, prec);
  BigFloat s(prec), c(prec);
  angle.sin_cos(s, c);
  return {modulus * c, modulus * s};
}

bool round_coefficients(const std::vector<BigComplex>& coeffs, std::vector<mpz_class>& out,
                        double tol) {
  out.clear();
  out.reserve(coeffs.size());
  for (const auto& z : coeffs) {
    if (std::fabs(z.im.to_double()) >= tol) return false;
    if (z.re.distance_to_integer() >= tol) return false;
    out.push_back(z.re.round_to_integer());
  }
  return true;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, long D) {
  return dir / ("hd_" + std::to_string(-D) + ".txt");
}

std::optional<ClassPolynomial> load_cached(const std::filesystem::path& dir, long D) {
  std::ifstream in(cache_file(dir, D));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  std::istringstream is(line);
  std::string head;
  is >> head;
  if (head != std::to_string(D) + ":") return std::nullopt;
  std::vector<mpz_class> coeffs;
  std::string tok;
  while (is >> tok) coeffs.emplace_back(tok);
  if (coeffs.empty() || coeffs.back() != 1) return std::nullopt;
  ClassPolynomial cp;
  cp.discriminant = D;
  cp.poly = IntPoly(std::move(coeffs));
  cp.precision_used = 0; // loaded, not evaluated
  return cp;
}

void store_cached(const std::filesystem::path& dir, const ClassPolynomial& cp) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto target = cache_file(dir, cp.discriminant);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << class_polynomial_record(cp) << "\n";
  }
  std::filesystem::rename(tmp, target, ec);
}

} // namespace

BigComplex j_invariant(const BigComplex& tau, long precision_bits) {
  if (tau.im.sign() <= 0) throw std::domain_error("j_invariant: Im tau must be positive");
  if (precision_bits < 64) throw std::domain_error("j_invariant: precision must be >= 64");
  mpfr_prec_t prec = precision_bits + 64;
  BigFloat two_pi = BigFloat::pi(prec);
  two_pi *= 2ul;
  BigFloat modulus = (-(two_pi * tau.im)).exp();
  BigFloat angle = two_pi * tau.re;
  BigFloat s(prec), c(prec);
  angle.sin_cos(s, c);
  BigComplex q{modulus * c, modulus * s};
  long terms = terms_for(tau.im.to_double(), precision_bits + 64);
  return j_from_q(q, terms, prec);
}

ClassPolynomial class_polynomial(long D, const ClassPolyOptions& opts) {
  Discriminant disc(D);
  auto forms = reduced_forms(disc);
  const long h = static_cast<long>(forms.size());

  if (opts.cache_dir) {
    if (auto hit = load_cached(*opts.cache_dir, D)) {
      if (hit->poly.degree() == h) return *hit; // stale or foreign files recompute
    }
  }

  double sum_inv_a = 0.0;
  for (const auto& f : forms) sum_inv_a += 1.0 / static_cast<double>(f.a);
  double root_d = std::sqrt(static_cast<double>(-D));
  long prec = static_cast<long>(std::ceil(3.141592653589793 * root_d / 0.6931471805599453 * sum_inv_a));
  prec += 32 * (h + 1);
  prec = std::max(prec, opts.min_precision_bits);

  const double tol = 1e-3;
  for (; prec <= opts.max_precision_bits; prec *= 2) {
    mpfr_prec_t work = prec + 64;

    // Forms with b < 0 pair with (a, -b, c); their j values are conjugate,
    // so evaluate only b >= 0 and mirror the rest.
    std::vector<BigComplex> roots(forms.size(), BigComplex(work));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i].b < 0) continue;
      double im_tau = root_d / (2.0 * forms[i].a);
      BigComplex q = q_for_form(D, forms[i].a, forms[i].b, work);
      roots[i] = j_from_q(q, terms_for(im_tau, prec + 64), work);
    }
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i].b >= 0) continue;
      for (std::size_t k = 0; k < forms.size(); ++k) {
        if (forms[k].a == forms[i].a && forms[k].b == -forms[i].b) {
          roots[i] = roots[k].conj();
          break;
        }
      }
    }

    // expand prod (X - j_i); coeffs[k] multiplies X^k
    std::vector<BigComplex> coeffs(1, one_at(work));
    for (const auto& r : roots) {
      std::vector<BigComplex> next(coeffs.size() + 1, BigComplex(work));
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k]; // X * coeffs
        next[k] -= r * coeffs[k]; // -j_i * coeffs
      }
      coeffs = std::move(next);
    }

    std::vector<mpz_class> ints;
    if (round_coefficients(coeffs, ints, tol)) {
      ClassPolynomial cp;
      cp.discriminant = D;
      cp.poly = IntPoly(std::move(ints));
      cp.precision_used = prec;
      if (cp.poly.degree() != h) continue; // rounding collapsed the lead; escalate
      if (opts.cache_dir) store_cached(*opts.cache_dir, cp);
      return cp;
    }
  }
  throw std::runtime_error("class_polynomial: precision escalation exceeded the cap for D = " +
                           std::to_string(D));
}

std::string class_polynomial_record(const ClassPolynomial& cp) {
  std::ostringstream os;
  os << cp.discriminant << ":";
  for (const auto& c : cp.poly.coefficients()) os << " " << c.get_str();
  return os.str();
}

mpz_class r_D(long D, int c_lo, int c_hi, const ClassPolyOptions& opts) {
  if (c_lo < 1 || c_lo > c_hi) throw std::invalid_argument("r_D: bad conductor range");
  Discriminant disc(D);
  if (class_number(disc) == 1) return 1;

  IntPoly hd = derivative(class_polynomial(D, opts).poly);
  mpz_class g = 0;
  for (int c = c_lo; c <= c_hi; ++c) {
    IntPoly hcd = derivative(class_polynomial(D * c * c, opts).poly);
    mpz_class res = resultant(hd, hcd);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), res.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

} // namespace cartan
