// Hilbert and ring class polynomials H_D with exact integer coefficients,
// via high-precision evaluation of j at CM points, plus the resultant gcd
// r_D = gcd(Res(H'_D, H'_{c^2 D}); c in a conductor range).

#ifndef CARTAN_CLASSPOLY_HPP
#define CARTAN_CLASSPOLY_HPP

#include <filesystem>
#include <optional>

#include <gmpxx.h>

#include "cartan/bigfloat.hpp"
#include "cartan/intpoly.hpp"
#include "cartan/quadforms.hpp"

namespace cartan {

struct ClassPolynomial {
  long discriminant = 0;
  IntPoly poly;             // monic, degree = class_number(discriminant)
  long precision_used = 0;  // working bits of the accepted evaluation
};

// j(tau) from the q-series E4^3 / Delta, truncated so the discarded tail is
// below the target accuracy. Throws std::domain_error unless Im tau > 0;
// precision_bits >= 64.
BigComplex j_invariant(const BigComplex& tau, long precision_bits);

struct ClassPolyOptions {
  std::optional<std::filesystem::path> cache_dir; // text records "D: c0 c1 ... ch"
  long max_precision_bits = 1L << 22;
  long min_precision_bits = 0; // raise the starting precision (stability tests)
};

ClassPolynomial class_polynomial(long D, const ClassPolyOptions& opts = {});

// Serialized cache/record form, e.g. "-4: -1728 1".
std::string class_polynomial_record(const ClassPolynomial& cp);

// gcd of Res(H'_D, H'_{c^2 D}) for c in [c_lo, c_hi]; returns 1 immediately
// when class_number(D) = 1.
mpz_class r_D(long D, int c_lo = 2, int c_hi = 7, const ClassPolyOptions& opts = {});

} // namespace cartan

#endif
