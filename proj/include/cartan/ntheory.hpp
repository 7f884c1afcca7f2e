// Arbitrary-precision number-theory primitives: Kronecker symbol,
// deterministic primality, budgeted factorization with explicit
// completeness reporting.

#ifndef CARTAN_NTHEORY_HPP
#define CARTAN_NTHEORY_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

namespace cartan {

// Kronecker symbol (a|n), the full extension of the Jacobi symbol:
// (a|2) = 0, 1, -1 for a = 0, +-1, +-3 mod 8, and (a|-1) = 1 for a >= 0,
// -1 for a < 0. Throws std::invalid_argument for n = 0.
int kronecker(std::int64_t a, std::int64_t n);
int kronecker(const mpz_class& a, const mpz_class& n);

// Deterministic Miller-Rabin over the witness schedule 2,3,...,41, exact for
// every n below 3.317e24. Larger inputs must additionally pass a strong
// Lucas-Selfridge test, so a composite is never reported prime.
bool is_prime(std::uint64_t n);
bool is_prime(const mpz_class& n);

// Single strong base-2 probable-prime test. Never rejects a prime.
bool is_pseudoprime(std::uint64_t n);
bool is_pseudoprime(const mpz_class& n);

struct PrimePower {
  mpz_class prime;
  unsigned exponent;
};

// Factorization of `value`. When `complete` is false, `residue` holds the
// composite cofactor that survived the effort budget; the listed factors are
// still genuine primes in strictly increasing order.
struct PrimeFactorization {
  mpz_class value;
  std::vector<PrimePower> factors;
  bool complete = true;
  mpz_class residue = 1;
};

struct FactorBudget {
  std::uint64_t trial_bound = 1'000'000;   // trial division by primes <= this
  std::uint64_t rho_iterations = 1u << 26; // total Brent-rho iteration budget
};

PrimeFactorization factorize(const mpz_class& n, const FactorBudget& budget = {});

// Primes in [lo, hi] dividing n, sorted. `complete` certifies that no prime
// in the range was missed; it can hold even when the full factorization gave
// up, as long as every factor of the residue provably exceeds hi.
struct RangeFactors {
  std::vector<std::uint64_t> primes;
  bool complete = true;
  mpz_class residue = 1; // unfactored composite cofactor, 1 if none
};

RangeFactors factor_in_range(const mpz_class& n, std::uint64_t lo, std::uint64_t hi,
                             const FactorBudget& budget = {});

// Ascending primes covering at least [2, limit]; the snapshot can extend
// further, so stop at your own bound. The returned pointer stays valid while
// held even if another thread grows the cache.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint32_t limit);

mpz_class gcd(const mpz_class& a, const mpz_class& b);

} // namespace cartan

#endif
