#include "cartan/ntheory.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace cartan {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Strong probable-prime test to base a; n odd, n > 2, n-1 = d * 2^s.
bool strong_test_u64(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// First 13 primes: deterministic below 3.317e24 (Sorenson-Webster), which
// covers all 64-bit inputs with a wide margin.
constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const mpz_class& mr_deterministic_bound() {
  static const mpz_class bound("3317044064679887385961981");
  return bound;
}

bool strong_test_mpz(const mpz_class& n, unsigned long a, const mpz_class& d, unsigned long s) {
  mpz_class base = a % n;
  if (base == 0) return true;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

// Strong Lucas test with Selfridge's parameter choice (method A).
bool strong_lucas(const mpz_class& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d = 5;
  while (true) {
    int k = kronecker(mpz_class(d), n);
    if (k == -1) break;
    if (k == 0 && mpz_cmpabs_ui(n.get_mpz_t(), std::labs(d)) != 0) return false;
    d = d > 0 ? -(d + 2) : -(d - 2);
    if (std::labs(d) > 1000000) return false; // unreachable for non-squares
  }
  // P = 1, Q = (1 - d)/4
  mpz_class q = (1 - mpz_class(d)) / 4;
  mpz_class dd = d;

  mpz_class np1 = n + 1;
  unsigned long s = mpz_scan1(np1.get_mpz_t(), 0);
  mpz_class m = np1 >> s;

  // Compute U_m, V_m mod n by the binary chain, tracking Q^k.
  mpz_class u = 1, v = 1, qk = q % n;
  long bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  mpz_class t, inv2 = (n + 1) / 2; // n odd: (n+1)/2 is 1/2 mod n
  for (long i = bits - 2; i >= 0; --i) {
    // double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
    u = (u * v) % n;
    v = (v * v - 2 * qk) % n;
    qk = (qk * qk) % n;
    if (mpz_tstbit(m.get_mpz_t(), i)) {
      // add one: U_{k+1} = (P U_k + V_k)/2, V_{k+1} = (D U_k + P V_k)/2
      t = (u + v) % n;
      v = (dd * u + v) % n;
      u = (t * inv2) % n;
      v = (v * inv2) % n;
      qk = (qk * q) % n;
    }
  }
  u %= n; if (u < 0) u += n;
  v %= n; if (v < 0) v += n;
  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = (v * v - 2 * qk) % n;
    if (v < 0) v += n;
    if (v == 0) return true;
    qk = (qk * qk) % n;
  }
  return false;
}

std::mutex g_sieve_mutex;
std::shared_ptr<const std::vector<std::uint32_t>> g_primes;
std::uint32_t g_sieved_to = 0;

// Brent's cycle variant of Pollard rho with batched gcds. Returns a
// nontrivial factor or 0. `iters` is decremented as budget is consumed.
mpz_class brent_rho(const mpz_class& n, gmp_randstate_t rng, std::uint64_t& iters) {
  const unsigned long batch = 128;
  mpz_class y, c, x, ys, q = 1, g = 1, diff;
  mpz_urandomm(y.get_mpz_t(), rng, n.get_mpz_t());
  mpz_urandomm(c.get_mpz_t(), rng, n.get_mpz_t());
  if (c == 0) c = 1;
  unsigned long r = 1;
  auto step = [&](mpz_class& v) { v = (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    if (iters < r) return 0;
    iters -= r;
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(batch, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        step(y);
        diff = x - y;
        q = (q * diff) % n;
      }
      if (iters < lim) return 0;
      iters -= lim;
      g = gcd(q, n);
      k += batch;
    }
    r *= 2;
  }
  if (g == n) {
    // backtrack one step at a time
    do {
      step(ys);
      diff = x - ys;
      g = gcd(diff, n);
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

void insert_factor(PrimeFactorization& out, const mpz_class& p, unsigned e) {
  for (auto& pp : out.factors) {
    if (pp.prime == p) {
      pp.exponent += e;
      return;
    }
  }
  out.factors.push_back({p, e});
}

} // namespace

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
  int s = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) s = -s;
  }
  if ((n & 1) == 0) {
    if ((a & 1) == 0) return 0;
    int v = std::countr_zero(static_cast<u64>(n));
    n >>= v;
    if (v & 1) {
      int am8 = static_cast<int>(((a % 8) + 8) % 8);
      if (am8 == 3 || am8 == 5) s = -s;
    }
  }
  // Jacobi (a|n) with n odd positive.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    int v = std::countr_zero(static_cast<u64>(a));
    a >>= v;
    if (v & 1) {
      int nm8 = static_cast<int>(n % 8);
      if (nm8 == 3 || nm8 == 5) s = -s;
    }
    if ((a % 4 == 3) && (n % 4 == 3)) s = -s;
    std::int64_t t = a;
    a = n % t;
    n = t;
  }
  return n == 1 ? s : 0;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
  if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
  if (a.fits_slong_p() && n.fits_slong_p())
    return kronecker(static_cast<std::int64_t>(a.get_si()), static_cast<std::int64_t>(n.get_si()));
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  int s = std::countr_zero(n - 1);
  u64 d = (n - 1) >> s;
  for (u64 a : kWitnesses) {
    if (!strong_test_u64(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const mpz_class& n) {
  if (sgn(n) < 0) throw std::invalid_argument("is_prime: n must be nonnegative");
  if (n.fits_ulong_p()) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  for (u64 p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class nm1 = n - 1;
  unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
  mpz_class d = nm1 >> s;
  for (u64 a : kWitnesses) {
    if (!strong_test_mpz(n, static_cast<unsigned long>(a), d, s)) return false;
  }
  if (n < mr_deterministic_bound()) return true;
  return strong_lucas(n);
}

bool is_pseudoprime(std::uint64_t n) {
  if (n < 2) return false;
  if (n == 2) return true;
  if ((n & 1) == 0) return false;
  int s = std::countr_zero(n - 1);
  u64 d = (n - 1) >> s;
  return strong_test_u64(n, 2, d, s);
}

bool is_pseudoprime(const mpz_class& n) {
  if (sgn(n) < 0) throw std::invalid_argument("is_pseudoprime: n must be nonnegative");
  if (n.fits_ulong_p()) return is_pseudoprime(static_cast<std::uint64_t>(n.get_ui()));
  if (mpz_even_p(n.get_mpz_t())) return false;
  mpz_class nm1 = n - 1;
  unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
  mpz_class d = nm1 >> s;
  return strong_test_mpz(n, 2, d, s);
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint32_t limit) {
  std::lock_guard<std::mutex> lock(g_sieve_mutex);
  if (!g_primes || limit > g_sieved_to) {
    std::uint32_t target = std::max<std::uint32_t>(limit, 1u << 20);
    std::vector<bool> composite(static_cast<std::size_t>(target) + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= target; ++i) {
      if (!composite[i]) {
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= target; j += i) composite[j] = true;
      }
    }
    g_primes = std::make_shared<const std::vector<std::uint32_t>>(std::move(primes));
    g_sieved_to = target;
  }
  return g_primes;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

PrimeFactorization factorize(const mpz_class& n, const FactorBudget& budget) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  PrimeFactorization out;
  out.value = n;
  if (n == 1) return out;

  mpz_class work = n;
  std::uint32_t tb = static_cast<std::uint32_t>(std::min<std::uint64_t>(budget.trial_bound, 0xffffffffu));
  auto primes = primes_up_to(tb);
  for (std::uint32_t p : *primes) {
    if (p > budget.trial_bound) break;
    if (mpz_divisible_ui_p(work.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(work.get_mpz_t(), work.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(work.get_mpz_t(), p));
      insert_factor(out, mpz_class(p), e);
    }
    if (work == 1) break;
    // once work < p^2 the remaining cofactor is prime; the rho stage takes it
    if (mpz_cmp_ui(work.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
  }

  if (work > 1) {
    // After trial division every factor of `work` exceeds the trial bound.
    gmp_randstate_t rng;
    gmp_randinit_mt(rng);
    // deterministic seed derived from the input, for reproducible runs
    gmp_randseed(rng, mpz_class(n % mpz_class("18446744073709551557")).get_mpz_t());

    std::uint64_t iters = budget.rho_iterations;
    std::vector<mpz_class> pending{work};
    while (!pending.empty()) {
      mpz_class c = pending.back();
      pending.pop_back();
      if (c == 1) continue;
      if (is_prime(c)) {
        insert_factor(out, c, 1);
        continue;
      }
      if (mpz_perfect_power_p(c.get_mpz_t())) {
        for (unsigned long k = 2;; ++k) {
          mpz_class root;
          if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), k) != 0) {
            for (unsigned long i = 0; i < k; ++i) pending.push_back(root);
            break;
          }
          if (mpz_sizeinbase(c.get_mpz_t(), 2) < k) break; // cannot happen
        }
        continue;
      }
      mpz_class f = 0;
      while (iters > 0 && (f == 0 || f == c)) f = brent_rho(c, rng, iters);
      if (f == 0 || f == c) {
        out.complete = false;
        out.residue *= c;
        continue;
      }
      pending.push_back(f);
      pending.push_back(c / f);
    }
    gmp_randclear(rng);
  }

  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
  return out;
}

RangeFactors factor_in_range(const mpz_class& n, std::uint64_t lo, std::uint64_t hi,
                             const FactorBudget& budget) {
  if (n < 1) throw std::invalid_argument("factor_in_range: n must be >= 1");
  if (lo < 2 || lo > hi) throw std::invalid_argument("factor_in_range: need 2 <= lo <= hi");

  RangeFactors out;
  if (n == 1) return out;

  PrimeFactorization fac = factorize(n, budget);
  for (const auto& pp : fac.factors) {
    if (pp.prime >= lo && pp.prime <= hi) out.primes.push_back(pp.prime.get_ui());
  }

  if (!fac.complete) {
    // The residue's factors all exceed budget.trial_bound. If the range ends
    // below that, the in-range answer is already complete. Otherwise extend
    // trial division over the residue alone, up to hi when affordable.
    constexpr std::uint64_t kExtendCap = 100'000'000;
    if (hi <= budget.trial_bound) {
      out.residue = fac.residue;
    } else if (hi <= kExtendCap) {
      mpz_class res = fac.residue;
      auto primes = primes_up_to(static_cast<std::uint32_t>(hi));
      for (std::uint32_t p : *primes) {
        if (p <= budget.trial_bound) continue;
        if (static_cast<std::uint64_t>(p) > hi) break;
        if (mpz_divisible_ui_p(res.get_mpz_t(), p)) {
          do { mpz_divexact_ui(res.get_mpz_t(), res.get_mpz_t(), p); }
          while (mpz_divisible_ui_p(res.get_mpz_t(), p));
          if (p >= lo) out.primes.push_back(p);
        }
      }
      // every factor of `res` now exceeds hi
      if (res > 1 && !is_prime(res)) out.residue = res;
    } else {
      out.complete = false;
      out.residue = fac.residue;
    }
  }

  std::sort(out.primes.begin(), out.primes.end());
  out.primes.erase(std::unique(out.primes.begin(), out.primes.end()), out.primes.end());
  return out;
}

} // namespace cartan
