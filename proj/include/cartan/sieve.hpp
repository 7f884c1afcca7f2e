// The two-part discriminant/prime sieve: Part I classifies primes dividing
// the resultant gcds r_D while absorbing discriminants into the list L;
// Part II scans a congruence wheel for primes splitting in every field of
// the discriminant list. Checkpointed, multi-worker, deterministic output.

#ifndef CARTAN_SIEVE_HPP
#define CARTAN_SIEVE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cartan/ntheory.hpp"

namespace cartan {

// Thrown when a checkpoint file exists but was written under a different
// configuration hash.
struct CheckpointMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CongruenceWheel {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> residues; // strictly increasing, in [0, modulus)
};

// Residues mod prod(moduli) that reduce to a nonzero square modulo every
// modulus; moduli must be pairwise coprime and >= 3.
CongruenceWheel squares_congruences(const std::vector<std::uint64_t>& moduli);

// Moduli whose nonzero-square condition is equivalent to splitting in every
// field of dprime: {4} plus the odd primes dividing some d. Requires -3 and
// -4 in dprime (they pin p = 1 mod 4 and mod 3, which drives the reduction).
std::vector<std::uint64_t> wheel_moduli_for(const std::vector<long>& dprime);

// Primes p in [n, m) congruent to a wheel residue with kronecker(d, p) = 1
// for every d in check_list; sorted, deduplicated.
std::vector<std::uint64_t> very_bad_primes(const CongruenceWheel& wheel,
                                           const std::vector<long>& check_list,
                                           std::uint64_t n, std::uint64_t m,
                                           unsigned workers = 1);

struct IncompleteFactorization {
  long discriminant = 0;
  mpz_class residue;
};

struct PartOneOutcome {
  std::vector<long> L;
  std::vector<std::uint64_t> good;
  std::vector<std::uint64_t> bad;
  std::vector<IncompleteFactorization> incomplete;
};

struct RunParams {
  std::vector<long> discriminants; // processed in this order
  std::vector<long> dprime;        // must be a subset of discriminants
  std::uint64_t nmax = 100'000'000'000'000ull;
  int c_lo = 2;
  int c_hi = 7;
};

struct SieveOptions {
  unsigned workers = 1;
  FactorBudget budget;
  std::optional<std::filesystem::path> classpoly_cache;
  std::optional<std::filesystem::path> checkpoint;
  std::function<bool()> should_cancel;  // polled between cells
  std::uint64_t interval_width = 100'000'000'000ull; // Part II sub-interval per cell
  std::size_t residue_chunk = 65536;                 // Part II residues per cell
};

struct SieveStats {
  double part1_seconds = 0;
  double part2_seconds = 0;
  double total_seconds = 0;
  std::uint64_t residue_count = 0;
  std::uint64_t candidates_tested = 0;
  unsigned workers = 1;
};

struct SieveReport {
  RunParams params;
  std::string config_hash;
  bool ran_part1 = false;
  bool ran_part2 = false;
  bool completed = false; // false when cancelled mid-run
  std::vector<long> L;
  std::vector<std::uint64_t> good;
  std::vector<std::uint64_t> bad;
  std::vector<std::uint64_t> verybad;
  std::vector<IncompleteFactorization> incomplete;
  SieveStats stats;
};

// The Part I loop alone (always seeded with the nine class-number-one
// discriminants). Primes considered lie in [11, N], excluding 13.
PartOneOutcome bad_discrim_and_primes(const std::vector<long>& D_list, std::uint64_t N,
                                      const SieveOptions& opts = {});

// Composed runs. `full_run` certifies: every prime p in [11, nmax], p != 13,
// with p not in bad and not in verybad has kronecker(d, p) in {0, -1} for
// some d in L, or divides no r_D beyond the classified set.
SieveReport full_run(const RunParams& params, const SieveOptions& opts = {});
SieveReport run_part1(const RunParams& params, const SieveOptions& opts = {});
SieveReport run_part2(const RunParams& params, const SieveOptions& opts = {});

// Canonical hash guarding checkpoint reuse: covers every result-determining
// parameter (run params, budget, cell geometry), not worker count.
std::string sieve_config_hash(const RunParams& params, const SieveOptions& opts);

// Default inputs: class-number tables h <= 4 plus -87, and the 13-element
// congruence sublist.
std::vector<long> default_discriminant_list();
std::vector<long> default_dprime();

} // namespace cartan

#endif
