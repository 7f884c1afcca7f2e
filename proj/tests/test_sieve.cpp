#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "cartan/report.hpp"
#include "cartan/sieve.hpp"

using namespace cartan;

namespace {

namespace fs = std::filesystem;

// Naive scan: trial-division primality plus direct per-modulus square
// membership and Kronecker checks, no CRT and no wheel stepping.
std::vector<std::uint64_t> naive_scan(const std::vector<std::uint64_t>& moduli,
                                      const std::vector<long>& check_list, std::uint64_t n,
                                      std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = n; p < m; ++p) {
    bool prime = p >= 2;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    bool ok = true;
    for (std::uint64_t q : moduli) {
      bool square = false;
      for (std::uint64_t k = 1; k < q && !square; ++k)
        if (k * k % q == p % q) square = true;
      if (!square) {
        ok = false;
        break;
      }
    }
    for (long d : check_list)
      if (ok && kronecker(d, static_cast<std::int64_t>(p)) != 1) ok = false;
    if (ok) out.push_back(p);
  }
  return out;
}

std::vector<long> h1_list() { return {-3, -4, -7, -8, -11, -19, -43, -67, -163}; }

fs::path fresh_temp(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string strip_stats(std::string json) {
  auto pos = json.find("\"stats\"");
  REQUIRE(pos != std::string::npos);
  return json.substr(0, pos);
}

} // namespace

TEST_CASE("squares_congruences: pinned small wheels") {
  auto w34 = squares_congruences({3, 4});
  CHECK(w34.modulus == 12);
  CHECK(w34.residues == std::vector<std::uint64_t>{1});

  auto w345 = squares_congruences({3, 4, 5});
  CHECK(w345.modulus == 60);
  CHECK(w345.residues == std::vector<std::uint64_t>{1, 49});

  CHECK_THROWS_AS(squares_congruences({4, 6}), std::invalid_argument);
  CHECK_THROWS_AS(squares_congruences({2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(squares_congruences({}), std::invalid_argument);
}

TEST_CASE("squares_congruences: matches direct residue filtering") {
  const std::vector<std::vector<std::uint64_t>> cases = {
      {3, 4}, {3, 5}, {4, 5, 7}, {3, 4, 5, 7}, {9, 4, 5}, {3, 4, 11}};
  for (const auto& moduli : cases) {
    auto wheel = squares_congruences(moduli);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t x = 0; x < wheel.modulus; ++x) {
      bool all = true;
      for (std::uint64_t q : moduli) {
        bool nonzero_square = false;
        if (x % q != 0)
          for (std::uint64_t k = 1; k < q && !nonzero_square; ++k)
            if (k * k % q == x % q) nonzero_square = true;
        if (!nonzero_square) {
          all = false;
          break;
        }
      }
      if (all) expect.push_back(x);
    }
    CHECK(wheel.residues == expect);
  }
}

TEST_CASE("squares_congruences: cardinality law for prime moduli") {
  auto wheel = squares_congruences({3, 4, 5, 7, 11});
  std::uint64_t expect = 1;
  for (std::uint64_t q : {3, 5, 7, 11}) expect *= (q - 1) / 2;
  CHECK(wheel.residues.size() == expect);
  CHECK(std::is_sorted(wheel.residues.begin(), wheel.residues.end()));
  CHECK(std::adjacent_find(wheel.residues.begin(), wheel.residues.end()) == wheel.residues.end());
}

TEST_CASE("wheel_moduli_for: stock sublist reduces to the stated moduli") {
  auto moduli = wheel_moduli_for(default_dprime());
  CHECK(moduli == std::vector<std::uint64_t>{3, 4, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(wheel_moduli_for({-3, -4}) == std::vector<std::uint64_t>{3, 4});
  CHECK_THROWS_AS(wheel_moduli_for({-3, -7}), std::invalid_argument);
}

TEST_CASE("very_bad_primes: pinned examples") {
  CongruenceWheel w{12, {1}};
  CHECK(very_bad_primes(w, {}, 2, 50) == std::vector<std::uint64_t>{13, 37});
  CHECK(very_bad_primes(w, {}, 7, 7).empty());
  // the operation itself does not treat 13 specially
  CHECK(very_bad_primes(w, {}, 11, 38) == std::vector<std::uint64_t>{13, 37});
}

TEST_CASE("very_bad_primes: equals the naive per-prime scan") {
  std::mt19937_64 rng(31337);
  const std::vector<std::vector<std::uint64_t>> pools = {
      {3, 4}, {3, 4, 5}, {4, 5, 7}, {3, 4, 5, 7, 11}, {3, 4, 13}};
  const std::vector<long> check_pool = {-7, -8, -11, -19, -20, -23, -40};
  for (const auto& moduli : pools) {
    std::vector<long> checks;
    for (long d : check_pool)
      if (rng() % 2) checks.push_back(d);
    auto wheel = squares_congruences(moduli);
    auto fast = very_bad_primes(wheel, checks, 11, 20000, 2);
    auto slow = naive_scan(moduli, checks, 11, 20000);
    CHECK(fast == slow);
  }
}

TEST_CASE("bad_discrim_and_primes: class-number-one inputs produce empty lists") {
  auto out = bad_discrim_and_primes(h1_list(), 1'000'000);
  CHECK(out.L == h1_list());
  CHECK(out.good.empty());
  CHECK(out.bad.empty());
  CHECK(out.incomplete.empty());
}

TEST_CASE("bad_discrim_and_primes: N-monotone classification on the h<=2 set") {
  std::vector<long> d_list = h1_list();
  for (long d : {-15, -20, -24, -35, -40}) d_list.push_back(d);
  SieveOptions opts;
  opts.workers = 2;
  auto small = bad_discrim_and_primes(d_list, 10'000, opts);
  auto large = bad_discrim_and_primes(d_list, 1'000'000, opts);
  CHECK(small.L == large.L);
  CHECK(std::includes(large.good.begin(), large.good.end(), small.good.begin(), small.good.end()));
  CHECK(std::includes(large.bad.begin(), large.bad.end(), small.bad.begin(), small.bad.end()));
  for (auto p : small.good) {
    CHECK(p >= 11);
    CHECK(p != 13);
    CHECK(p <= 10'000);
  }
  // every classified prime was indeed unclassifiable by the resultant route:
  // bad ones split in every field absorbed before their discriminant
  for (auto p : large.bad) {
    bool all_split = true;
    for (long d : h1_list())
      if (kronecker(d, static_cast<std::int64_t>(p)) != 1) all_split = false;
    CHECK(all_split);
  }
}

TEST_CASE("full_run: class-number-one list with dprime {-3,-4}") {
  RunParams params;
  params.discriminants = h1_list();
  params.dprime = {-3, -4};
  params.nmax = 1000;
  SieveOptions opts;
  opts.workers = 2;
  auto report = full_run(params, opts);
  REQUIRE(report.completed);
  CHECK(report.L == h1_list());
  CHECK(report.bad.empty());
  CHECK(report.good.empty());

  // oracle: primes in [11, 1000] splitting in all nine fields
  std::vector<std::uint64_t> expect;
  for (std::uint64_t p = 11; p <= 1000; ++p) {
    if (!is_prime(p) || p == 13) continue;
    bool all = true;
    for (long d : h1_list())
      if (kronecker(d, static_cast<std::int64_t>(p)) != 1) all = false;
    if (all) expect.push_back(p);
  }
  CHECK(report.verybad == expect);
}

TEST_CASE("full_run: explicit 13 exclusion when the wheel admits it") {
  RunParams params;
  params.discriminants = h1_list();
  params.dprime = {-3, -4};
  params.nmax = 100;
  // with check_list = the other seven fields, 13 fails chi_{-7}; shrink D to
  // only {-3,-4} so nothing but the explicit rule can drop 13
  params.discriminants = {-3, -4};
  auto report = full_run(params, {});
  REQUIRE(report.completed);
  CHECK(std::find(report.verybad.begin(), report.verybad.end(), 13ull) == report.verybad.end());
  CHECK(std::find(report.verybad.begin(), report.verybad.end(), 37ull) != report.verybad.end());
  for (auto p : report.verybad) {
    CHECK(p >= 11);
    CHECK(p <= 100);
  }
}

TEST_CASE("full_run: checkpoint determinism under interruption") {
  RunParams params;
  params.discriminants = h1_list();
  for (long d : {-15, -20, -24}) params.discriminants.push_back(d);
  params.dprime = {-3, -4, -15, -20};
  params.nmax = 20000;

  fs::path dir = fresh_temp("cartan_sieve_ckpt_test");
  SieveOptions base;
  base.workers = 2;
  base.classpoly_cache = dir / "cache";

  auto uninterrupted = full_run(params, base);
  REQUIRE(uninterrupted.completed);
  std::string want = strip_stats(report_to_json(uninterrupted));

  SieveOptions ck = base;
  ck.checkpoint = dir / "ckpt.txt";
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    int budget = 1 + static_cast<int>(rng() % 6);
    int calls = 0;
    ck.should_cancel = [&calls, budget]() mutable { return ++calls > budget; };
    auto partial = full_run(params, ck);
    if (partial.completed) break; // ran out of work before the cancel hit
  }
  ck.should_cancel = nullptr;
  auto resumed = full_run(params, ck);
  REQUIRE(resumed.completed);
  CHECK(strip_stats(report_to_json(resumed)) == want);
  fs::remove_all(dir);
}

TEST_CASE("checkpoint: configuration mismatch is refused") {
  fs::path dir = fresh_temp("cartan_sieve_mismatch_test");
  RunParams params;
  params.discriminants = h1_list();
  params.dprime = {-3, -4};
  params.nmax = 500;
  SieveOptions opts;
  opts.checkpoint = dir / "ckpt.txt";
  auto first = full_run(params, opts);
  REQUIRE(first.completed);
  params.nmax = 600;
  CHECK_THROWS_AS(full_run(params, opts), CheckpointMismatch);
  fs::remove_all(dir);
}

TEST_CASE("full_run: validation") {
  RunParams params;
  params.discriminants = {-3, -4};
  params.dprime = {-3, -4, -7}; // -7 missing from Dlist
  params.nmax = 100;
  CHECK_THROWS_AS(full_run(params, {}), std::invalid_argument);
  params.dprime = {-3, -4};
  params.nmax = 5;
  CHECK_THROWS_AS(full_run(params, {}), std::invalid_argument);
}

TEST_CASE("report: stable serialization modulo stats") {
  RunParams params;
  params.discriminants = h1_list();
  params.dprime = {-3, -4};
  params.nmax = 2000;
  auto a = full_run(params, {});
  auto b = full_run(params, {});
  CHECK(strip_stats(report_to_json(a)) == strip_stats(report_to_json(b)));
  CHECK(report_to_json(a).find("\"verybad\"") != std::string::npos);
}

TEST_CASE("default inputs: stock discriminant lists") {
  auto d = default_discriminant_list();
  CHECK(d.size() == 98); // 9 + 18 + 16 + 54 + {-87}
  CHECK(d.front() == -3);
  CHECK(d.back() == -87);
  auto dp = default_dprime();
  CHECK(dp.size() == 13);
  std::set<long> ds(d.begin(), d.end());
  for (long x : dp) CHECK(ds.count(x) == 1);
}
