// cartan-sieve: command-line front end for the discriminant/prime sieve,
// bound evaluations, class polynomials, and the unit-estimate batteries.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cartan/bounds.hpp"
#include "cartan/classpoly.hpp"
#include "cartan/quadforms.hpp"
#include "cartan/report.hpp"
#include "cartan/sieve.hpp"
#include "cartan/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckpointMismatch = 2;
constexpr int kExitIo = 3;
constexpr int kExitIncomplete = 4;

struct SieveCli {
  std::uint64_t nmax = 100'000'000'000'000ull;
  int dmax_class_number = 4;
  std::vector<long> extra_discriminants = {-87};
  std::vector<long> dprime = cartan::default_dprime();
  int c_max = 7;
  unsigned workers = 0;
  std::string checkpoint;
  std::string out;
  std::string cache_dir;
  bool resume = false;
  std::uint64_t factor_effort = cartan::FactorBudget{}.rho_iterations;
};

unsigned default_workers() {
  if (const char* env = std::getenv("CARTAN_SIEVE_WORKERS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void add_sieve_flags(CLI::App* cmd, SieveCli& cfg) {
  cmd->add_option("--nmax", cfg.nmax, "Upper end of the prime range [11, nmax]");
  cmd->add_option("--dmax-class-number", cfg.dmax_class_number,
                  "Use all fundamental discriminants of class number <= this")
      ->check(CLI::Range(1, 6));
  cmd->add_option("--extra-discriminants", cfg.extra_discriminants,
                  "Discriminants appended after the class-number tables")
      ->delimiter(',');
  cmd->add_option("--dprime", cfg.dprime, "Congruence sublist D' (must contain -3 and -4)")
      ->delimiter(',');
  cmd->add_option("--c-max", cfg.c_max, "Conductor range [2, c-max] for r_D")->check(CLI::Range(2, 16));
  cmd->add_option("--workers", cfg.workers, "Worker threads (default: CARTAN_SIEVE_WORKERS or hardware)");
  cmd->add_option("--checkpoint", cfg.checkpoint, "Checkpoint file for interrupt/resume");
  cmd->add_flag("--resume", cfg.resume, "Reuse an existing checkpoint (must match configuration)");
  cmd->add_option("--out", cfg.out, "Write the JSON report here (default: stdout)");
  cmd->add_option("--cache-dir", cfg.cache_dir, "Class-polynomial cache directory");
  cmd->add_option("--factor-effort", cfg.factor_effort, "Pollard-rho iteration budget per r_D");
}

int run_sieve(const SieveCli& cfg, int which) { // 0 part1, 1 part2, 2 full
  cartan::RunParams params;
  auto table = cartan::discriminant_table(cfg.dmax_class_number);
  for (int h = 1; h <= cfg.dmax_class_number; ++h)
    for (long d : table[h]) params.discriminants.push_back(d);
  for (long d : cfg.extra_discriminants) params.discriminants.push_back(d);
  params.dprime = cfg.dprime;
  params.nmax = cfg.nmax;
  params.c_lo = 2;
  params.c_hi = cfg.c_max;

  cartan::SieveOptions opts;
  opts.workers = cfg.workers ? cfg.workers : default_workers();
  opts.budget.rho_iterations = cfg.factor_effort;
  if (!cfg.cache_dir.empty()) opts.classpoly_cache = cfg.cache_dir;
  if (!cfg.checkpoint.empty()) {
    if (!cfg.resume) std::filesystem::remove(cfg.checkpoint);
    opts.checkpoint = cfg.checkpoint;
  }

  cartan::SieveReport report;
  try {
    report = which == 0   ? cartan::run_part1(params, opts)
             : which == 1 ? cartan::run_part2(params, opts)
                          : cartan::full_run(params, opts);
  } catch (const cartan::CheckpointMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckpointMismatch;
  }

  try {
    if (cfg.out.empty()) {
      std::cout << cartan::report_to_json(report);
    } else {
      cartan::write_report(report, cfg.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  if (!report.incomplete.empty()) {
    std::cerr << "warning: " << report.incomplete.size()
              << " discriminant(s) with incomplete factorization of r_D\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

int run_bounds(const std::string& arg) {
  std::cout.precision(12);
  if (arg == "crossovers") {
    auto r2 = cartan::crossover_r2();
    auto r3 = cartan::crossover_r3();
    std::cout << "crossover_r2 " << r2 << "\n";
    std::cout << "crossover_r3 " << r3 << "\n";
    return kExitOk;
  }
  double p = std::stod(arg);
  std::cout << "p " << p << "\n";
  for (const auto& row : cartan::evaluate_bounds(p))
    std::cout << row.quantity << " " << row.value << "\n";
  return kExitOk;
}

int run_classpoly(long d, const std::string& cache_dir) {
  cartan::ClassPolyOptions opts;
  if (!cache_dir.empty()) opts.cache_dir = cache_dir;
  auto cp = cartan::class_polynomial(d, opts);
  std::cout << cartan::class_polynomial_record(cp) << "\n";
  return kExitOk;
}

int run_verify_units(int samples, std::uint64_t seed, const std::string& csv) {
  cartan::BatterySpec spec;
  if (samples > 0) {
    spec.siegel_samples = samples;
    spec.unit_product_samples_per_branch = std::max(1, samples / 10);
    spec.euler_sum_samples = samples * 10;
    spec.basic_log_samples = samples * 10;
  }
  auto v = cartan::verify_unit_estimates(spec, seed, !csv.empty());
  std::printf("%-28s %9s %9s %14s %6s\n", "battery", "samples", "failures", "min_margin", "pass");
  for (const auto& b : v.batteries) {
    std::printf("%-28s %9d %9d %14.6g %6s\n", b.name.c_str(), b.samples, b.failures, b.min_margin,
                b.failures == 0 ? "yes" : "NO");
  }
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) {
      std::cerr << "error: cannot write " << csv << "\n";
      return kExitIo;
    }
    out << "check,sample,lhs,bound,pass\n";
    for (const auto& r : v.rows)
      out << r.check << "," << r.index << "," << r.lhs << "," << r.bound << "," << (r.pass ? 1 : 0)
          << "\n";
  }
  return v.all_pass ? kExitOk : kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heegner-Gross discriminant/prime sieve and explicit bound toolkit"};
  app.require_subcommand(1);

  SieveCli part1_cfg, part2_cfg, full_cfg;
  auto* part1 = app.add_subcommand("sieve-part1", "Resultant classification of primes (lists L/good/bad)");
  add_sieve_flags(part1, part1_cfg);
  auto* part2 = app.add_subcommand("sieve-part2", "Congruence-wheel scan for very bad primes");
  add_sieve_flags(part2, part2_cfg);
  auto* full = app.add_subcommand("full-run", "Part I followed by Part II; certifies the whole range");
  add_sieve_flags(full, full_cfg);

  std::string bounds_arg;
  auto* bounds = app.add_subcommand("bounds", "Evaluate height bounds at p, or 'crossovers'");
  bounds->add_option("p", bounds_arg, "prime (real) argument, or the word 'crossovers'")->required();

  std::string cp_arg, cp_cache;
  auto* classpoly = app.add_subcommand("classpoly", "Print the class polynomial record for D");
  classpoly->add_option("D", cp_arg, "negative discriminant, e.g. -4")->required();
  classpoly->add_option("--cache-dir", cp_cache, "Class-polynomial cache directory");

  int vu_samples = 0;
  std::uint64_t vu_seed = 1;
  std::string vu_csv;
  auto* vunits = app.add_subcommand("verify-units", "Run the unit-estimate sample batteries");
  vunits->add_option("--samples", vu_samples, "Base sample count (default: battery-specific)");
  vunits->add_option("--seed", vu_seed, "RNG seed");
  vunits->add_option("--csv", vu_csv, "Write per-sample (lhs, bound) rows here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (part1->parsed()) return run_sieve(part1_cfg, 0);
    if (part2->parsed()) return run_sieve(part2_cfg, 1);
    if (full->parsed()) return run_sieve(full_cfg, 2);
    if (bounds->parsed()) return run_bounds(bounds_arg);
    if (classpoly->parsed()) return run_classpoly(std::stol(cp_arg), cp_cache);
    if (vunits->parsed()) return run_verify_units(vu_samples, vu_seed, vu_csv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
