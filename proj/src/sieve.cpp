#include "cartan/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cartan/classpoly.hpp"
#include "cartan/quadforms.hpp"

namespace cartan {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr long kSeeds[] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};

u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Smallest value >= n congruent to s mod m.
u64 first_candidate(u64 s, u64 n, u64 m) {
  i64 num = static_cast<i64>(n) - static_cast<i64>(s);
  i64 mm = static_cast<i64>(m);
  i64 q = num <= 0 ? -((-num) / mm) : (num + mm - 1) / mm;
  return static_cast<u64>(static_cast<i64>(s) + q * mm);
}

struct CellRecord {
  u64 lo = 0, hi = 0;
  bool incomplete = false;
  mpz_class residue = 1;
  std::vector<u64> primes;
};

// Line-delimited cell store: "<id> <lo> <hi> done [p...]" or
// "<id> <lo> <hi> incomplete <residue> [p...]"; first line carries the
// config hash so stale checkpoints are refused.
class CheckpointStore {
 public:
  CheckpointStore() = default;

  void open(const std::filesystem::path& file, const std::string& hash) {
    path_ = file;
    std::ifstream in(file);
    if (in) {
      std::string line;
      if (std::getline(in, line)) {
        std::istringstream is(line);
        std::string mark, ver, got;
        is >> mark >> ver >> got;
        if (mark != "#" || ver != "cartan-sieve-checkpoint-v1" || got != hash)
          throw CheckpointMismatch("checkpoint " + file.string() + " does not match this configuration");
        while (std::getline(in, line)) parse_line(line);
      }
      in.close();
      out_.open(file, std::ios::app);
    } else {
      out_.open(file, std::ios::trunc);
      out_ << "# cartan-sieve-checkpoint-v1 " << hash << "\n";
      out_.flush();
    }
    if (!out_) throw std::runtime_error("cannot open checkpoint file " + file.string());
    active_ = true;
  }

  bool lookup(const std::string& id, CellRecord& rec) {
    if (!active_) return false;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cells_.find(id);
    if (it == cells_.end()) return false;
    rec = it->second;
    return true;
  }

  void record(const std::string& id, const CellRecord& rec) {
    if (!active_) return;
    std::lock_guard<std::mutex> lock(mu_);
    cells_[id] = rec;
    out_ << id << " " << rec.lo << " " << rec.hi << " "
         << (rec.incomplete ? "incomplete " + rec.residue.get_str() : std::string("done"));
    for (u64 p : rec.primes) out_ << " " << p;
    out_ << "\n";
    out_.flush();
  }

 private:
  void parse_line(const std::string& line) {
    if (line.empty() || line[0] == '#') return;
    std::istringstream is(line);
    std::string id, status;
    CellRecord rec;
    if (!(is >> id >> rec.lo >> rec.hi >> status)) return; // torn line
    if (status == "incomplete") {
      std::string res;
      if (!(is >> res)) return;
      rec.incomplete = true;
      rec.residue = mpz_class(res);
    } else if (status != "done") {
      return;
    }
    u64 p;
    while (is >> p) rec.primes.push_back(p);
    cells_[id] = rec;
  }

  bool active_ = false;
  std::filesystem::path path_;
  std::map<std::string, CellRecord> cells_;
  std::ofstream out_;
  std::mutex mu_;
};

// Runs `count` cell tasks over a small thread pool, honoring cancellation
// between cells. Returns false if cancelled before every cell finished;
// rethrows the first worker exception after the pool drains.
bool run_cells(std::size_t count, unsigned workers, const std::function<bool()>& should_cancel,
               const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancelled{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      if (should_cancel && should_cancel()) {
        cancelled.store(true);
        return;
      }
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        cancelled.store(true);
        return;
      }
    }
  };
  unsigned n = std::max(1u, workers);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return !cancelled.load();
}

std::vector<long> sorted_by_absolute(std::vector<long> v) {
  std::sort(v.begin(), v.end(), [](long a, long b) { return std::labs(a) < std::labs(b); });
  return v;
}

// p passes iff pseudoprime, kronecker(d, p) = 1 for all d, and prime.
bool candidate_passes(u64 p, const std::vector<long>& checks, std::atomic<u64>* tested) {
  if (tested) tested->fetch_add(1, std::memory_order_relaxed);
  if (!is_pseudoprime(p)) return false;
  for (long d : checks) {
    if (p > static_cast<u64>(std::numeric_limits<i64>::max())) return false; // unreachable
    if (kronecker(static_cast<i64>(d), static_cast<i64>(p)) != 1) return false;
  }
  return is_prime(p);
}

std::vector<u64> scan_cell(const CongruenceWheel& wheel, std::size_t res_begin, std::size_t res_end,
                           u64 lo, u64 hi, const std::vector<long>& checks,
                           std::atomic<u64>* tested) {
  std::vector<u64> found;
  for (std::size_t i = res_begin; i < res_end; ++i) {
    u64 s = wheel.residues[i];
    for (u64 p = first_candidate(s, lo, wheel.modulus); p < hi; p += wheel.modulus) {
      if (candidate_passes(p, checks, tested)) found.push_back(p);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

} // namespace

CongruenceWheel squares_congruences(const std::vector<std::uint64_t>& moduli) {
  if (moduli.empty()) throw std::invalid_argument("squares_congruences: empty moduli list");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 3) throw std::invalid_argument("squares_congruences: moduli must be >= 3");
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (std::gcd(moduli[i], moduli[j]) != 1)
        throw std::invalid_argument("squares_congruences: moduli must be pairwise coprime");
    }
  }

  CongruenceWheel wheel;
  wheel.modulus = 1;
  wheel.residues = {0};
  for (u64 q : moduli) {
    if (wheel.modulus > std::numeric_limits<u64>::max() / q)
      throw std::overflow_error("squares_congruences: modulus overflow");
    // nonzero squares mod q
    std::vector<u64> sq;
    for (u64 k = 1; k <= (q - 1) / 2; ++k) {
      u64 s = (k * k) % q;
      if (s != 0) sq.push_back(s);
    }
    std::sort(sq.begin(), sq.end());
    sq.erase(std::unique(sq.begin(), sq.end()), sq.end());

    u64 m_old = wheel.modulus;
    u64 m_new = m_old * q;
    // x = r mod m_old, x = s mod q  =>  x = r + m_old * ((s - r) * inv(m_old) mod q)
    u64 inv = 1;
    {
      i64 t = 0, newt = 1, r = static_cast<i64>(q), newr = static_cast<i64>(m_old % q);
      while (newr != 0) {
        i64 quot = r / newr;
        i64 tmp = t - quot * newt;
        t = newt;
        newt = tmp;
        tmp = r - quot * newr;
        r = newr;
        newr = tmp;
      }
      inv = static_cast<u64>(((t % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
    }
    std::vector<u64> next;
    next.reserve(wheel.residues.size() * sq.size());
    for (u64 r : wheel.residues) {
      for (u64 s : sq) {
        u64 diff = (s + q - r % q) % q;
        u64 t = (diff * inv) % q;
        next.push_back(r + m_old * t);
      }
    }
    wheel.modulus = m_new;
    wheel.residues = std::move(next);
  }
  std::sort(wheel.residues.begin(), wheel.residues.end());
  wheel.residues.erase(std::unique(wheel.residues.begin(), wheel.residues.end()),
                       wheel.residues.end());
  return wheel;
}

std::vector<std::uint64_t> wheel_moduli_for(const std::vector<long>& dprime) {
  bool has3 = false, has4 = false;
  for (long d : dprime) {
    if (d == -3) has3 = true;
    if (d == -4) has4 = true;
  }
  if (!has3 || !has4)
    throw std::invalid_argument("wheel_moduli_for: dprime must contain -3 and -4");
  std::set<u64> moduli{4};
  for (long d : dprime) {
    long m = std::labs(d);
    while (m % 2 == 0) m /= 2; // the even part is carried by the modulus 4
    for (long p = 3; p * p <= m; p += 2) {
      while (m % p == 0) {
        moduli.insert(static_cast<u64>(p));
        m /= p;
      }
    }
    if (m > 1) moduli.insert(static_cast<u64>(m));
  }
  return {moduli.begin(), moduli.end()};
}

std::vector<std::uint64_t> very_bad_primes(const CongruenceWheel& wheel,
                                           const std::vector<long>& check_list,
                                           std::uint64_t n, std::uint64_t m, unsigned workers) {
  if (n >= m) return {};
  std::vector<long> checks = sorted_by_absolute(check_list);
  std::size_t chunk = 65536;
  std::size_t chunks = (wheel.residues.size() + chunk - 1) / chunk;
  std::vector<std::vector<u64>> per_cell(chunks);
  run_cells(chunks, workers, nullptr, [&](std::size_t ci) {
    std::size_t lo = ci * chunk, hi = std::min(wheel.residues.size(), lo + chunk);
    per_cell[ci] = scan_cell(wheel, lo, hi, n, m, checks, nullptr);
  });
  std::vector<u64> out;
  for (auto& v : per_cell) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Part1Engine {
  const std::vector<long>& d_list;
  u64 n_max;
  const SieveOptions& opts;
  CheckpointStore& store;

  // discriminants needing r_D work, in d_list order, deduplicated
  std::vector<long> tasks() const {
    std::set<long> seen(std::begin(kSeeds), std::end(kSeeds));
    std::vector<long> t;
    for (long d : d_list) {
      if (seen.insert(d).second) t.push_back(d);
    }
    return t;
  }

  int c_lo = 2, c_hi = 7;

  CellRecord compute(long d) const {
    ClassPolyOptions cp_opts;
    cp_opts.cache_dir = opts.classpoly_cache;
    mpz_class r = r_D(d, c_lo, c_hi, cp_opts);
    CellRecord rec;
    rec.lo = 11;
    rec.hi = n_max;
    if (r == 0) { // derivative resultants all vanished; treat as unfactorable
      rec.incomplete = true;
      rec.residue = 0;
      return rec;
    }
    RangeFactors rf = factor_in_range(r, 11, n_max, opts.budget);
    rec.incomplete = !rf.complete;
    rec.residue = rf.residue;
    for (u64 p : rf.primes)
      if (p != 13) rec.primes.push_back(p);
    return rec;
  }

  // Returns records keyed by discriminant, or nothing if cancelled.
  bool gather(std::map<long, CellRecord>& records) {
    std::vector<long> work = tasks();
    std::mutex mu;
    bool ok = run_cells(work.size(), opts.workers, opts.should_cancel, [&](std::size_t i) {
      long d = work[i];
      std::string id = "p1:" + std::to_string(d);
      CellRecord rec;
      if (!store.lookup(id, rec)) {
        rec = compute(d);
        store.record(id, rec);
      }
      std::lock_guard<std::mutex> lock(mu);
      records[d] = rec;
    });
    return ok;
  }

  PartOneOutcome classify(const std::map<long, CellRecord>& records) const {
    PartOneOutcome out;
    out.L.assign(std::begin(kSeeds), std::end(kSeeds));
    std::set<long> in_l(out.L.begin(), out.L.end());
    std::set<u64> good, bad;
    for (long d : d_list) {
      if (in_l.count(d)) continue;
      const CellRecord& rec = records.at(d);
      for (u64 p : rec.primes) {
        if (good.count(p) || bad.count(p)) continue;
        bool some_nonsplit = false;
        for (long l : out.L) {
          if (kronecker(static_cast<i64>(l), static_cast<i64>(p)) != 1) {
            some_nonsplit = true;
            break;
          }
        }
        (some_nonsplit ? good : bad).insert(p);
      }
      if (rec.incomplete) out.incomplete.push_back({d, rec.residue});
      out.L.push_back(d);
      in_l.insert(d);
    }
    out.good.assign(good.begin(), good.end());
    out.bad.assign(bad.begin(), bad.end());
    return out;
  }
};

SieveReport run_impl(const RunParams& params, const SieveOptions& opts, bool do_part1,
                     bool do_part2) {
  if (params.nmax < 11) throw std::invalid_argument("sieve: nmax must be >= 11");
  if (params.c_lo < 1 || params.c_lo > params.c_hi)
    throw std::invalid_argument("sieve: bad conductor range");
  {
    std::set<long> ds(params.discriminants.begin(), params.discriminants.end());
    for (long d : params.dprime)
      if (!ds.count(d))
        throw std::invalid_argument("sieve: dprime must be a subset of the discriminant list");
  }

  SieveReport report;
  report.params = params;
  report.config_hash = sieve_config_hash(params, opts);
  report.stats.workers = std::max(1u, opts.workers);

  CheckpointStore store;
  if (opts.checkpoint) store.open(*opts.checkpoint, report.config_hash);

  auto t0 = std::chrono::steady_clock::now();

  if (do_part1) {
    report.ran_part1 = true;
    Part1Engine engine{params.discriminants, params.nmax, opts, store};
    engine.c_lo = params.c_lo;
    engine.c_hi = params.c_hi;
    std::map<long, CellRecord> records;
    if (!engine.gather(records)) {
      report.completed = false;
      return report;
    }
    PartOneOutcome p1 = engine.classify(records);
    report.L = std::move(p1.L);
    report.good = std::move(p1.good);
    report.bad = std::move(p1.bad);
    report.incomplete = std::move(p1.incomplete);
  }
  auto t1 = std::chrono::steady_clock::now();
  report.stats.part1_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (do_part2) {
    report.ran_part2 = true;
    CongruenceWheel wheel = squares_congruences(wheel_moduli_for(params.dprime));
    report.stats.residue_count = wheel.residues.size();

    std::set<long> dp(params.dprime.begin(), params.dprime.end());
    std::vector<long> checks;
    for (long d : params.discriminants)
      if (!dp.count(d)) checks.push_back(d);
    checks = sorted_by_absolute(checks);

    // inclusive prime range [11, nmax]
    const u64 n = 11, m = params.nmax + 1;
    std::size_t rc = std::max<std::size_t>(1, opts.residue_chunk);
    std::size_t chunks = (wheel.residues.size() + rc - 1) / rc;
    u64 width = std::max<u64>(1, opts.interval_width);
    std::size_t intervals = static_cast<std::size_t>((m - n + width - 1) / width);

    std::atomic<u64> tested{0};
    std::mutex mu;
    std::map<std::string, std::vector<u64>> found;
    bool ok = run_cells(chunks * intervals, opts.workers, opts.should_cancel, [&](std::size_t cell) {
      std::size_t ci = cell / intervals, ii = cell % intervals;
      u64 lo = n + ii * width;
      u64 hi = std::min<u64>(m, lo + width);
      std::string id = "p2:" + std::to_string(ci) + ":" + std::to_string(ii);
      CellRecord rec;
      if (!store.lookup(id, rec)) {
        std::size_t rlo = ci * rc, rhi = std::min(wheel.residues.size(), rlo + rc);
        rec.lo = lo;
        rec.hi = hi;
        rec.primes = scan_cell(wheel, rlo, rhi, lo, hi, checks, &tested);
        store.record(id, rec);
      }
      std::lock_guard<std::mutex> lock(mu);
      found[id] = rec.primes;
    });
    report.stats.candidates_tested = tested.load();
    if (!ok) {
      report.completed = false;
      auto t2 = std::chrono::steady_clock::now();
      report.stats.part2_seconds = std::chrono::duration<double>(t2 - t1).count();
      report.stats.total_seconds = std::chrono::duration<double>(t2 - t0).count();
      return report;
    }
    std::vector<u64> vb;
    for (auto& [id, primes] : found) vb.insert(vb.end(), primes.begin(), primes.end());
    std::sort(vb.begin(), vb.end());
    vb.erase(std::unique(vb.begin(), vb.end()), vb.end());
    vb.erase(std::remove(vb.begin(), vb.end(), 13ull), vb.end());
    report.verybad = std::move(vb);
  }

  auto t2 = std::chrono::steady_clock::now();
  report.stats.part2_seconds = std::chrono::duration<double>(t2 - t1).count();
  report.stats.total_seconds = std::chrono::duration<double>(t2 - t0).count();
  report.completed = true;
  return report;
}

} // namespace

PartOneOutcome bad_discrim_and_primes(const std::vector<long>& D_list, std::uint64_t N,
                                      const SieveOptions& opts) {
  if (N < 11) throw std::invalid_argument("bad_discrim_and_primes: N must be >= 11");
  CheckpointStore store; // inactive
  Part1Engine engine{D_list, N, opts, store};
  std::map<long, CellRecord> records;
  if (!engine.gather(records))
    throw std::runtime_error("bad_discrim_and_primes: cancelled");
  return engine.classify(records);
}

SieveReport full_run(const RunParams& params, const SieveOptions& opts) {
  return run_impl(params, opts, true, true);
}

SieveReport run_part1(const RunParams& params, const SieveOptions& opts) {
  return run_impl(params, opts, true, false);
}

SieveReport run_part2(const RunParams& params, const SieveOptions& opts) {
  return run_impl(params, opts, false, true);
}

std::string sieve_config_hash(const RunParams& params, const SieveOptions& opts) {
  std::ostringstream os;
  os << "v1|N=" << params.nmax << "|c=" << params.c_lo << "," << params.c_hi << "|D=";
  for (long d : params.discriminants) os << d << ",";
  os << "|Dp=";
  for (long d : params.dprime) os << d << ",";
  os << "|tb=" << opts.budget.trial_bound << "|rho=" << opts.budget.rho_iterations
     << "|w=" << opts.interval_width << "|rc=" << opts.residue_chunk;
  std::ostringstream hex;
  hex << std::hex << fnv1a(os.str());
  return hex.str();
}

std::vector<long> default_discriminant_list() {
  auto table = discriminant_table(4);
  std::vector<long> out;
  for (int h = 1; h <= 4; ++h)
    for (long d : table[h]) out.push_back(d);
  out.push_back(-87);
  return out;
}

std::vector<long> default_dprime() {
  return {-3, -4, -15, -20, -7, -11, -39, -52, -51, -68, -19, -23, -87};
}

} // namespace cartan
