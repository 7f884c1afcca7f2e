#include "cartan/report.hpp"

#include <fstream>

#include <json.hpp>

namespace cartan {

std::string report_to_json(const SieveReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {
      {"nmax", std::to_string(report.params.nmax)},
      {"discriminants", report.params.discriminants},
      {"dprime", report.params.dprime},
      {"c_range", {report.params.c_lo, report.params.c_hi}},
      {"hash", report.config_hash},
  };
  j["ran_part1"] = report.ran_part1;
  j["ran_part2"] = report.ran_part2;
  j["completed"] = report.completed;
  j["L"] = report.L;
  auto primes_as_strings = [](const std::vector<std::uint64_t>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto p : v) arr.push_back(std::to_string(p));
    return arr;
  };
  j["good"] = primes_as_strings(report.good);
  j["bad"] = primes_as_strings(report.bad);
  j["verybad"] = primes_as_strings(report.verybad);
  nlohmann::ordered_json inc = nlohmann::ordered_json::array();
  for (const auto& f : report.incomplete)
    inc.push_back({{"D", f.discriminant}, {"residue", f.residue.get_str()}});
  j["incomplete"] = inc;
  j["stats"] = {
      {"part1_seconds", report.stats.part1_seconds},
      {"part2_seconds", report.stats.part2_seconds},
      {"total_seconds", report.stats.total_seconds},
      {"residue_count", report.stats.residue_count},
      {"candidates_tested", report.stats.candidates_tested},
      {"workers", report.stats.workers},
  };
  return j.dump(2) + "\n";
}

void write_report(const SieveReport& report, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write report to " + tmp.string());
    out << report_to_json(report);
  }
  std::filesystem::rename(tmp, path);
}

} // namespace cartan
