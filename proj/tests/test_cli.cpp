// End-to-end checks of the command-line surface: subcommands, report files,
// checkpoint resume, and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CARTAN_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path fresh_temp(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

} // namespace

TEST_CASE("cli: bounds crossovers") {
  auto res = run_cli("bounds crossovers");
  CHECK(res.exit_code == 0);
  std::istringstream is(res.output);
  std::string name;
  long long r2 = 0, r3 = 0;
  is >> name >> r2;
  CHECK(name == "crossover_r2");
  is >> name >> r3;
  CHECK(name == "crossover_r3");
  CHECK(r2 > 13'000'000);
  CHECK(r2 <= 14'000'000);
  CHECK(r3 > 150'000'000'000LL);
  CHECK(r3 <= 170'000'000'000LL);
}

TEST_CASE("cli: bounds table at p = 13") {
  auto res = run_cli("bounds 13");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("runge_height_bound 76.3") != std::string::npos);
  CHECK(res.output.find("split_cartan_height_bound") != std::string::npos);
}

TEST_CASE("cli: classpoly record output") {
  auto res = run_cli("classpoly -4");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "-4: -1728 1\n");
  auto res15 = run_cli("classpoly -15");
  CHECK(res15.exit_code == 0);
  CHECK(res15.output == "-15: -121287375 191025 1\n");
}

TEST_CASE("cli: verify-units with csv") {
  fs::path dir = fresh_temp("cartan_cli_units");
  fs::path csv = dir / "rows.csv";
  auto res = run_cli("verify-units --samples 40 --seed 3 --csv " + csv.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("siegel_log_envelope") != std::string::npos);
  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "check,sample,lhs,bound,pass");
  fs::remove_all(dir);
}

TEST_CASE("cli: full-run writes a report file") {
  fs::path dir = fresh_temp("cartan_cli_fullrun");
  fs::path out = dir / "report.json";
  auto res = run_cli("full-run --nmax 2000 --dmax-class-number 1 --dprime=-3,-4 --workers 2 --out " +
                     out.string());
  CHECK(res.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["completed"] == true);
  // nine class-number-one discriminants plus the default extra -87
  CHECK(j["L"].size() == 10);
  CHECK(j["L"].back() == -87);
  CHECK(j["bad"].empty());
  CHECK(j["config"]["nmax"] == "2000");
  for (const auto& p : j["verybad"]) CHECK(p.is_string());
  for (const auto& p : j["good"]) CHECK(p.is_string());
  fs::remove_all(dir);
}

TEST_CASE("cli: checkpoint mismatch exits with the dedicated code") {
  fs::path dir = fresh_temp("cartan_cli_ckpt");
  fs::path ck = dir / "ckpt.txt";
  fs::path out = dir / "r.json";
  std::string base = "full-run --dmax-class-number 1 --dprime=-3,-4 --checkpoint " + ck.string() +
                     " --out " + out.string();
  auto first = run_cli(base + " --nmax 1500");
  CHECK(first.exit_code == 0);
  auto resumed_ok = run_cli(base + " --nmax 1500 --resume");
  CHECK(resumed_ok.exit_code == 0);
  auto mismatch = run_cli(base + " --nmax 1700 --resume");
  CHECK(mismatch.exit_code == 2);
  // without --resume the stale checkpoint is discarded
  auto overwrite = run_cli(base + " --nmax 1700");
  CHECK(overwrite.exit_code == 0);
  fs::remove_all(dir);
}

TEST_CASE("cli: sieve-part1 and sieve-part2 subcommands") {
  fs::path dir = fresh_temp("cartan_cli_parts");
  fs::path out1 = dir / "p1.json", out2 = dir / "p2.json";
  auto r1 = run_cli("sieve-part1 --nmax 2000 --dmax-class-number 1 --dprime=-3,-4 --out " + out1.string());
  CHECK(r1.exit_code == 0);
  std::ifstream in1(out1);
  nlohmann::json j1 = nlohmann::json::parse(in1);
  CHECK(j1["ran_part1"] == true);
  CHECK(j1["ran_part2"] == false);

  auto r2 = run_cli("sieve-part2 --nmax 2000 --dmax-class-number 1 --dprime=-3,-4 --out " + out2.string());
  CHECK(r2.exit_code == 0);
  std::ifstream in2(out2);
  nlohmann::json j2 = nlohmann::json::parse(in2);
  CHECK(j2["ran_part1"] == false);
  CHECK(j2["ran_part2"] == true);
  CHECK(j2["L"].empty());
  fs::remove_all(dir);
}

TEST_CASE("cli: CARTAN_SIEVE_WORKERS drives the default worker count") {
  fs::path dir = fresh_temp("cartan_cli_env");
  fs::path out = dir / "r.json";
  RunResult res;
  {
    std::string cmd = "CARTAN_SIEVE_WORKERS=1 " + std::string(CARTAN_CLI_PATH) +
                      " full-run --nmax 1200 --dmax-class-number 1 --dprime=-3,-4 --out " +
                      out.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf{};
    while (fread(buf.data(), 1, buf.size(), pipe) > 0) {
    }
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  CHECK(res.exit_code == 0);
  std::ifstream in(out);
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["stats"]["workers"] == 1);
  fs::remove_all(dir);
}

TEST_CASE("cli: usage errors are nonzero") {
  CHECK(run_cli("bounds").exit_code != 0);
  CHECK(run_cli("no-such-subcommand").exit_code != 0);
  CHECK(run_cli("").exit_code != 0);
}
