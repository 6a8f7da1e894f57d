#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QCORR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  RunResult result;
  while (fgets(buf, sizeof(buf), pipe)) result.output += buf;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> values;
  std::stringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) values.push_back(std::stod(cell));
  return values;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("analyze prints the qutrit golden bounds") {
  const RunResult r = run_cli("analyze --family max-entangled --d 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("max-entangled(d=3)") != std::string::npos);
  CHECK(r.output.find("l_ppt        0.5") != std::string::npos);
  CHECK(r.output.find("0.458333333333") != std::string::npos);
}

TEST_CASE("analyze emits machine-readable reports") {
  const RunResult r = run_cli(
      "analyze --family werner --p 0.2 --oracle gqd --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j.at("criteria").at("sipt").at("verdict") == "violated");
  CHECK(std::abs(j.at("criteria").at("sipt").at("witness").get<double>() -
                 0.04) < 1e-9);
  CHECK(std::abs(j.at("discord_bounds").at("combined").get<double>() - 0.01) <
        1e-9);
  CHECK(std::abs(j.at("oracles").at("gqd").at("value").get<double>() - 0.02) <
        1e-4);
  CHECK(j.at("criteria").at("ppt").at("verdict") == "satisfied");
}

TEST_CASE("generated classical-quantum states analyze as discord-free") {
  const char* path = "test_cli_cq.json";
  const RunResult gen = run_cli(
      std::string("generate --family cq --M 3 --N 3 --k 3 --seed 7 --out ") +
      path);
  REQUIRE(gen.exit_code == 0);

  const RunResult ana =
      run_cli(std::string("analyze --file ") + path + " --format json");
  REQUIRE(ana.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(ana.output);
  CHECK(j.at("criteria").at("sipt").at("verdict") == "satisfied");
  CHECK(j.at("discord_bounds").at("l_ppt").get<double>() < 1e-10);
  CHECK(j.at("discord_bounds").at("l_sipt").get<double>() < 1e-10);
  CHECK(j.at("discord_bounds").at("combined").get<double>() < 1e-10);
  std::remove(path);
}

TEST_CASE("generate is deterministic byte for byte") {
  const RunResult first = run_cli(
      "generate --family ginibre --M 3 --N 3 --rank 4 --seed 42 --out "
      "test_cli_g1.json");
  const RunResult second = run_cli(
      "generate --family ginibre --M 3 --N 3 --rank 4 --seed 42 --out "
      "test_cli_g2.json");
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);
  CHECK(slurp("test_cli_g1.json") == slurp("test_cli_g2.json"));
  std::remove("test_cli_g1.json");
  std::remove("test_cli_g2.json");
}

TEST_CASE("generate and reanalyze matches the in-memory report") {
  const char* path = "test_cli_w.json";
  REQUIRE(run_cli(std::string("generate --family werner --p 0.3 --out ") + path)
              .exit_code == 0);
  const RunResult from_file =
      run_cli(std::string("analyze --file ") + path + " --format json");
  const RunResult from_family =
      run_cli("analyze --family werner --p 0.3 --format json");
  REQUIRE(from_file.exit_code == 0);
  REQUIRE(from_family.exit_code == 0);

  const nlohmann::json a = nlohmann::json::parse(from_file.output);
  const nlohmann::json b = nlohmann::json::parse(from_family.output);
  for (const char* field : {"l_ppt", "l_ppt_prime", "l_sipt", "combined",
                            "deficit_bound_bits"}) {
    CHECK(std::abs(a.at("discord_bounds").at(field).get<double>() -
                   b.at("discord_bounds").at(field).get<double>()) < 1e-12);
  }
  CHECK(std::abs(a.at("criteria").at("sipt").at("witness").get<double>() -
                 b.at("criteria").at("sipt").at("witness").get<double>()) <
        1e-12);
  CHECK(a.at("negativity") == b.at("negativity"));
  std::remove(path);
}

TEST_CASE("x states with equal anti-diagonals evade the spectrum test") {
  const char* path = "test_cli_x.json";
  const RunResult gen = run_cli(
      std::string("generate --family x-state --x-diag 0.35 0.15 0.15 0.35 "
                  "--x-outer 0.1 0 --x-inner 0.1 0 --out ") +
      path);
  REQUIRE(gen.exit_code == 0);
  const RunResult ana =
      run_cli(std::string("analyze --file ") + path + " --format json");
  REQUIRE(ana.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(ana.output);
  CHECK(j.at("criteria").at("sipt").at("verdict") == "satisfied");
  std::remove(path);
}

TEST_CASE("werner sweep separates negativity from the sipt bound") {
  const RunResult r = run_cli(
      "sweep --family werner --range 0:1:0.05 --columns negativity,l_sipt");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = lines_of(r.output);
  REQUIRE(lines.size() == 23);
  CHECK(lines[0].find("# seed=0, version=") == 0);
  CHECK(lines[1] == "p,negativity,l_sipt");

  for (size_t i = 2; i < lines.size(); ++i) {
    const std::vector<double> row = parse_csv_row(lines[i]);
    REQUIRE(row.size() == 3);
    const double p = row[0];
    if (p <= 1.0 / 3.0 + 1e-12) {
      CHECK(row[1] < 1e-12);
    } else {
      CHECK(row[1] > 1e-12);
    }
    if (p > 0.0) {
      CHECK(row[2] > 1e-12);
    } else {
      CHECK(row[2] < 1e-12);
    }
  }
}

TEST_CASE("maximally entangled sweep orders the two bounds") {
  const RunResult r = run_cli(
      "sweep --family max-entangled --range 2:5:1 --columns "
      "l_ppt,l_sipt,dhs_exact");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = lines_of(r.output);
  REQUIRE(lines.size() == 6);
  CHECK(lines[1] == "d,l_ppt,l_sipt,dhs_exact");
  for (size_t i = 2; i < lines.size(); ++i) {
    const std::vector<double> row = parse_csv_row(lines[i]);
    REQUIRE(row.size() == 4);
    const double d = row[0];
    if (d == 2.0) {
      CHECK(std::abs(row[1] - row[2]) < 1e-9);
    } else {
      CHECK(row[1] > row[2] + 1e-9);
    }
    CHECK(std::abs(row[3] - (1.0 - 1.0 / d)) < 1e-12);
  }
}

TEST_CASE("empty sweep ranges emit only the header") {
  const RunResult r = run_cli("sweep --family werner --range 1:0:0.1");
  CHECK(r.exit_code == 0);
  const std::vector<std::string> lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("# seed=", 0) == 0);
}

TEST_CASE("invalid inputs exit with code 2") {
  CHECK(run_cli("analyze --family werner --p 1.5").exit_code == 2);
  CHECK(run_cli("analyze --file does_not_exist.json").exit_code == 2);
  CHECK(run_cli("analyze").exit_code == 2);
  CHECK(run_cli("analyze --family werner --file x.json").exit_code == 2);
  CHECK(run_cli("analyze --unknown-flag").exit_code == 2);
  CHECK(run_cli("sweep --family werner --range nonsense").exit_code == 2);
  CHECK(run_cli("sweep --family werner --range 0:1:0.5 --columns bogus")
            .exit_code == 2);
  CHECK(run_cli("sweep --family cq --range 0:1:0.5").exit_code == 2);
  CHECK(run_cli("generate --family x-state --x-diag 0.1 0.4 0.4 0.1 "
                "--x-outer 0.5 0 --x-inner 0 0 --out test_cli_bad.json")
            .exit_code == 2);

  std::ofstream junk("test_cli_junk.json");
  junk << "{ not json";
  junk.close();
  const RunResult bad = run_cli("analyze --file test_cli_junk.json");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("state file") != std::string::npos);
  std::remove("test_cli_junk.json");
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("analyze --help").exit_code == 0);
}
