#include "hcm/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using hcm::run_cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hcm_cli_test_" + name);
}

void check_round_trip(const std::string& text) {
  const auto parsed = nlohmann::ordered_json::parse(text);
  CHECK(parsed.dump(2) + "\n" == text);
}

}  // namespace

TEST_CASE("single values") {
  auto r = run({"moment", "--k", "0", "--m", "0", "--M", "2", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");
  r = run({"bias", "a1", "--m", "1", "--M", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/16\n");
  CHECK(run({"bias", "a2", "--m", "1", "--M", "3"}).out == "-1/8\n");
  CHECK(run({"bias", "a1", "--m", "1", "--M", "3", "--route", "chars"}).out == "0.0625\n");
  CHECK(run({"hurwitz", "20"}).out == "2\n");
  CHECK(run({"hurwitz", "0"}).out == "-1/12\n");
  CHECK(run({"lambda", "--k", "0", "--m", "2", "--M", "5", "--n", "1"}).out == "1/2\n");
  CHECK(run({"main-term", "--m", "1", "--M", "1", "--n", "6"}).out == "24\n");
  CHECK(run({"moment", "--k", "1", "--m", "-1", "--M", "3", "--n", "5"}).code == 0);
}

TEST_CASE("reals carry 12 significant digits") {
  const auto r = run({"bias", "a1", "--m", "2", "--M", "5", "--route", "chars"});
  CHECK(r.out == "-0.0520833333333\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"moment", "--k", "0", "--m", "0", "--M", "2"}).code == 2);
  CHECK(run({"moment", "--k", "0", "--m", "0", "--M", "2", "--n", "5", "--bogus"}).code == 2);
  CHECK(run({"bias", "a3", "--m", "1", "--M", "3"}).code == 2);
  CHECK(run({"bias", "a2", "--m", "1", "--M", "2"}).code == 2);
  CHECK(run({"main-term", "--m", "0", "--M", "3", "--n", "2"}).code == 2);
  CHECK(run({"trace-moment", "--k", "0", "--m", "1", "--M", "5", "--p", "5", "--r", "1"}).code == 2);
  CHECK(run({"verify", "nonexistent"}).code == 2);
  CHECK(run({"--json", "--csv", "hurwitz", "3"}).code == 2);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("version banner records the defaults") {
  const auto r = run({"--version"});
  CHECK(r.out.find("eta0=odd") != std::string::npos);
  CHECK(r.out.find("phi=tilde") != std::string::npos);
  CHECK(r.out.find("psi=corrected") != std::string::npos);
}

TEST_CASE("global flags work after the subcommand") {
  const auto a = run({"--json", "hurwitz", "23"});
  const auto b = run({"hurwitz", "23", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("JSON output round-trips") {
  const std::vector<std::vector<std::string>> commands = {
      {"--json", "hurwitz", "23"},
      {"--json", "moment", "--k", "2", "--m", "1", "--M", "2", "--n", "5"},
      {"--json", "bias", "a2", "--m", "1", "--M", "7", "--route", "chars"},
      {"--json", "main-term", "--m", "1", "--M", "7", "--n", "10"},
      {"--json", "residual", "--m", "1", "--M", "7", "--max-n", "20"},
      {"--json", "scan", "--X", "30"},
      {"--json", "trace-moment", "--k", "2", "--m", "1", "--M", "3", "--p", "7", "--r", "1"},
      {"--json", "empirical", "--m", "1", "--M", "3", "--X", "1000"},
      {"--json", "hurwitz-table", "--max", "40"},
      {"--json", "signs", "--m", "5", "--M", "12"},
      {"--json", "verify", "t-coeff"},
  };
  for (const auto& c : commands) {
    const auto r = run(c);
    REQUIRE(r.code == 0);
    check_round_trip(r.out);
  }
}

TEST_CASE("residual CSV") {
  const auto path = temp_path("residual.csv");
  const auto r = run({"residual", "--m", "1", "--M", "4", "--max-n", "3", "--out", path.string()});
  CHECK(r.code == 0);
  const auto lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,moment,lambda,main_term,residual");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "0");
  CHECK(read_file(path).find('\r') == std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("scan CSV") {
  const auto path = temp_path("scan.csv");
  auto r = run({"scan", "--X", "2", "--out", path.string()});
  CHECK(r.code == 0);
  auto lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "m,M,a1_num,a1_den,sign");
  CHECK(lines[1].rfind("1,1,", 0) == 0);
  CHECK(lines[2].rfind("1,2,", 0) == 0);
  CHECK(lines[3].rfind("2,2,", 0) == 0);
  r = run({"scan", "--X", "1", "--out", path.string()});
  lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "1,1,0,1,0");
  std::filesystem::remove(path);
}

TEST_CASE("scan summary at X = 1000") {
  const auto r = run({"--json", "--threads", "4", "scan", "--X", "1000"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["positive_fraction"].get<double>() - 0.44) <= 0.01);
  CHECK(std::abs(j["negative_fraction"].get<double>() - 0.56) <= 0.01);
}

TEST_CASE("unwritable output path") {
  const auto r = run({"scan", "--X", "2", "--out", "/nonexistent-dir/x.csv"});
  CHECK(r.code == 1);
  CHECK(r.err.find("/nonexistent-dir/x.csv") != std::string::npos);
}

TEST_CASE("verify output is deterministic across worker counts") {
  const auto a = run({"--json", "--threads", "1", "verify", "schoof"});
  const auto b = run({"--json", "--threads", "4", "verify", "schoof"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run({"verify", "eisenstein"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("PASS eisenstein", 0) == 0);
}

TEST_CASE("verify fails under a falsified reading") {
  const auto r = run({"--psi", "as-printed", "verify", "eisenstein"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("FAIL eisenstein", 0) == 0);
}
