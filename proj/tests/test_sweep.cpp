#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "robin/interval.hpp"
#include "robin/sweep.hpp"

using namespace robin;
namespace fs = std::filesystem;

namespace {

const std::string cli_path = ROBIN_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output_file;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "robin_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const std::string& out_file) {
  const std::string cmd = cli_path + " " + args + " --out " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

int run_cli_raw(const std::string& args) {
  const std::string cmd = cli_path + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(cli::parse_grid("5") == std::vector<double>{5.0});
  CHECK(cli::parse_grid("1,2,3") == std::vector<double>{1.0, 2.0, 3.0});
  const auto lin = cli::parse_grid("0.2:0.2:1");
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.2);
  CHECK(lin.back() == 1.0);
  const auto lg = cli::parse_grid("1:100:3log");
  REQUIRE(lg.size() == 3);
  CHECK(lg[0] == 1.0);
  CHECK(lg[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(lg[2] == 100.0);
  CHECK(cli::parse_index_grid("1,2,3") == std::vector<long>{1, 2, 3});
  CHECK_THROWS_AS(cli::parse_grid(""), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_grid("a,b"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_grid("1:0:5"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_index_grid("1.5"), std::invalid_argument);

  const auto bcs = cli::parse_bc_grid("0.5,D,N,2");
  REQUIRE(bcs.size() == 4);
  CHECK(bcs[0].is_robin());
  CHECK(bcs[1].is_dirichlet());
  CHECK(bcs[2].is_neumann());
  CHECK(bcs[3].beta() == 2.0);
}

TEST_CASE("shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789, 9.869604401089358}) {
    const std::string s = cli::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(2.0) == "2");
}

TEST_CASE("csv and json rendering") {
  cli::Table t;
  t.manifest_entry("subcommand", "demo");
  t.comments.push_back("note line");
  t.columns = {"a", "b", "status"};
  t.rows.push_back({"1", "2", "ok"});
  std::ostringstream csv;
  cli::write_csv(t, csv);
  CHECK(csv.str().find("# subcommand: demo") != std::string::npos);
  CHECK(csv.str().find("# note line") != std::string::npos);
  CHECK(csv.str().find("a,b,status\n1,2,ok\n") != std::string::npos);

  std::ostringstream json;
  cli::write_json(t, json);
  const auto j = nlohmann::json::parse(json.str());
  CHECK(j["manifest"]["subcommand"] == "demo");
  CHECK(j["columns"].size() == 3);
  CHECK(j["rows"][0][1] == "2");
}

TEST_CASE("cli: reproducibility and parallelism invariance") {
  const fs::path dir = scratch_dir();
  const std::string a = (dir / "rep_a.csv").string();
  const std::string b = (dir / "rep_b.csv").string();
  const std::string c = (dir / "rep_c.csv").string();
  const std::string spec = "deficit --gamma 1 --beta 0.7,D --lambda-log 1:3:40";
  REQUIRE(run_cli(spec + " --jobs 1", a) == 0);
  REQUIRE(run_cli(spec + " --jobs 1", b) == 0);
  REQUIRE(run_cli(spec + " --jobs 2", c) == 0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));  // identical spec -> byte-identical output
  CHECK(bytes == slurp(c));  // values independent of the worker count
  CHECK(bytes.find("status") != std::string::npos);
}

TEST_CASE("cli: json mirrors csv") {
  const fs::path dir = scratch_dir();
  const std::string csv_file = (dir / "mirror.csv").string();
  const std::string json_file = (dir / "mirror.json").string();
  REQUIRE(run_cli("eig --k 1,2 --beta 1,D", csv_file) == 0);
  REQUIRE(run_cli("eig --k 1,2 --beta 1,D --format json", json_file) == 0);
  const auto j = nlohmann::json::parse(slurp(json_file));
  CHECK(j["columns"].size() == 7);
  CHECK(j["rows"].size() == 4);
  // Same lambda cell in both renderings.
  const std::string csv = slurp(csv_file);
  const std::string lam = j["rows"][0][4].get<std::string>();
  CHECK(csv.find(lam) != std::string::npos);
}

TEST_CASE("cli: betaw reproduces the closed-form row") {
  const fs::path dir = scratch_dir();
  const std::string out = (dir / "betaw.csv").string();
  REQUIRE(run_cli("betaw --gamma 0,0.5 --d 0", out) == 0);
  const std::string csv = slurp(out);
  std::istringstream is(csv);
  std::string line;
  double got0 = 0.0, got12 = 0.0;
  while (std::getline(is, line)) {
    if (line.rfind("0,0,", 0) == 0) got0 = std::stod(line.substr(4));
    if (line.rfind("0.5,0,", 0) == 0) got12 = std::stod(line.substr(6));
  }
  CHECK(std::abs(got0 - 1.0) <= 1e-9);
  CHECK(std::abs(got12 - 0.75) <= 1e-9);
}

TEST_CASE("cli: errored cells are recorded, exit code 2") {
  const fs::path dir = scratch_dir();
  const std::string out = (dir / "partial.csv").string();
  // Two lambda cells: one fine, one over the lattice cap.
  const int rc = run_cli(
      "riesz --gamma 1 --beta 1 --sides 1,1 --lambda 100,1e12 --tol-term-cap 1e6", out);
  CHECK(rc == 2);
  const std::string csv = slurp(out);
  CHECK(csv.find("error: ") != std::string::npos);
  CHECK(csv.find("term cap") != std::string::npos);
  CHECK(csv.find(",ok") != std::string::npos);  // the healthy cell survived
}

TEST_CASE("cli: usage errors exit with 1") {
  CHECK(run_cli_raw("betaw --gamma bogus") == 1);
  CHECK(run_cli_raw("nosuchcommand") == 1);
  CHECK(run_cli_raw("deficit --gamma 1 --beta 1") == 1);  // no lambda grid given
  CHECK(run_cli_raw("riesz --gamma 1 --beta 1 --lambda 10 --format yaml") == 1);
}

TEST_CASE("cli: config file supplies defaults, flags override") {
  const fs::path dir = scratch_dir();
  const std::string cfg = (dir / "sweep.ini").string();
  {
    std::ofstream os(cfg);
    os << "[eig]\n"
          "k = \"1,2\"\n"
          "beta = \"1\"\n";
  }
  const std::string out1 = (dir / "cfg1.csv").string();
  REQUIRE(run_cli("eig --config " + cfg, out1) == 0);
  const std::string csv1 = slurp(out1);
  CHECK(csv1.find("\n1,robin,1,") != std::string::npos);
  CHECK(csv1.find("\n2,robin,1,") != std::string::npos);

  // A flag beats the file.
  const std::string out2 = (dir / "cfg2.csv").string();
  REQUIRE(run_cli("eig --config " + cfg + " --k 3", out2) == 0);
  const std::string csv2 = slurp(out2);
  CHECK(csv2.find("\n3,robin,1,") != std::string::npos);
  CHECK(csv2.find("\n1,robin,1,") == std::string::npos);

  // Unknown keys are rejected.
  const std::string bad = (dir / "bad.ini").string();
  {
    std::ofstream os(bad);
    os << "[eig]\nbogus_key = 7\n";
  }
  CHECK(run_cli_raw("eig --config " + bad) == 1);
}

TEST_CASE("cli: trajectory emits a verdict") {
  const fs::path dir = scratch_dir();
  const std::string out = (dir / "traj.csv").string();
  REQUIRE(run_cli("trajectory --gamma 1 --d 2 --beta 0.27 --lambda 100,1000 --jobs 2", out) ==
          0);
  const std::string csv = slurp(out);
  CHECK(csv.find("# verdict: ") != std::string::npos);
  CHECK(csv.find("collapses") != std::string::npos);
}

TEST_CASE("cli: figures fig3 carries period statistics") {
  const fs::path dir = scratch_dir() / "figs3";
  const int rc = run_cli_raw("figures fig3 --jobs 2 --out-dir " + dir.string());
  CHECK(rc == 0);
  const std::string csv = slurp((dir / "fig3.csv").string());
  CHECK(csv.find("gamma,beta_label,beta,lambda,sqrt_lambda,oscillation,status") !=
        std::string::npos);
  CHECK(fs::exists(dir / "fig3_description.txt"));
  // Every (gamma, beta) combination oscillates with period close to pi in
  // sqrt(lambda), at gamma = 10 as much as at gamma = 1.
  std::istringstream is(csv);
  std::string line;
  int period_lines = 0;
  while (std::getline(is, line)) {
    const auto pos = line.find("period_sqrt_lambda=");
    if (pos == std::string::npos) continue;
    const double period = std::stod(line.substr(pos + 19));
    CHECK(std::abs(period / pi - 1.0) <= 0.10);
    ++period_lines;
  }
  CHECK(period_lines == 4);
}

TEST_CASE("cli: figures fig1 on a coarse grid") {
  const fs::path dir = scratch_dir() / "figs";
  const int rc = run_cli_raw("figures fig1 --gamma 1,10 --jobs 2 --out-dir " + dir.string());
  CHECK(rc == 0);
  const std::string csv = slurp((dir / "fig1.csv").string());
  CHECK(csv.find("gamma,beta_w,beta_k1,beta_k2,beta_k3,status") != std::string::npos);
  CHECK(fs::exists(dir / "fig1_description.txt"));
  // gamma = 1: first band dominates; gamma = 10: second band dominates.
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    if (line.rfind("1,", 0) == 0 || line.rfind("10,", 0) == 0) {
      while (std::getline(row, cell, ',') && vals.size() < 5)
        vals.push_back(cell == "ok" ? 0.0 : std::stod(cell));
    }
    if (line.rfind("1,", 0) == 0) {
      CHECK(vals[2] > vals[3]);  // beta_k1 > beta_k2 at gamma = 1
      CHECK(vals[1] < vals[2]);  // beta_w below the critical envelope
    } else if (line.rfind("10,", 0) == 0) {
      CHECK(vals[3] > vals[2]);  // order swaps by gamma = 10
    }
  }
}

TEST_CASE("cli: figures fig2 witnesses deficit failures at beta_w") {
  const fs::path dir = scratch_dir() / "figs2";
  const int rc = run_cli_raw("figures fig2 --jobs 2 --out-dir " + dir.string());
  CHECK(rc == 0);
  const std::string csv = slurp((dir / "fig2.csv").string());
  std::istringstream is(csv);
  std::string line;
  bool beta_w_negative = false, larger_negative = false;
  while (std::getline(is, line)) {
    if (line.rfind("1,beta_w,", 0) == 0 && line.find(",-") != std::string::npos)
      beta_w_negative = true;
    if (line.rfind("1,larger,", 0) == 0 && line.find(",-") != std::string::npos)
      larger_negative = true;
  }
  CHECK(beta_w_negative);        // below the critical parameter the bound fails
  CHECK_FALSE(larger_negative);  // safely above it the deficit stays positive
}
