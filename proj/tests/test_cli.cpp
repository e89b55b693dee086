#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include "json_wire.hpp"

// Spawns the installed binary and checks wire formats, exit codes, and
// determinism.

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const std::string out_file = "/tmp/ces_cli_test_out.txt";
  const std::string err_file = "/tmp/ces_cli_test_err.txt";
  const std::string cmd =
      std::string(CES_CLI_PATH) + " " + args + " > " + out_file + " 2> " + err_file;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> ls;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) ls.push_back(line);
  return ls;
}

int count_columns(const std::string& line) {
  return static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
}

} // namespace

TEST_CASE("spectrum: broken and unbroken closed forms") {
  const auto r = run_cli("spectrum --gamma 1 --epsilon 1 --phase broken --levels 3");
  CHECK(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "n,E_n");
  CHECK(ls[1] == "0,5.000000000000e+00");
  CHECK(ls[2] == "1,7.000000000000e+00");
  CHECK(ls[3] == "2,9.000000000000e+00");

  const auto u = run_cli("spectrum --phase unbroken --gamma 1 --epsilon 1 --levels 3");
  const auto ul = lines_of(u.out);
  CHECK(ul[1] == "0,0.000000000000e+00");
  CHECK(ul[2] == "1,2.000000000000e+00");
  CHECK(ul[3] == "2,4.000000000000e+00");
}

TEST_CASE("parameter guard: exit 2 and the constraint in the message") {
  const auto r = run_cli("spectrum --epsilon -5 --gamma 0 --phase broken");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("epsilon > -2*gamma - 2") != std::string::npos);
}

TEST_CASE("wavefunction: header, unit norm footer") {
  const auto r = run_cli(
      "wavefunction --gamma 1 --epsilon 1 --sector - --n 1 --points 2001");
  CHECK(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  CHECK(ls.front() == "x,psi");
  REQUIRE(ls.back().rfind("# norm = ", 0) == 0);
  const double norm = std::stod(ls.back().substr(9));
  CHECK(std::abs(norm - 1.0) < 1e-6);
  // eps = 1 reduction: psi-_0 equals the shifted-gamma oscillator state
  const auto a = run_cli(
      "wavefunction --gamma 1 --epsilon 1 --sector - --n 0 --points 801 "
      "--x-max 14");
  const auto b = run_cli(
      "wavefunction --gamma 2 --epsilon -1 --sector + --n 0 --points 801 "
      "--x-max 14");
  const auto la = lines_of(a.out);
  const auto lb = lines_of(b.out);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 1; i + 1 < la.size(); i += 50) {
    const double va = std::stod(la[i].substr(la[i].find(',') + 1));
    const double vb = std::stod(lb[i].substr(lb[i].find(',') + 1));
    CHECK(std::abs(va - vb) < 1e-5);
  }
}

TEST_CASE("wavefunction: level cap") {
  const auto r = run_cli("wavefunction --sector - --n 25");
  CHECK(r.exit_code == 2);
}

TEST_CASE("coherent: mu = 0 record") {
  const auto r = run_cli("coherent --gamma 1 --epsilon 1 --mu-re 0 --mu-im 0");
  CHECK(r.exit_code == 0);
  const auto j = wire::json::parse(r.out);
  CHECK(j["c0"].get<double>() == 1.0);
  CHECK(j["coeffs"][0][0].get<double>() == 1.0);
  for (std::size_t k = 1; k < j["coeffs"].size(); ++k) {
    CHECK(j["coeffs"][k][0].get<double>() == 0.0);
    CHECK(j["coeffs"][k][1].get<double>() == 0.0);
  }
  CHECK(j["residual"].get<double>() == 0.0);
  CHECK(j["uncertainty_equal"].get<bool>());
  CHECK(j["uncertainty_lhs"].get<double>() == doctest::Approx(7656.25));
  CHECK(j["F"].get<double>() == doctest::Approx(350.0));
}

TEST_CASE("coherent: c0 consistent with the lhs/rhs equality at mu != 0") {
  const auto r = run_cli("coherent --gamma 1 --epsilon 1 --mu-re 3 --mu-im 4");
  CHECK(r.exit_code == 0);
  const auto j = wire::json::parse(r.out);
  const double lhs = j["uncertainty_lhs"].get<double>();
  const double rhs = j["uncertainty_rhs"].get<double>();
  CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
  CHECK(j["residual"].get<double>() < 1e-10);
  CHECK(j["truncation_tail"].get<double>() < 1e-12);
}

TEST_CASE("JSON round-trip is byte-identical") {
  for (const char* args :
       {"coherent --gamma 1 --epsilon 1 --mu-re 2 --mu-im -1",
        "spectrum --levels 5 --format json",
        "verify --suite algebra --format json"}) {
    const auto r = run_cli(args);
    const auto parsed = wire::json::parse(r.out);
    const std::string re_rendered = wire::render_json(parsed);
    CHECK(re_rendered == r.out);
  }
}

TEST_CASE("density: column count, positivity, normalisation footer") {
  const auto r = run_cli(
      "density --gamma 1 --epsilon 1 --x-max 20 --samples 24 "
      "--sweep epsilon=0,1,4");
  CHECK(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  CHECK(count_columns(ls[0]) == 1 + 2 * 3);
  int footers = 0;
  for (const auto& line : ls) {
    if (line.rfind("# sigma_integral", 0) == 0) {
      ++footers;
      const double v = std::stod(line.substr(line.rfind('=') + 1));
      CHECK(std::abs(v - 1.0) < 1e-6);
    }
  }
  CHECK(footers == 3);
  // data rows: all radial_f columns nonnegative
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i].empty() || ls[i][0] == '#') continue;
    std::stringstream ss(ls[i]);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= 1 && (col % 2 == 0)) { // radial_f columns
        CHECK(std::stod(cell) >= 0.0);
      }
      ++col;
    }
  }
}

TEST_CASE("density: gamma sweep works the same way") {
  const auto r = run_cli(
      "density --epsilon 1 --x-max 10 --samples 8 --sweep gamma=0,1,2");
  CHECK(r.exit_code == 0);
  CHECK(count_columns(lines_of(r.out)[0]) == 7);
}

TEST_CASE("verify: suites and exit codes") {
  CHECK(run_cli("verify --suite algebra").exit_code == 0);
  CHECK(run_cli("verify --suite uncertainty").exit_code == 0);
  CHECK(run_cli("verify --suite nosuch").exit_code == 2);
  CHECK(run_cli("nosuchcommand").exit_code == 2);
}

TEST_CASE("determinism: identical bytes across runs") {
  for (const char* args :
       {"spectrum --levels 6", "coherent --mu-re 1.5 --mu-im 0.5",
        "density --x-max 12 --samples 12"}) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("--out writes the payload to a file") {
  const std::string path = "/tmp/ces_cli_out_file.csv";
  std::remove(path.c_str());
  const auto r = run_cli("spectrum --levels 2 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "n,E_n");
}
