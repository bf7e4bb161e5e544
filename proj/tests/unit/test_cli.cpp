#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "robin/cli.hpp"
#include "robin/coeffs.hpp"
#include "robin/halfline.hpp"

constexpr double pi = oracle::kPi;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = robin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double num(std::size_t row, const std::string& col) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == col) return std::strtod(rows.at(row).at(i).c_str(), nullptr);
    FAIL("missing column " << col);
    return 0.0;
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

Csv parse(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    REQUIRE(!line.empty());
    REQUIRE(line.back() == '\r');
    line.pop_back();
    if (line.rfind("# ", 0) == 0) {
      csv.comments.push_back(line.substr(2));
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

}  // namespace

TEST_CASE("coeff table") {
  const auto r = run({"coeff", "--d", "2", "--b", "0"});
  REQUIRE(r.code == 0);
  const auto csv = parse(r.out);
  CHECK(csv.header == std::vector<std::string>{"d", "b", "l1_d", "l1_dm1", "c_d", "l2", "abs_err"});
  CHECK(csv.num(0, "l2") == doctest::Approx(1.0 / (6.0 * pi)).epsilon(1e-15));
  CHECK(csv.comments.at(0).find("robin_semiclassics") == 0);
}

TEST_CASE("coeff at b = -1 matches the kernel-integral identity") {
  const auto csv = parse(run({"coeff", "--d", "2", "--b", "-1"}).out);
  const robin::Dimension d(2);
  const double via_kernel = robin::c_d(d) * (robin::halfline::i_b_integral(d, -1.0).value + pi * std::pow(2.0, 1.5));
  CHECK(std::abs(csv.num(0, "l2") - via_kernel) <= 1e-6);
}

TEST_CASE("empty grid is a usage error") {
  CHECK(run({"coeff", "--d", "2"}).code == 2);
  CHECK(run({"coeff", "--b", ""}).code == 2);
  CHECK(run({"coeff", "--d", "9", "--b", "1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("spectrum subcommand") {
  const auto neumann = parse(run({"spectrum", "--L", "1", "--cl", "0", "--cr", "0", "--Lambda", "100"}).out);
  REQUIRE(neumann.rows.size() == 4);
  for (int n = 0; n < 4; ++n) CHECK(neumann.num(n, "lambda") == doctest::Approx(n * n * pi * pi).epsilon(1e-12));
  CHECK(neumann.header == std::vector<std::string>{"n", "lambda", "bracket_lo", "bracket_hi"});

  const auto bound = parse(run({"spectrum", "--cl", "-3", "--cr", "-3"}).out);
  int negatives = 0;
  for (std::size_t i = 0; i < bound.rows.size(); ++i) negatives += bound.num(i, "lambda") < 0;
  CHECK(negatives == 2);
  bool has_certificate = false;
  for (const auto& c : bound.comments) has_certificate |= c.rfind("certificate = ", 0) == 0;
  CHECK(has_certificate);
}

TEST_CASE("model subcommand") {
  const auto r = run({"model", "--b", "-1", "--t", "0"});
  REQUIRE(r.code == 0);
  const auto csv = parse(r.out);
  CHECK(csv.header == std::vector<std::string>{"t", "psi", "psi_bound", "i_b"});
  CHECK(csv.num(0, "psi_bound") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("JSON output") {
  const auto r = run({"model", "--b", "0.5", "--t", "0,1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1]["t"].get<double>() == 1.0);
  CHECK(j["config"]["b"].get<std::string>() == "0.5");
  CHECK(run({"model", "--format", "xml"}).code == 2);
}

TEST_CASE("sweep rejects gamma >= 1") {
  const auto r = run({"sweep", "--regime", "large", "--gamma", "1.0", "--b0", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("gamma") != std::string::npos);
}

TEST_CASE("Neumann rectangle sweep: four rows and a decaying fit") {
  const auto r = run({"sweep"});
  REQUIRE(r.code == 0);
  const auto csv = parse(r.out);
  CHECK(csv.rows.size() == 4);
  CHECK(csv.header.size() == 9);
  const std::string fit_line = csv.comments.back();
  REQUIRE(fit_line.rfind("fit = ", 0) == 0);
  const auto fit = nlohmann::json::parse(fit_line.substr(6));
  CHECK(fit["fitted_exponent"].get<double>() > 0.3);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) CHECK(csv.rows[i][7] == "true");
}

TEST_CASE("large regime boundary column grows like h^{-1-3 gamma}") {
  const auto csv = parse(run({"sweep", "--regime", "large", "--gamma", "0.5", "--b0", "-1"}).out);
  REQUIRE(csv.rows.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) {
    const double q = csv.num(i, "boundary") / csv.num(i - 1, "boundary");
    CHECK(q == doctest::Approx(std::pow(2.0, 2.5)).epsilon(0.1));
  }
}

TEST_CASE("config file, overrides and unknown keys") {
  {
    std::ofstream cfg("cli_test.cfg");
    cfg << "# comment\nd = 2\nb = 1,2\nformat = json\n";
  }
  auto r = run({"coeff", "--config", "cli_test.cfg"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 2);
  r = run({"coeff", "--config", "cli_test.cfg", "--b", "3"});
  j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["b"].get<double>() == 3.0);
  {
    std::ofstream cfg("cli_bad.cfg");
    cfg << "bogus = 1\n";
  }
  CHECK(run({"coeff", "--config", "cli_bad.cfg", "--b", "1"}).code == 2);
  CHECK(run({"coeff", "--config", "does_not_exist.cfg", "--b", "1"}).code == 2);
}

TEST_CASE("output file and unwritable path") {
  REQUIRE(run({"coeff", "--b", "0,1", "--output", "cli_out.csv"}).code == 0);
  std::ifstream in("cli_out.csv", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(parse(ss.str()).rows.size() == 2);
  const auto bad = run({"coeff", "--b", "0", "--output", "/nonexistent_dir/x.csv"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("/nonexistent_dir/x.csv") != std::string::npos);
}

TEST_CASE("identical configuration gives identical bytes") {
  const std::vector<std::string> args{"sweep", "--b0", "1", "--h", "0.04,0.03,0.02,0.015"};
  const auto a = run(args);
  ::setenv("ROBIN_SEMICLASSICS_THREADS", "3", 1);
  const auto b = run(args);
  ::unsetenv("ROBIN_SEMICLASSICS_THREADS");
  CHECK(a.out == b.out);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}
