#include "doctest.h"

#include "cli_args.hpp"
#include "cli_run.hpp"

#include "json.hpp"

#include <cstdlib>
#include <sstream>

using namespace nwidth::cli;

namespace {

ParseOutcome parse(std::vector<const char*> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "nwidth");
  std::ostringstream out, err;
  auto result = parse_args(static_cast<int>(args.size()), args.data(), out, err);
  if (err_text) *err_text = err.str();
  return result;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("compute defaults") {
  const auto p = parse({"compute", "--r", "2", "--n", "2..8"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::Compute);
  CHECK(p.config->r == 2);
  CHECK(p.config->n == IndexRange{2, 8});
  CHECK(p.config->m == 2047);
  CHECK(p.config->a == 0.0);
  CHECK(p.config->b == 1.0);
  CHECK(p.config->tol == 1e-10);
  CHECK(p.config->format == Format::Csv);
}

TEST_CASE("knots setup") {
  const auto p = parse({"knots", "--r", "3", "--k", "4", "--m", "500", "--interval", "-1,1"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::Knots);
  CHECK(p.config->k == IndexRange{4, 4});
  CHECK(p.config->m == 500);
  CHECK(p.config->a == -1.0);
  CHECK(p.config->b == 1.0);
  CHECK(p.config->precision == NWIDTH_PRECISION_AUTO);
}

TEST_CASE("validation failures exit with 1 and one line") {
  std::string err;
  auto p = parse({"compute", "--r", "0", "--n", "1"}, &err);
  CHECK_FALSE(p.config);
  CHECK(p.exit_code == 1);
  CHECK(err.find("r >= 1") != std::string::npos);
  CHECK(lines(err).size() == 1);

  p = parse({"compute", "--r", "3", "--n", "2"}, &err);
  CHECK(p.exit_code == 1);
  CHECK(err.find("n >= r") != std::string::npos);
  p = parse({"compute", "--r", "x", "--n", "2"}, &err);
  CHECK(p.exit_code == 1);
  p = parse({"compute", "--r", "2", "--n", "2", "--frobnicate"}, &err);
  CHECK(p.exit_code == 1);
  p = parse({"compute", "--r", "2", "--n", "2", "--interval", "1,0"}, &err);
  CHECK(p.exit_code == 1);
  p = parse({"compute", "--r", "2", "--n", "2", "--format", "xml"}, &err);
  CHECK(p.exit_code == 1);
  p = parse({"eigenfunctions", "--r", "2", "--k", "1..3"}, &err);
  CHECK(p.exit_code == 1);
  p = parse({"convergence", "--r", "2", "--n", "2", "--analytic-reference"}, &err);
  CHECK(p.exit_code == 1);
  p = parse({}, &err);
  CHECK(p.exit_code == 1);
}

TEST_CASE("help exits cleanly") {
  const auto p = parse({"--help"});
  CHECK_FALSE(p.config);
  CHECK(p.exit_code == 0);
}

TEST_CASE("mesh-size syntax") {
  CHECK(parse_mesh_size("2^-11") == 0x1p-11);
  CHECK(parse_mesh_size("0.25") == 0.25);
  CHECK(parse_h_list("2^-4..2^-8") ==
        std::vector<double>{0x1p-4, 0x1p-5, 0x1p-6, 0x1p-7, 0x1p-8});
  CHECK(parse_h_list("0.5,2^-2") == std::vector<double>{0.5, 0.25});
  CHECK_THROWS_AS(parse_h_list("0.5..0.25"), UsageError);
  CHECK_THROWS_AS(parse_range("5..2"), UsageError);
  CHECK_THROWS_AS(parse_interval("0;1"), UsageError);
  const auto p = parse({"convergence", "--r", "4", "--n", "4..10"});
  REQUIRE(p.config);
  CHECK(p.config->h_list.size() == 5);
  CHECK(p.config->h_ref == 0x1p-11);
  CHECK(p.config->precision == NWIDTH_PRECISION_DOUBLE);
  const auto q = parse({"knots", "--r", "2", "--k", "3", "--precision", "quad"});
  REQUIRE(q.config);
  CHECK(q.config->precision == NWIDTH_PRECISION_QUAD);
  CHECK_FALSE(parse({"knots", "--r", "2", "--k", "3", "--precision", "half"}).config);
}

TEST_CASE("thread count from the environment") {
  setenv("NWIDTH_THREADS", "3", 1);
  auto p = parse({"compute", "--r", "1", "--n", "1"});
  REQUIRE(p.config);
  CHECK(p.config->threads == 3);
  p = parse({"compute", "--r", "1", "--n", "1", "--threads", "2"});
  CHECK(p.config->threads == 2);
  unsetenv("NWIDTH_THREADS");
}

TEST_CASE("csv and json carry identical values") {
  auto p = parse({"compute", "--r", "2", "--n", "2..5", "--m", "127"});
  REQUIRE(p.config);
  std::ostringstream csv, json, err;
  CHECK(run(*p.config, csv, err) == 0);
  p.config->format = Format::Json;
  CHECK(run(*p.config, json, err) == 0);
  const auto rows = lines(csv.str());
  const auto parsed = nlohmann::json::parse(json.str());
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "r,n,m,d_n,dn_inv_r,lower,upper,conjecture,rel_err,flag");
  for (std::size_t i = 0; i < 4; ++i) {
    std::istringstream in(rows[i + 1]);
    std::vector<std::string> cells;
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    const auto& obj = parsed[i];
    CHECK(std::stod(cells[3]) == obj["d_n"].get<double>());
    CHECK(std::stod(cells[4]) == obj["dn_inv_r"].get<double>());
    CHECK(std::stod(cells[8]) == obj["rel_err"].get<double>());
    CHECK(cells[9] == obj["flag"].get<std::string>());
  }
}

TEST_CASE("exit codes follow the failure class") {
  // An unreachable residual tolerance fails inside the eigensolver.
  auto p = parse({"compute", "--r", "1", "--n", "1..2", "--m", "31", "--tol", "1e-30"});
  REQUIRE(p.config);
  std::ostringstream out, err;
  CHECK(run(*p.config, out, err) == 2);
  CHECK(err.str().find("residual") != std::string::npos);
  // More ranks than nodes is a validation error.
  p = parse({"knots", "--r", "1", "--k", "5", "--m", "3"});
  REQUIRE(p.config);
  CHECK(run(*p.config, out, err) == 1);
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
  CHECK(format_number(std::nan("")) == "nan");
}

}
