#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmacfb/cutset.hpp"
#include "gmacfb/sweep.hpp"

using namespace gmacfb;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GMACFB_CLI_BIN) + " " + args +
                          " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::vector<double>> parse_csv_numbers(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);  // header
  while (std::getline(ss, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep grid construction") {
  const auto g1 = sweep_grid(-1.0, 1.0, 0.1);
  CHECK(g1.size() == 21);
  CHECK(g1.front() == -1.0);
  CHECK(g1.back() == doctest::Approx(1.0).epsilon(1e-12));

  const auto g2 = sweep_grid(0.0, 0.2, 0.02);
  CHECK(g2.size() == 11);

  CHECK(sweep_grid(0.5, 0.5, 0.1).size() == 1);
  CHECK_THROWS_AS(sweep_grid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sweep_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("17 significant digits round trip") {
  for (double v : {0.1, 1.0 / 3.0, 0.549306144334055, -2.25e-13, 26.6}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("two-user sweep emits the cut curves verbatim") {
  SweepSpec spec;
  spec.quantity = SweepQuantity::two_user_cuts;
  spec.start = -1.0;
  spec.stop = 1.0;
  spec.step = 0.1;
  spec.power = 1.0;
  const std::string csv = run_sweep_csv(spec);

  CHECK(csv.rfind("rho,f1,f2\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
  CHECK(csv.back() == '\n');

  const auto rows = parse_csv_numbers(csv);
  REQUIRE(rows.size() == 21);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 3);
    const TwoUserCuts c = two_user_cuts(1.0, row[0]);
    CHECK(row[1] == c.f1);  // full-precision round trip
    CHECK(row[2] == c.f2);
  }

  // byte-identical on repeated invocation
  CHECK(run_sweep_csv(spec) == csv);
}

TEST_CASE("three-user sweep matches the reference values") {
  SweepSpec spec;
  spec.quantity = SweepQuantity::three_user_cuts;
  spec.start = 0.0;
  spec.stop = 0.2;
  spec.step = 0.02;
  spec.power = 0.3;
  const auto rows = parse_csv_numbers(run_sweep_csv(spec));
  REQUIRE(rows.size() == 11);
  CHECK(rows[0][1] == doctest::Approx(0.320926943086197).epsilon(1e-13));
  CHECK(rows[5][2] == doctest::Approx(0.37467182361546).epsilon(1e-13));
  CHECK(rows[10][3] == doctest::Approx(0.370290116897289).epsilon(1e-13));
}

TEST_CASE("capacity sweep is monotone in the power") {
  SweepSpec spec;
  spec.quantity = SweepQuantity::capacity_vs_p;
  spec.start = 0.1;
  spec.stop = 10.0;
  spec.step = 0.3;
  spec.users = 3;
  const auto rows = parse_csv_numbers(run_sweep_csv(spec));
  REQUIRE(rows.size() >= 30);
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] > rows[i - 1][1]);
}

TEST_CASE("general_cut sweep requires consistent parameters") {
  SweepSpec spec;
  spec.quantity = SweepQuantity::general_cut;
  spec.start = 0.0;
  spec.stop = 0.2;
  spec.step = 0.1;
  spec.power = 0.3;
  spec.users = 3;
  spec.cut_size = 0;
  CHECK_THROWS_AS(run_sweep_csv(spec), std::invalid_argument);
  spec.cut_size = 2;
  const auto rows = parse_csv_numbers(run_sweep_csv(spec));
  CHECK(rows.size() == 3);
}

TEST_CASE("quantity and list parsing") {
  CHECK(parse_sweep_quantity("two_user_cuts") == SweepQuantity::two_user_cuts);
  CHECK(parse_sweep_quantity("capacity_vs_P") == SweepQuantity::capacity_vs_p);
  CHECK_THROWS_AS(parse_sweep_quantity("bogus"), std::invalid_argument);

  CHECK(parse_double_list("1,4,9") == std::vector<double>{1.0, 4.0, 9.0});
  CHECK(parse_double_list("0.5") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_double_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double_list("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double_list(""), std::invalid_argument);
}

TEST_CASE("partition parsing") {
  const Partition p = parse_partition("{1},{2,3}", 3);
  CHECK(p.size() == 2);
  CHECK(p.blocks()[0] == std::vector<int>{0});
  CHECK(p.blocks()[1] == std::vector<int>{1, 2});

  CHECK_THROWS_AS(parse_partition("{1},{2}", 3), std::invalid_argument);  // no cover
  CHECK_THROWS_AS(parse_partition("{1},{1,2}", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("{0},{1,2}", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("1,2", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("{1,{2}", 2), std::invalid_argument);
}

TEST_CASE("binary exit codes") {
  CHECK(run_cli("capacity --users 2 --power 1") == 0);
  CHECK(run_cli("capacity --users 3 --power 0") == 2);
  CHECK(run_cli("capacity --users 3 --power 1 --unit parsecs") == 2);
  CHECK(run_cli("verify --suite nonsense") == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("verify --suite bernoulli --trials 10 --seed 1") == 0);
  CHECK(run_cli("depbal --powers 1,1 --rho 2.0") == 2);
  // a correlation vector that fails the PSD validation
  CHECK(run_cli("depbal --powers 1,1,1 --rho 0.9,0.9,-0.9") == 2);
  CHECK(run_cli("depbal --powers 1") == 2);
}

TEST_CASE("binary sweep runs are byte-identical") {
  const std::string a = "/tmp/gmacfb_sweep_a.csv";
  const std::string b = "/tmp/gmacfb_sweep_b.csv";
  const std::string args =
      "sweep --quantity two_user_cuts --power 1 --start -1 --stop 1 --step 0.1";
  REQUIRE(run_cli(args + " --out " + a) == 0);
  REQUIRE(run_cli(args + " --out " + b) == 0);
  const std::string csv_a = slurp(a);
  CHECK(!csv_a.empty());
  CHECK(csv_a == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("binary report output is byte-identical") {
  const std::string a = "/tmp/gmacfb_report_a.txt";
  const std::string b = "/tmp/gmacfb_report_b.txt";
  int status = std::system((std::string(GMACFB_CLI_BIN) +
                            " depbal --powers 1,1 --seed 9 > " + a)
                               .c_str());
  REQUIRE(WEXITSTATUS(status) == 0);
  status = std::system((std::string(GMACFB_CLI_BIN) +
                        " depbal --powers 1,1 --seed 9 > " + b)
                           .c_str());
  REQUIRE(WEXITSTATUS(status) == 0);
  const std::string report = slurp(a);
  CHECK(!report.empty());
  CHECK(report == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());

  status = std::system((std::string(GMACFB_CLI_BIN) +
                        " verify --suite amgm --trials 50 --seed 3 > " + a)
                           .c_str());
  REQUIRE(WEXITSTATUS(status) == 0);
  status = std::system((std::string(GMACFB_CLI_BIN) +
                        " verify --suite amgm --trials 50 --seed 3 > " + b)
                           .c_str());
  REQUIRE(WEXITSTATUS(status) == 0);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}
