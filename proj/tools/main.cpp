#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "gmacfb/capacity.hpp"
#include "gmacfb/checks.hpp"
#include "gmacfb/cutset.hpp"
#include "gmacfb/depbal.hpp"
#include "gmacfb/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

gmacfb::Unit parse_unit(const std::string& name) {
  if (name == "nats") return gmacfb::Unit::nats;
  if (name == "bits") return gmacfb::Unit::bits;
  throw CLI::ValidationError("--unit", "unit must be 'nats' or 'bits'");
}

std::string fmt(double v) { return gmacfb::format_double(v); }

int run_capacity(int users, double power, const std::string& unit_name,
                 double tol) {
  const gmacfb::Unit unit = parse_unit(unit_name);
  const gmacfb::CapacitySolution sol = gmacfb::solve_beta(users, power, tol);
  const gmacfb::RateValue capacity = gmacfb::convert_rate(sol.capacity, unit);
  std::printf("users       = %d\n", users);
  std::printf("power       = %s\n", fmt(power).c_str());
  std::printf("beta_star   = %s\n", fmt(sol.beta_star).c_str());
  std::printf("capacity    = %s %s\n", fmt(capacity.value).c_str(),
              gmacfb::unit_name(unit).c_str());
  std::printf("lambda_star = %s\n", fmt(sol.lambda_star).c_str());
  std::printf("residual    = %s\n", fmt(sol.residual).c_str());
  std::printf("iterations  = %d\n", sol.iterations);
  return kExitOk;
}

int run_sweep(const gmacfb::SweepSpec& spec, const std::string& out_path) {
  const std::string csv = gmacfb::run_sweep_csv(spec);
  if (out_path.empty()) {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  }
  return kExitOk;
}

int run_depbal(const std::string& powers_text, const std::string& partition_text,
               const std::string& rho_text, const std::string& unit_name,
               std::uint64_t seed) {
  const gmacfb::Unit unit = parse_unit(unit_name);
  const std::vector<double> powers = gmacfb::parse_double_list(powers_text);
  const int users = static_cast<int>(powers.size());
  if (users < 2)
    throw std::invalid_argument("depbal: need at least two powers");
  const gmacfb::Partition partition =
      partition_text.empty() ? gmacfb::Partition::singletons(users)
                             : gmacfb::parse_partition(partition_text, users);

  if (!rho_text.empty()) {
    const std::vector<double> rho = gmacfb::parse_double_list(rho_text);
    const gmacfb::CovarianceMatrix k = gmacfb::build_covariance(powers, rho);
    const auto feas = gmacfb::depbal_feasible(k, partition);
    const gmacfb::RateValue info =
        gmacfb::convert_rate(gmacfb::mutual_info_all(k), unit);
    std::printf("rho point:\n");
    std::printf("  feasible      = %s\n", feas.feasible ? "true" : "false");
    std::printf("  slack         = %s nats\n", fmt(feas.slack).c_str());
    std::printf("  mutual_info   = %s %s\n", fmt(info.value).c_str(),
                gmacfb::unit_name(unit).c_str());
  }

  gmacfb::DualBoundOptions options;
  options.seed = seed;
  options.unit = unit;
  const gmacfb::DualBoundResult result =
      gmacfb::dual_bound(powers, partition, options);
  std::printf("dual bound:\n");
  std::printf("  bound         = %s %s\n", fmt(result.bound.value).c_str(),
              gmacfb::unit_name(unit).c_str());
  std::printf("  lambda_opt    = %s\n", fmt(result.lambda_opt).c_str());
  std::printf("  inner_value   = %s\n", fmt(result.inner_value).c_str());
  std::printf("  K_opt:\n");
  for (int j = 0; j < result.k_opt.dim(); ++j) {
    std::printf("    ");
    for (int l = 0; l < result.k_opt.dim(); ++l)
      std::printf("%s%s", fmt(result.k_opt(j, l)).c_str(),
                  l + 1 == result.k_opt.dim() ? "" : " ");
    std::printf("\n");
  }
  if (result.concavity_warning)
    std::printf("  warning       = dual samples were not unimodal; the inner "
                "minimization may have missed the global minimum\n");
  return kExitOk;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed) {
  const auto reports = gmacfb::run_suite(suite, trials, seed);
  bool ok = true;
  for (const auto& report : reports) {
    std::printf("%s\n", gmacfb::format_report(report).c_str());
    ok = ok && report.failures == 0;
  }
  std::printf("%s\n", ok ? "all checks passed" : "CHECK FAILURES PRESENT");
  return ok ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-rate capacity and upper bounds for Gaussian multiple-access "
               "channels with feedback"};
  app.require_subcommand(1);

  // capacity
  auto* cap = app.add_subcommand("capacity", "Symmetric sum-rate capacity");
  int cap_users = 0;
  double cap_power = 0.0, cap_tol = 1e-12;
  std::string cap_unit = "nats";
  cap->add_option("--users", cap_users, "number of users J >= 2")->required();
  cap->add_option("--power", cap_power, "per-user power limit P > 0")->required();
  cap->add_option("--unit", cap_unit, "output unit: nats|bits");
  cap->add_option("--tol", cap_tol, "root-solver tolerance");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep a curve family to CSV");
  std::string sweep_quantity, sweep_out, sweep_unit = "nats";
  double sweep_start = 0.0, sweep_stop = 0.0, sweep_step = 0.0, sweep_power = 0.0;
  int sweep_users = 0, sweep_cut = 0;
  sweep->add_option("--quantity", sweep_quantity,
                    "two_user_cuts|three_user_cuts|general_cut|capacity_vs_P")
      ->required();
  sweep->add_option("--start", sweep_start, "range start")->required();
  sweep->add_option("--stop", sweep_stop, "range stop (inclusive)")->required();
  sweep->add_option("--step", sweep_step, "range step > 0")->required();
  sweep->add_option("--power", sweep_power, "P for the cut quantities");
  sweep->add_option("--users", sweep_users, "J for general_cut/capacity_vs_P");
  sweep->add_option("--cut-size", sweep_cut, "cut size k for general_cut");
  sweep->add_option("--unit", sweep_unit, "output unit: nats|bits");
  sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");

  // depbal
  auto* depbal = app.add_subcommand(
      "depbal", "Dependence-balance dual bound (and optional point check)");
  std::string db_powers, db_partition, db_rho, db_unit = "nats";
  std::uint64_t db_seed = 42;
  depbal->add_option("--powers", db_powers, "comma-separated power limits")
      ->required();
  depbal->add_option("--partition", db_partition,
                     "blocks of 1-based users, e.g. \"{1},{2,3}\" "
                     "(default: singletons)");
  depbal->add_option("--rho", db_rho,
                     "correlations rho_12,rho_13,...,rho_23,... to check for "
                     "feasibility");
  depbal->add_option("--unit", db_unit, "output unit: nats|bits");
  depbal->add_option("--seed", db_seed, "seed for the inner search")
      ->envname("GMACFB_SEED");

  // verify
  auto* verify = app.add_subcommand("verify", "Run numeric verification suites");
  std::string verify_suite = "all";
  int verify_trials = 1000;
  std::uint64_t verify_seed = 42;
  verify
      ->add_option("--suite", verify_suite,
                   "all|bernoulli|convexity|amgm|oppenheim|factorization|"
                   "lambda_star")
      ->check(CLI::IsMember({"all", "bernoulli", "convexity", "amgm",
                             "oppenheim", "factorization", "lambda_star"}));
  verify->add_option("--trials", verify_trials, "trials for randomized checks")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "base seed")->envname("GMACFB_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cap->parsed()) return run_capacity(cap_users, cap_power, cap_unit, cap_tol);
    if (sweep->parsed()) {
      gmacfb::SweepSpec spec;
      spec.quantity = gmacfb::parse_sweep_quantity(sweep_quantity);
      spec.start = sweep_start;
      spec.stop = sweep_stop;
      spec.step = sweep_step;
      spec.power = sweep_power;
      spec.users = sweep_users;
      spec.cut_size = sweep_cut;
      spec.unit = parse_unit(sweep_unit);
      return run_sweep(spec, sweep_out);
    }
    if (depbal->parsed())
      return run_depbal(db_powers, db_partition, db_rho, db_unit, db_seed);
    if (verify->parsed()) return run_verify(verify_suite, verify_trials, verify_seed);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gmacfb::PsdError& e) {
    std::cerr << "error: " << e.what()
              << " (smallest eigenvalue = " << e.min_eigenvalue() << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
