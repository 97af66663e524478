#include "gmacfb/sweep.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "gmacfb/capacity.hpp"
#include "gmacfb/cutset.hpp"

namespace gmacfb {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> sweep_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
  if (stop < start) throw std::invalid_argument("sweep: empty range");
  std::vector<double> grid;
  const double slack = step * 1e-9;
  for (long i = 0;; ++i) {
    const double x = start + step * static_cast<double>(i);
    if (x > stop + slack) break;
    grid.push_back(std::min(x, stop));
  }
  return grid;
}

SweepQuantity parse_sweep_quantity(const std::string& name) {
  if (name == "two_user_cuts") return SweepQuantity::two_user_cuts;
  if (name == "three_user_cuts") return SweepQuantity::three_user_cuts;
  if (name == "general_cut") return SweepQuantity::general_cut;
  if (name == "capacity_vs_P") return SweepQuantity::capacity_vs_p;
  throw std::invalid_argument("unknown sweep quantity '" + name + "'");
}

std::string run_sweep_csv(const SweepSpec& spec) {
  const std::vector<double> grid = sweep_grid(spec.start, spec.stop, spec.step);
  std::ostringstream csv;
  const auto in_unit = [&](double nats) {
    return convert_rate(RateValue{nats, Unit::nats}, spec.unit).value;
  };

  switch (spec.quantity) {
    case SweepQuantity::two_user_cuts: {
      csv << "rho,f1,f2\n";
      for (double rho : grid) {
        const TwoUserCuts c = two_user_cuts(spec.power, rho);
        csv << format_double(rho) << ',' << format_double(in_unit(c.f1)) << ','
            << format_double(in_unit(c.f2)) << '\n';
      }
      break;
    }
    case SweepQuantity::three_user_cuts: {
      csv << "rho,g1,g2,g3\n";
      for (double rho : grid) {
        const ThreeUserCuts c = three_user_cuts(spec.power, rho);
        csv << format_double(rho) << ',' << format_double(in_unit(c.g1)) << ','
            << format_double(in_unit(c.g2)) << ','
            << format_double(in_unit(c.g3)) << '\n';
      }
      break;
    }
    case SweepQuantity::general_cut: {
      if (spec.users < 2 || spec.cut_size < 1 || spec.cut_size > spec.users)
        throw std::invalid_argument("sweep: general_cut needs users and a cut size in {1..J}");
      csv << "rho,cut_k" << spec.cut_size << '\n';
      for (double rho : grid) {
        const RateValue v = general_cut(spec.users, spec.power, rho, spec.cut_size);
        csv << format_double(rho) << ','
            << format_double(convert_rate(v, spec.unit).value) << '\n';
      }
      break;
    }
    case SweepQuantity::capacity_vs_p: {
      if (spec.users < 2)
        throw std::invalid_argument("sweep: capacity_vs_P needs --users");
      csv << "P,capacity_" << unit_name(spec.unit) << '\n';
      for (double power : grid) {
        const RateValue c = sum_capacity(spec.users, power, spec.unit);
        csv << format_double(power) << ',' << format_double(c.value) << '\n';
      }
      break;
    }
  }
  return csv.str();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("could not parse number '" + token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size())
      throw std::invalid_argument("could not parse number '" + token + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

Partition parse_partition(const std::string& text, int num_users) {
  std::vector<std::vector<int>> blocks;
  size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '{')
      throw std::invalid_argument("partition: expected '{' in '" + text + "'");
    const size_t close = text.find('}', pos);
    if (close == std::string::npos)
      throw std::invalid_argument("partition: unbalanced braces in '" + text + "'");
    std::vector<int> block;
    for (double v : parse_double_list(text.substr(pos + 1, close - pos - 1))) {
      const int user = static_cast<int>(v);
      if (v != user || user < 1 || user > num_users)
        throw std::invalid_argument("partition: bad user index in '" + text + "'");
      block.push_back(user - 1);
    }
    blocks.push_back(std::move(block));
    pos = close + 1;
    skip_ws();
    if (pos < text.size()) {
      if (text[pos] != ',')
        throw std::invalid_argument("partition: expected ',' between blocks");
      ++pos;
      skip_ws();
    }
  }
  return Partition(num_users, std::move(blocks));
}

}  // namespace gmacfb
