#pragma once

#include <string>
#include <vector>

#include "gmacfb/types.hpp"

namespace gmacfb {

enum class SweepQuantity { two_user_cuts, three_user_cuts, general_cut, capacity_vs_p };

/// A 1-D parameter sweep: rho for the cut quantities, P for capacity_vs_p.
struct SweepSpec {
  SweepQuantity quantity = SweepQuantity::two_user_cuts;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  int users = 0;        // general_cut, capacity_vs_p
  double power = 0.0;   // cut quantities
  int cut_size = 0;     // general_cut
  Unit unit = Unit::nats;
};

/// Inclusive arithmetic grid start, start+step, ..., stop (within a relative
/// step tolerance at the far end). Throws on step <= 0 or an empty range.
std::vector<double> sweep_grid(double start, double stop, double step);

/// Full CSV document for the sweep: comma-separated, dot decimal, LF line
/// endings, mandatory header row, 17 significant digits per value.
std::string run_sweep_csv(const SweepSpec& spec);

SweepQuantity parse_sweep_quantity(const std::string& name);

/// "1,4,9" -> {1.0, 4.0, 9.0}.
std::vector<double> parse_double_list(const std::string& text);

/// "{1},{2,3}" with 1-based user indices -> Partition over {0..J-1}.
Partition parse_partition(const std::string& text, int num_users);

/// printf %.17g.
std::string format_double(double v);

}  // namespace gmacfb
