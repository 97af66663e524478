#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gmacfb/capacity.hpp"
#include "gmacfb/cutset.hpp"

using namespace gmacfb;

namespace {

// Reference tables for the symmetric cut curves, frozen at full precision.
struct TwoUserRow {
  double rho, f1, f2;
};
constexpr TwoUserRow kTwoUserTable[] = {
    {-1.0, 0.0, 0.0},
    {-0.9, 0.0911607783969773, 0.173953307123438},
    {-0.8, 0.168236118310606, 0.307484699747961},
    {-0.7, 0.235001814622868, 0.412109650826833},
    {-0.6, 0.29389333245106, 0.494696241836107},
    {-0.5, 0.346573590279973, 0.559615787935423},
    {-0.4, 0.394228680182135, 0.609765571620894},
    {-0.3, 0.43773436867695, 0.647103242058539},
    {-0.2, 0.477755722513718, 0.672944473242426},
    {-0.1, 0.514809708590579, 0.688134638736401},
    {0.0, 0.549306144334055, 0.693147180559945},
    {0.1, 0.58157540490284, 0.688134638736401},
    {0.2, 0.611887715811058, 0.672944473242426},
    {0.3, 0.640466922731032, 0.647103242058539},
    {0.4, 0.66750053336617, 0.609765571620894},
    {0.5, 0.693147180559945, 0.559615787935423},
    {0.6, 0.717542262644661, 0.494696241836107},
    {0.7, 0.740802270462108, 0.412109650826833},
    {0.8, 0.763028151747525, 0.307484699747961},
    {0.9, 0.784307958956923, 0.173953307123438},
    {1.0, 0.80471895621705, 0.0},
};

struct ThreeUserRow {
  double rho, g1, g2, g3;
};
constexpr ThreeUserRow kThreeUserTable[] = {
    {0.00, 0.320926943086197, 0.352502721934302, 0.393546396701236},
    {0.02, 0.330311994427193, 0.357883374745302, 0.39327487891608},
    {0.04, 0.339524128090222, 0.362781957226386, 0.392480929626724},
    {0.06, 0.348569600914741, 0.36720761916349, 0.39119331833471},
    {0.08, 0.357454336170729, 0.371168508565136, 0.389438212003884},
    {0.10, 0.366183946856613, 0.37467182361546, 0.387239449778189},
    {0.12, 0.374763756998026, 0.37772385766929, 0.384618783000507},
    {0.14, 0.383198821149769, 0.380330037897928, 0.381596085546051},
    {0.16, 0.391493942279867, 0.382494958096421, 0.37818953866836},
    {0.18, 0.399653688194168, 0.38422240607699, 0.374415793887259},
    {0.20, 0.407682406642097, 0.385515385996882, 0.370290116897289},
};

}  // namespace

TEST_CASE("two-user cut curves reproduce the reference table at P = 1") {
  for (const auto& row : kTwoUserTable) {
    const TwoUserCuts c = two_user_cuts(1.0, row.rho);
    CHECK(std::abs(c.f1 - row.f1) <= 1e-12);
    CHECK(std::abs(c.f2 - row.f2) <= 1e-12);
  }
  CHECK(two_user_cuts(1.0, 1.0).f2 == 0.0);
  CHECK(two_user_cuts(3.7, -1.0).f1 == 0.0);
  CHECK_THROWS_AS(two_user_cuts(1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(two_user_cuts(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("three-user cut curves reproduce the reference table at P = 0.3") {
  for (const auto& row : kThreeUserTable) {
    const ThreeUserCuts c = three_user_cuts(0.3, row.rho);
    CHECK(std::abs(c.g1 - row.g1) <= 1e-12);
    CHECK(std::abs(c.g2 - row.g2) <= 1e-12);
    CHECK(std::abs(c.g3 - row.g3) <= 1e-12);
  }
  CHECK(three_user_cuts(0.7, -0.5).g1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(three_user_cuts(0.3, -0.6), std::invalid_argument);
}

TEST_CASE("general_cut reduces to the closed-form curves") {
  for (const auto& row : kTwoUserTable) {
    CHECK(std::abs(general_cut(2, 1.0, row.rho, 2).value - row.f1) <= 1e-12);
    CHECK(std::abs(general_cut(2, 1.0, row.rho, 1).value - row.f2) <= 1e-12);
  }
  for (const auto& row : kThreeUserTable) {
    CHECK(std::abs(general_cut(3, 0.3, row.rho, 3).value - row.g1) <= 1e-12);
    CHECK(std::abs(general_cut(3, 0.3, row.rho, 2).value - row.g2) <= 1e-12);
    CHECK(std::abs(general_cut(3, 0.3, row.rho, 1).value - row.g3) <= 1e-12);
  }
  // spot values quoted at full precision
  CHECK(general_cut(3, 0.3, 0.1, 3).value ==
        doctest::Approx(0.366183946856613).epsilon(1e-13));
  CHECK(general_cut(3, 0.3, 0.1, 1).value ==
        doctest::Approx(0.387239449778189).epsilon(1e-13));
  CHECK(general_cut(2, 1.0, -0.9, 2).value ==
        doctest::Approx(0.0911607783969773).epsilon(1e-13));

  // denser scan than the tables, both two- and three-user families
  for (double rho = -0.99; rho <= 0.99; rho += 0.037) {
    CHECK(general_cut(2, 0.7, rho, 2).value ==
          doctest::Approx(two_user_cuts(0.7, rho).f1).epsilon(1e-12));
    CHECK(general_cut(2, 0.7, rho, 1).value ==
          doctest::Approx(two_user_cuts(0.7, rho).f2).epsilon(1e-12));
    if (rho >= -0.5) {
      CHECK(general_cut(3, 2.1, rho, 2).value ==
            doctest::Approx(three_user_cuts(2.1, rho).g2).epsilon(1e-12));
      CHECK(general_cut(3, 2.1, rho, 1).value ==
            doctest::Approx(three_user_cuts(2.1, rho).g3).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(general_cut(3, 0.3, -0.9, 1), std::invalid_argument);
  CHECK_THROWS_AS(general_cut(3, 0.3, 0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(general_cut(3, 0.3, 0.1, 4), std::invalid_argument);
}

TEST_CASE("cut curve points collect every size at once") {
  const CutCurvePoint p = cut_curve_point(3, 0.3, 0.1);
  REQUIRE(p.values.size() == 3);
  CHECK(p.rho == 0.1);
  CHECK(p.values[0] == doctest::Approx(0.387239449778189).epsilon(1e-13));
  CHECK(p.values[1] == doctest::Approx(0.37467182361546).epsilon(1e-13));
  CHECK(p.values[2] == doctest::Approx(0.366183946856613).epsilon(1e-13));
  for (double v : p.values) CHECK(v >= 0.0);
}

TEST_CASE("max-min bound, two users") {
  const BoundReport report = cutset_sum_bound(2, 1.0);
  CHECK(as_nats(report.bound) == doctest::Approx(0.6436).epsilon(1e-3));
  CHECK(report.rho_star == doctest::Approx(0.311).epsilon(1e-2));
  CHECK(report.binding_cuts == std::vector<int>{1, 2});
  CHECK(as_nats(report.bound) ==
        doctest::Approx(as_nats(sum_capacity(2, 1.0))).epsilon(1e-9));
}

TEST_CASE("max-min bound, three users at P = 0.3 is loose") {
  const BoundReport report = cutset_sum_bound(3, 0.3);
  CHECK(as_nats(report.bound) == doctest::Approx(0.381).epsilon(2e-3));
  CHECK(report.binding_cuts == std::vector<int>{1, 2});
  const double capacity = as_nats(sum_capacity(3, 0.3));
  CHECK(as_nats(report.bound) > capacity + 1e-4);
  CHECK(report.rho_star > 0.14);
  CHECK(report.rho_star < 0.16);
}

TEST_CASE("max-min bound is tight at high SNR") {
  const BoundReport report = cutset_sum_bound(3, 2.0);
  CHECK(std::abs(as_nats(report.bound) - as_nats(sum_capacity(3, 2.0))) < 1e-6);
}

TEST_CASE("the argmax sits on a transversal crossing of the binding curves") {
  for (auto [users, power] : {std::pair<int, double>{2, 1.0}, {3, 0.3}, {4, 4.0}}) {
    const BoundReport report = cutset_sum_bound(users, power);
    REQUIRE(report.binding_cuts.size() == 2);
    const double h = 1e-6;
    const int ka = report.binding_cuts[0];
    const int kb = report.binding_cuts[1];
    const double slope_a =
        (general_cut(users, power, report.rho_star + h, ka).value -
         general_cut(users, power, report.rho_star - h, ka).value) /
        (2 * h);
    const double slope_b =
        (general_cut(users, power, report.rho_star + h, kb).value -
         general_cut(users, power, report.rho_star - h, kb).value) /
        (2 * h);
    CHECK(slope_a * slope_b < 0.0);
  }
}

TEST_CASE("the bound never drops below capacity") {
  for (int users : {2, 3, 4}) {
    for (double power : {0.1, 0.5, 1.0, 3.0}) {
      const double bound = as_nats(cutset_sum_bound(users, power).bound);
      const double capacity = as_nats(sum_capacity(users, power));
      CHECK(bound >= capacity - 1e-9);
    }
  }
}
