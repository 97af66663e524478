#include "gmacfb/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gmacfb {

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double xtol, double* fmax) {
  if (!(hi >= lo)) throw std::invalid_argument("golden_section_max: bad bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double x = (f1 > f2) ? x1 : x2;
  if (fmax) *fmax = std::max(f1, f2);
  return x;
}

NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const int n = static_cast<int>(start.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty start");
  const int max_evals = options.max_evaluations > 0
                            ? options.max_evaluations
                            : 400 * (n + 1);

  struct Vertex {
    Eigen::VectorXd x;
    double value;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<size_t>(n) + 1);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  simplex.push_back({start, eval(start)});
  if (!std::isfinite(simplex[0].value))
    throw std::invalid_argument("nelder_mead: start point is infeasible");
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x = start;
    x(i) += options.initial_radius;
    double v = eval(x);
    if (!std::isfinite(v)) {  // step the other way when blocked by a boundary
      x(i) = start(i) - options.initial_radius;
      v = eval(x);
    }
    simplex.push_back({std::move(x), v});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) {
    return a.value < b.value;
  };
  std::sort(simplex.begin(), simplex.end(), by_value);

  while (evals < max_evals) {
    const Vertex& best = simplex.front();
    Vertex& worst = simplex.back();
    const Vertex& second_worst = simplex[static_cast<size_t>(n) - 1];

    double diameter = 0.0;
    for (const auto& v : simplex)
      diameter = std::max(diameter, (v.x - best.x).lpNorm<Eigen::Infinity>());
    const bool flat = std::isfinite(worst.value) &&
                      worst.value - best.value < options.ftol;
    if (flat && diameter < options.xtol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[static_cast<size_t>(i)].x;
    centroid /= static_cast<double>(n);

    Eigen::VectorXd xr = centroid + (centroid - worst.x);
    double fr = eval(xr);
    if (fr < best.value) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst.x);
      const double fe = eval(xe);
      if (fe < fr) {
        worst = {std::move(xe), fe};
      } else {
        worst = {std::move(xr), fr};
      }
    } else if (fr < second_worst.value) {
      worst = {std::move(xr), fr};
    } else {
      const bool outside = fr < worst.value;
      Eigen::VectorXd xc = outside ? centroid + 0.5 * (xr - centroid)
                                   : centroid + 0.5 * (worst.x - centroid);
      const double fc = eval(xc);
      if (fc < std::min(fr, worst.value)) {
        worst = {std::move(xc), fc};
      } else {
        for (size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = best.x + 0.5 * (simplex[i].x - best.x);
          simplex[i].value = eval(simplex[i].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
  }

  return NelderMeadResult{simplex.front().x, simplex.front().value, evals};
}

}  // namespace gmacfb
