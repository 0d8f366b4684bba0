#include "nwidth/knots.hpp"

#include "nwidth/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace nwidth {

namespace {

// Lagrange cubic through four samples.
class LocalCubic {
public:
  LocalCubic(const std::array<double, 4>& x, const std::array<double, 4>& y)
      : x_(x), y_(y) {}

  double operator()(double t) const {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      double w = y_[i];
      for (int j = 0; j < 4; ++j) {
        if (j != i) w *= (t - x_[j]) / (x_[i] - x_[j]);
      }
      sum += w;
    }
    return sum;
  }

private:
  std::array<double, 4> x_;
  std::array<double, 4> y_;
};

// Zero of `f` in [lo, hi] given opposite signs at the ends. False-position
// steps, with a bisection whenever the bracket fails to halve.
template <class F>
double refine_root(const F& f, double lo, double hi, double flo, double fhi,
                   double tol) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double width = hi - lo;
    double t = lo - flo * (hi - lo) / (fhi - flo);
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    double ft = f(t);
    if (ft == 0.0) return t;
    if ((ft < 0.0) == (flo < 0.0)) {
      lo = t;
      flo = ft;
    } else {
      hi = t;
      fhi = ft;
    }
    if (hi - lo > 0.5 * width) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (fm == 0.0) return mid;
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
    }
  }
  return 0.5 * (lo + hi);
}

double zero_in_cell(const std::vector<double>& s,
                    std::span<const double> nodes, std::size_t i,
                    double tol) {
  if (s[i] == 0.0) return nodes[i];
  if (s[i + 1] == 0.0) return nodes[i + 1];
  const std::size_t last = s.size() - 1;
  std::size_t first = i == 0 ? 0 : i - 1;
  if (first + 3 > last) first = last - 3;
  std::array<double, 4> xs{}, ys{};
  for (std::size_t j = 0; j < 4; ++j) {
    xs[j] = nodes[first + j];
    ys[j] = s[first + j];
  }
  const LocalCubic cubic(xs, ys);
  return refine_root(cubic, nodes[i], nodes[i + 1], s[i], s[i + 1], tol);
}

} // namespace

KnotReport extract_knots(const Eigenpair& p, const Grid& grid, int r,
                         double tol) {
  detail::require(tol > 0.0, "refinement tolerance must be positive");
  const std::vector<double> s = eigenfunction_values(p, grid);
  const auto nodes = grid.nodes();
  const double floor = significance_floor(p);

  KnotReport report;
  report.r = r;
  report.eigen_rank = p.index;
  report.refinement_tol = tol;

  std::size_t prev = s.size();
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(s[j]) <= floor) continue;
    if (prev == s.size()) {
      prev = j;
      continue;
    }
    const std::size_t quiet = j - prev - 1;
    if (quiet >= 2) {
      throw NumericalError(
          "eigenfunction " + std::to_string(p.index) +
          " is under-resolved: consecutive near-zero samples near x=" +
          std::to_string(nodes[prev + 1]));
    }
    if ((s[prev] < 0.0) != (s[j] < 0.0)) {
      std::size_t cell = prev;
      // One sign-less sample in between: pick the half with the raw sign change.
      if (quiet == 1 && (s[prev + 1] < 0.0) == (s[prev] < 0.0) &&
          s[prev + 1] != 0.0) {
        cell = prev + 1;
      }
      report.zeros.push_back(zero_in_cell(s, nodes, cell, tol));
    }
    prev = j;
  }

  const auto expected = static_cast<std::size_t>(p.index - 1);
  if (report.zeros.size() != expected) {
    throw NumericalError("eigenfunction " + std::to_string(p.index) + " has " +
                         std::to_string(report.zeros.size()) +
                         " sign changes, expected " + std::to_string(expected) +
                         "; the mesh is under-resolved");
  }
  for (std::size_t i = 1; i < report.zeros.size(); ++i) {
    if (!(report.zeros[i] - report.zeros[i - 1] > tol)) {
      throw NumericalError("zeros " + std::to_string(i) + " and " +
                           std::to_string(i + 1) + " of eigenfunction " +
                           std::to_string(p.index) + " collide");
    }
  }
  return report;
}

void eigenfunction_dump(std::ostream& os, const Eigenpair& p,
                        const Grid& grid) {
  const std::vector<double> s = eigenfunction_values(p, grid);
  const auto nodes = grid.nodes();
  char buf[64];
  os << "x,phi\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", nodes[i], s[i]);
    os << buf;
  }
}

} // namespace nwidth
