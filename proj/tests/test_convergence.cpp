#include "doctest.h"

#include "nwidth/convergence.hpp"
#include "nwidth/errors.hpp"

#include <cmath>

using namespace nwidth;

TEST_SUITE("convergence") {

TEST_CASE("mesh size to node count") {
  CHECK(nodes_for_spacing(Interval(0, 1), 0x1p-11) == 2047);
  CHECK(nodes_for_spacing(Interval(-1, 1), 0.5) == 3);
  CHECK_THROWS_AS(nodes_for_spacing(Interval(0, 1), 0.3), InvalidArgument);
  CHECK_THROWS_AS(nodes_for_spacing(Interval(0, 1), 1.0), InvalidArgument);
}

TEST_CASE("fit recovers a pure power law") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * std::pow(x, 4));
  const auto fit = fit_order(h, e, 1.0);
  CHECK(fit.order == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(fit.points_used == 4);
  CHECK_FALSE(fit.dropped_coarsest);
  CHECK_FALSE(fit.few_points);
}

TEST_CASE("plateau points are excluded") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  const std::vector<double> e{1e-4, 1e-4 / 16, 1e-20, 0.0};
  const auto fit = fit_order(h, e, 1.0);
  CHECK(fit.plateau_points == 2);
  CHECK(fit.points_used == 2);
  CHECK(fit.few_points);
  CHECK(fit.order == doctest::Approx(4.0));
  const auto none = fit_order(h, {0.0, 0.0, 0.0, 1e-4}, 1.0);
  CHECK(std::isnan(none.order));
}

TEST_CASE("pre-asymptotic coarsest point is dropped") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e;
  for (double x : h) e.push_back(std::pow(x, 2));
  e[0] *= 5.0;
  const auto fit = fit_order(h, e, 1.0);
  CHECK(fit.dropped_coarsest);
  CHECK(fit.points_used == 3);
  CHECK(fit.order == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("r = 1 analytic reference gives order two") {
  const auto study = run_study(1, {1, 2, 3, 4}, {0x1p-4, 0x1p-5, 0x1p-6, 0x1p-7}, 0.0,
                               Interval(0, 1), Reference::Analytic);
  for (const auto& f : study.fits) CHECK(f.order == doctest::Approx(2.0).epsilon(0.01));
  for (const auto& row : study.errors)
    for (double e : row) CHECK(e >= 0.0);
}

TEST_CASE("r = 2 self-reference order lies between 2 and 4.5") {
  const auto study = run_study(2, {2, 3, 4}, {0x1p-3, 0x1p-4, 0x1p-5, 0x1p-6},
                               0x1p-9, Interval(0, 1));
  CHECK(study.m_list == std::vector<std::size_t>{7, 15, 31, 63});
  CHECK(study.reference_h == 0x1p-9);
  for (const auto& f : study.fits) {
    CHECK(f.order >= 1.5);
    CHECK(f.order <= 4.5);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(run_study(2, {2}, {0.25}, 0.0, Interval(0, 1), Reference::Analytic),
                  InvalidArgument);
  CHECK_THROWS_AS(run_study(2, {2}, {0.125}, 0.25, Interval(0, 1)), InvalidArgument);
  CHECK_THROWS_AS(run_study(2, {1}, {0.25}, 0.125, Interval(0, 1)), InvalidArgument);
  CHECK_THROWS_AS(run_study(2, {2}, {0.25}, 0.125, Interval(0, 1), Reference::Mesh,
                            kDefaultResidualTol, Precision::Auto),
                  InvalidArgument);
}

}
