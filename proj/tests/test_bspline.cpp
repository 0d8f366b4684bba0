#include "doctest.h"

#include "nwidth/bspline.hpp"
#include "nwidth/errors.hpp"

#include <algorithm>
#include <random>
#include <vector>

using nwidth::bspline_eval;
using nwidth::KnotVector;

TEST_SUITE("bspline") {

TEST_CASE("linear hat values") {
  CHECK(bspline_eval(KnotVector({0, 1, 2}), 1.0) == doctest::Approx(1.0));
  CHECK(bspline_eval(KnotVector({0, 0.5, 1}), 0.25) == doctest::Approx(0.5));
}

TEST_CASE("cubic with double end knots") {
  CHECK(bspline_eval(KnotVector({0, 0, 0.6, 1, 1}), 0.3) ==
        doctest::Approx(0.285).epsilon(1e-14));
  // Right leg of the symmetric case: 8 (1-x)^2 ((x-0.5) + 2 x 0.5) at 0.75.
  CHECK(bspline_eval(KnotVector({0, 0, 0.5, 1, 1}), 0.75) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(bspline_eval(KnotVector({0, 0, 0.5, 1, 1}), 0.25) ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("support and end values") {
  const KnotVector k({0, 0, 0.6, 1, 1});
  CHECK(bspline_eval(k, -0.1) == 0.0);
  CHECK(bspline_eval(k, 1.1) == 0.0);
  CHECK(bspline_eval(k, 0.0) == 0.0);
  CHECK(bspline_eval(k, 1.0) == 0.0);
  // Left limit at the last knot of a hat with a jump there.
  CHECK(bspline_eval(KnotVector({0, 1, 1}), 1.0) == doctest::Approx(1.0));
  // Right continuity at an interior jump.
  CHECK(bspline_eval(KnotVector({0, 1, 1, 2}), 1.0) == doctest::Approx(1.0));
}

TEST_CASE("rejects invalid knot vectors") {
  CHECK_THROWS_AS(KnotVector({1, 0, 2}), nwidth::InvalidArgument);
  CHECK_THROWS_AS(KnotVector({1, 1, 1}), nwidth::InvalidArgument);
  CHECK_THROWS_AS(KnotVector({1}), nwidth::InvalidArgument);
  const std::vector<double> bad{0, 2, 1};
  CHECK_THROWS_AS(bspline_eval(std::span<const double>(bad), 0.5),
                  nwidth::InvalidArgument);
}

TEST_CASE("nonnegative on random knot vectors") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  std::uniform_int_distribution<int> len(2, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> t(static_cast<std::size_t>(len(rng)));
    for (auto& v : t) v = u(rng);
    std::sort(t.begin(), t.end());
    // Occasional repeated knots.
    if (t.size() > 3 && trial % 3 == 0) t[1] = t[0];
    if (t.front() == t.back()) continue;
    const KnotVector k(t);
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      const double v = bspline_eval(k, x);
      CHECK(v >= 0.0);
      if (x < t.front() || x > t.back()) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("partition of unity on uniform knots") {
  for (int p = 0; p <= 7; ++p) {
    std::vector<double> t;
    for (int i = 0; i <= 30; ++i) t.push_back(0.1 * i);
    // Interior region covered by p+1 splines everywhere.
    const double lo = t[static_cast<std::size_t>(p)];
    const double hi = t[t.size() - 1 - static_cast<std::size_t>(p)];
    for (int s = 0; s <= 200; ++s) {
      const double x = lo + (hi - lo) * s / 200.0 * 0.999999;
      double sum = 0.0;
      for (std::size_t j = 0; j + static_cast<std::size_t>(p) + 1 < t.size(); ++j) {
        sum += bspline_eval(std::span<const double>(t).subspan(j, p + 2), x);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("degree-one formula") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 2000; ++trial) {
    double v[3] = {u(rng), u(rng), u(rng)};
    std::sort(v, v + 3);
    if (v[0] == v[1] || v[1] == v[2]) continue;
    std::uniform_real_distribution<double> ux(v[0], v[1]);
    const double x = ux(rng);
    const double expected = (x - v[0]) / (v[1] - v[0]);
    CHECK(std::abs(bspline_eval(KnotVector({v[0], v[1], v[2]}), x) - expected) <=
          1e-14);
  }
}

TEST_CASE("extended instantiation agrees") {
  const std::vector<long double> t{0.0L, 0.0L, 0.6L, 1.0L, 1.0L};
  const long double v = nwidth::detail::bspline_eval_unchecked<long double>(
      std::span<const long double>(t), 0.3L);
  CHECK(static_cast<double>(v) == doctest::Approx(0.285).epsilon(1e-15));
}

}
