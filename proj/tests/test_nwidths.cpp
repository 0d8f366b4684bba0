#include "doctest.h"

#include "nwidth/errors.hpp"
#include "nwidth/nwidths.hpp"

#include <cmath>
#include <numbers>

using namespace nwidth;
constexpr double pi = std::numbers::pi;

TEST_SUITE("nwidths") {

TEST_CASE("scalar helpers") {
  CHECK(dn_from_eigenvalue(0.25, 3, 2) == 0.5);
  CHECK_THROWS_AS(dn_from_eigenvalue(0.0, 3, 2), InvalidArgument);
  CHECK_THROWS_AS(dn_from_eigenvalue(0.25, 1, 2), InvalidArgument);

  auto b = theorem1_bounds(1, 5, Interval(0, 1));
  CHECK(b.lower == doctest::Approx(5 * pi));
  CHECK(b.upper == doctest::Approx(5 * pi));
  b = theorem1_bounds(3, 3, Interval(0, 1));
  CHECK(b.lower == doctest::Approx(pi));
  CHECK(b.upper == doctest::Approx(3 * pi));
  b = theorem1_bounds(2, 10, Interval(0, 2));
  CHECK(b.lower == doctest::Approx(4.5 * pi));
  CHECK(b.upper == doctest::Approx(5 * pi));

  CHECK(conjecture_value(1, 4, Interval(0, 1)) == doctest::Approx(4 * pi));
  CHECK(conjecture_value(3, 5, Interval(0, 1)) == doctest::Approx(4 * pi));
  CHECK(conjecture_value(20, 20, Interval(0, 1)) == doctest::Approx(10.5 * pi));
  CHECK_THROWS_AS(conjecture_value(3, 2, Interval(0, 1)), InvalidArgument);
}

TEST_CASE("r = 1 reproduces 1/(n pi)") {
  const auto rows = compute_widths(1, 1, 6, 2047, Interval(0, 1));
  for (const auto& row : rows) {
    CHECK(row.d_n == doctest::Approx(1.0 / (row.n * pi)).epsilon(1e-4));
    CHECK(row.rel_err <= 1e-4);
    CHECK(row.flag == WidthFlag::Ok);
  }
}

TEST_CASE("r = 1 error shrinks like h^2") {
  const auto coarse = compute_widths(1, 3, 3, 127, Interval(0, 1));
  const auto fine = compute_widths(1, 3, 3, 255, Interval(0, 1));
  const double exact = 1.0 / (3 * pi);
  const double ratio = std::abs(coarse[0].d_n - exact) / std::abs(fine[0].d_n - exact);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("r = 2, n = 2 sits between the bounds near the conjecture") {
  const auto rows = compute_widths(2, 2, 2, 2047, Interval(0, 1));
  const double v = rows[0].dn_inv_r;
  CHECK(v >= pi);
  CHECK(v <= 2 * pi);
  CHECK(v == doctest::Approx(1.5 * pi).epsilon(1e-2));
  // Half mesh differs only by discretization error.
  const auto half = compute_widths(2, 2, 2, 1023, Interval(0, 1));
  CHECK(half[0].d_n == doctest::Approx(rows[0].d_n).epsilon(1e-10));
}

TEST_CASE("sandwich, monotonicity and scaling") {
  for (int r = 1; r <= 6; ++r) {
    const auto rows = compute_widths(r, r, r + 5, 255, Interval(0, 1));
    const auto wide = compute_widths(r, r, r + 5, 255, Interval(-1, 2));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      const double eps = 1e-3 * row.upper;
      CHECK(row.dn_inv_r >= row.lower - eps);
      CHECK(row.dn_inv_r <= row.upper + eps);
      CHECK(row.conjecture == doctest::Approx(0.5 * (row.lower + row.upper)));
      if (i > 0) CHECK(row.d_n < rows[i - 1].d_n);
      CHECK(wide[i].d_n ==
            doctest::Approx(std::pow(3.0, r) * row.d_n).epsilon(1e-8));
    }
  }
}

TEST_CASE("relative error decreases in n for r = 2") {
  const auto rows = compute_widths(2, 2, 7, 2047, Interval(0, 1));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].rel_err < rows[i - 1].rel_err);
  }
}

TEST_CASE("conjecture table layout") {
  const auto rows = conjecture_table(3, 0, 5, 127, Interval(0, 1));
  REQUIRE(rows.size() == 18);
  for (int r = 1; r <= 3; ++r) {
    for (int off = 0; off <= 5; ++off) {
      const auto& row = rows[static_cast<std::size_t>((r - 1) * 6 + off)];
      CHECK(row.r == r);
      CHECK(row.n == r + off);
      CHECK(row.m == 127);
    }
  }
}

TEST_CASE("flags") {
  const Interval iv(0, 1);
  std::vector<Eigenpair> spec(4);
  spec[0].value = 1.0;
  spec[1].value = 0.5;
  spec[2].value = 0.5;
  spec[3].value = -1e-20;
  const auto rows = widths_from_spectrum(spec, 1, 1, 4, iv, 10);
  CHECK(rows[0].flag == WidthFlag::Ok);
  CHECK(rows[1].flag == WidthFlag::Ok);
  CHECK(rows[2].flag == WidthFlag::NonMonotone);
  CHECK(rows[3].flag == WidthFlag::NonPositive);
  CHECK(std::isnan(rows[3].d_n));

  spec[2].value = 1e-14;
  CHECK(widths_from_spectrum(spec, 1, 3, 3, iv, 10)[0].flag ==
        WidthFlag::PrecisionLimited);
  CHECK(to_string(WidthFlag::PrecisionLimited) == "precision-limited");
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(compute_widths(0, 1, 2, 10, Interval(0, 1)), InvalidArgument);
  CHECK_THROWS_AS(compute_widths(2, 1, 2, 10, Interval(0, 1)), InvalidArgument);
  CHECK_THROWS_AS(compute_widths(1, 1, 20, 10, Interval(0, 1)), InvalidArgument);
}

}
