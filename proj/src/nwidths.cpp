#include "nwidth/nwidths.hpp"

#include "nwidth/errors.hpp"
#include "nwidth/nystrom.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace nwidth {

namespace {

void require_order(int r, int n) {
  detail::require(r >= 1, "derivative order r must satisfy r >= 1");
  detail::require(n >= r, "n-width index must satisfy n >= r (got n=" +
                              std::to_string(n) + ", r=" + std::to_string(r) +
                              ")");
}

} // namespace

std::string_view to_string(WidthFlag flag) {
  switch (flag) {
    case WidthFlag::Ok: return "ok";
    case WidthFlag::PrecisionLimited: return "precision-limited";
    case WidthFlag::NonPositive: return "nonpositive";
    case WidthFlag::NonMonotone: return "non-monotone";
  }
  return "unknown";
}

double dn_from_eigenvalue(double lambda, int n, int r) {
  require_order(r, n);
  detail::require(lambda > 0.0, "eigenvalue must be positive");
  return std::sqrt(lambda);
}

Bounds theorem1_bounds(int r, int n, const Interval& iv) {
  require_order(r, n);
  const double unit = std::numbers::pi / iv.length();
  return {(n - r + 1) * unit, n * unit};
}

double conjecture_value(int r, int n, const Interval& iv) {
  require_order(r, n);
  return (n - 0.5 * (r - 1)) * std::numbers::pi / iv.length();
}

std::vector<NWidthResult> widths_from_spectrum(
    const std::vector<Eigenpair>& spectrum, int r, int n_first, int n_last,
    const Interval& iv, std::size_t m) {
  require_order(r, n_first);
  detail::require(n_last >= n_first, "empty n range");
  const auto needed = static_cast<std::size_t>(n_last + 1 - r);
  detail::require(spectrum.size() >= needed,
                  "spectrum has fewer eigenpairs than the n range needs");

  const double lambda1 = spectrum.front().value;
  const double floor =
      1e3 * std::numeric_limits<double>::epsilon() * std::abs(lambda1);
  std::vector<NWidthResult> rows;
  for (int n = n_first; n <= n_last; ++n) {
    const std::size_t k = static_cast<std::size_t>(n + 1 - r);
    const double lambda = spectrum[k - 1].value;
    NWidthResult row;
    row.r = r;
    row.n = n;
    row.m = m;
    const Bounds b = theorem1_bounds(r, n, iv);
    row.lower = b.lower;
    row.upper = b.upper;
    row.conjecture = conjecture_value(r, n, iv);
    if (!(lambda > 0.0)) {
      row.flag = WidthFlag::NonPositive;
      row.d_n = std::numeric_limits<double>::quiet_NaN();
      row.dn_inv_r = row.d_n;
      row.rel_err = row.d_n;
      rows.push_back(row);
      continue;
    }
    row.d_n = std::sqrt(lambda);
    // lambda^(1/(2r)) = d_n^(1/r), then invert.
    row.dn_inv_r = 1.0 / std::pow(lambda, 0.5 / r);
    row.rel_err = std::abs(row.dn_inv_r - row.conjecture) / row.conjecture;
    if (k > 1 && !(lambda < spectrum[k - 2].value)) {
      row.flag = WidthFlag::NonMonotone;
    } else if (lambda < floor) {
      row.flag = WidthFlag::PrecisionLimited;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<NWidthResult> compute_widths(int r, int n_first, int n_last,
                                         std::size_t m, const Interval& iv,
                                         double tol_res) {
  require_order(r, n_first);
  detail::require(n_last >= n_first, "empty n range");
  const auto count = static_cast<std::size_t>(n_last + 1 - r);
  detail::require(count <= m, "m=" + std::to_string(m) +
                                  " interior nodes cannot resolve rank " +
                                  std::to_string(count));
  const Kernel kernel(r, iv);
  const NystromSystem sys = assemble(kernel, build_grid(iv, m));
  const auto pairs =
      top_eigenpairs(sys, count, tol_res, Precision::Double, false);
  return widths_from_spectrum(pairs, r, n_first, n_last, iv, m);
}

std::vector<NWidthResult> conjecture_table(int r_max, int offset_first,
                                           int offset_last, std::size_t m,
                                           const Interval& iv, double tol_res) {
  detail::require(r_max >= 1, "r_max must be >= 1");
  detail::require(offset_first >= 0 && offset_last >= offset_first,
                  "offsets must satisfy 0 <= first <= last");
  std::vector<NWidthResult> rows;
  for (int r = 1; r <= r_max; ++r) {
    auto part = compute_widths(r, r + offset_first, r + offset_last, m, iv,
                               tol_res);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

} // namespace nwidth
