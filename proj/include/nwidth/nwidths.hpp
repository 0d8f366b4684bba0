#pragma once

#include "nwidth/eigensolver.hpp"
#include "nwidth/greens_kernel.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace nwidth {

enum class WidthFlag {
  Ok,
  /// lambda below 1e3 * eps * lambda_1: trailing digits are rounding noise.
  PrecisionLimited,
  NonPositive,
  /// lambda not strictly below the previous rank.
  NonMonotone,
};

std::string_view to_string(WidthFlag flag);

struct Bounds {
  double lower;
  double upper;
};

/// One n-width estimate with the reference values it is compared against.
/// All `*_inv_r` style quantities refer to d_n^{-1/r}.
struct NWidthResult {
  int r = 0;
  int n = 0;
  std::size_t m = 0;
  double d_n = 0.0;
  double dn_inv_r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double conjecture = 0.0;
  /// |dn_inv_r - conjecture| / conjecture.
  double rel_err = 0.0;
  WidthFlag flag = WidthFlag::Ok;
};

/// d_n = sqrt(lambda) where lambda is the (n+1-r)-th largest eigenvalue.
double dn_from_eigenvalue(double lambda, int n, int r);

/// (n-r+1) pi/(b-a) <= d_n^{-1/r} <= n pi/(b-a).
Bounds theorem1_bounds(int r, int n, const Interval& iv);

/// (n - (r-1)/2) pi/(b-a), the midpoint of the bounds.
double conjecture_value(int r, int n, const Interval& iv);

/// Builds the result rows for n in [n_first, n_last] from a spectrum whose
/// entry k-1 is the rank-k eigenpair (needs n_last + 1 - r pairs).
std::vector<NWidthResult> widths_from_spectrum(
    const std::vector<Eigenpair>& spectrum, int r, int n_first, int n_last,
    const Interval& iv, std::size_t m);

/// Full pipeline for one r: assemble on m interior nodes, solve for the
/// needed eigenvalues, tabulate n = n_first..n_last.
std::vector<NWidthResult> compute_widths(int r, int n_first, int n_last,
                                         std::size_t m, const Interval& iv,
                                         double tol_res = kDefaultResidualTol);

/// Rows for r = 1..r_max and n = r + offset_first .. r + offset_last, one
/// assembly and eigensolve per r.
std::vector<NWidthResult> conjecture_table(int r_max, int offset_first,
                                           int offset_last, std::size_t m,
                                           const Interval& iv,
                                           double tol_res = kDefaultResidualTol);

} // namespace nwidth
