#pragma once

#include "nwidth/eigensolver.hpp"
#include "nwidth/nystrom.hpp"

#include <iosfwd>
#include <vector>

namespace nwidth {

/// Interior zeros of one computed eigenfunction: the interior knots of the
/// optimal spline space of the same dimension.
struct KnotReport {
  int r = 0;
  int eigen_rank = 0;
  /// Strictly increasing, strictly inside (a, b); eigen_rank - 1 entries.
  std::vector<double> zeros;
  double refinement_tol = 0.0;
};

/// Default refinement tolerance, relative to b - a.
inline constexpr double kDefaultKnotTol = 1e-10;

/// Locates each sign change of the boundary-padded samples of `p` and
/// refines it on the local cubic through the four nearest samples
/// (bisection/secant hybrid) until the bracket is below `tol`.
///
/// Samples at or below significance_floor(p) carry no sign. Two or more such
/// samples between significant samples of the same lobe pair mean the mesh
/// cannot resolve the zero; that, a zero count other than rank - 1, or two
/// zeros closer than `tol` raise NumericalError.
KnotReport extract_knots(const Eigenpair& p, const Grid& grid, int r,
                         double tol);

/// Writes "x,phi" followed by one row per node xi_0..xi_{m+1}.
void eigenfunction_dump(std::ostream& os, const Eigenpair& p,
                        const Grid& grid);

} // namespace nwidth
