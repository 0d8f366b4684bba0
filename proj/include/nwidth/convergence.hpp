#pragma once

#include "nwidth/eigensolver.hpp"
#include "nwidth/greens_kernel.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace nwidth {

/// Where the "exact" d_n of a study comes from.
enum class Reference {
  /// A run on the finer mesh reference_h (self-reference).
  Mesh,
  /// (b-a)/(n pi); only valid for r = 1.
  Analytic,
};

/// Least-squares slope of log(error) against log(h).
struct OrderFit {
  double order = 0.0;
  std::size_t points_used = 0;
  /// Points whose error sits at the reference's rounding level.
  std::size_t plateau_points = 0;
  /// True when the coarsest usable point was discarded as pre-asymptotic.
  bool dropped_coarsest = false;
  /// Fewer than three points went into the fit.
  bool few_points = false;
};

struct ConvergenceStudy {
  int r = 0;
  Reference reference = Reference::Mesh;
  std::vector<int> n_list;
  /// Mesh sizes in the order given.
  std::vector<double> h_list;
  /// Interior node counts matching h_list.
  std::vector<std::size_t> m_list;
  /// 0 for the analytic reference.
  double reference_h = 0.0;
  /// Reference d_n per entry of n_list.
  std::vector<double> reference_dn;
  /// errors[i][j] = |d_{n_list[i]}(h_list[j]) - reference_dn[i]|.
  std::vector<std::vector<double>> errors;
  std::vector<OrderFit> fits;
};

/// Error points at or below this multiple of eps * d_n count as converged.
inline constexpr double kPlateauFactor = 1e3;
/// Relative misfit beyond which the coarsest point is dropped.
inline constexpr double kCoarseMisfit = 0.25;

/// Interior node count m with (b-a)/(m+1) == h; throws InvalidArgument if h
/// is not of that form.
std::size_t nodes_for_spacing(const Interval& iv, double h);

/// Fits log(error) = c + order * log(h) over the points whose error exceeds
/// kPlateauFactor * unit_roundoff * reference. If the coarsest point misfits
/// by more than kCoarseMisfit it is removed and the fit repeated once.
OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err,
                   double reference,
                   double unit_roundoff = std::numeric_limits<double>::epsilon());

/// Runs the pipeline at every h (and at h_ref for the mesh reference) and
/// tabulates errors and fitted orders per n.
ConvergenceStudy run_study(int r, const std::vector<int>& n_list,
                           const std::vector<double>& h_list, double h_ref,
                           const Interval& iv,
                           Reference reference = Reference::Mesh,
                           double tol_res = kDefaultResidualTol,
                           Precision precision = Precision::Double);

} // namespace nwidth
