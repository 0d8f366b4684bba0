#pragma once

#include "nwidth/greens_kernel.hpp"
#include "nwidth/matrix.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace nwidth {

/// Uniform partition of [a, b] into m + 1 segments.
class Grid {
public:
  const Interval& interval() const { return interval_; }
  /// Number of interior nodes.
  std::size_t interior_count() const { return m_; }
  double spacing() const { return h_; }
  /// Nodes xi_0 = a, ..., xi_{m+1} = b.
  std::span<const double> nodes() const { return nodes_; }
  /// Interior nodes xi_1, ..., xi_m.
  std::span<const double> interior() const {
    return nodes().subspan(1, m_);
  }

private:
  friend Grid build_grid(const Interval& iv, std::size_t m);
  Grid(Interval iv, std::size_t m, double h, std::vector<double> nodes)
      : interval_(iv), m_(m), h_(h), nodes_(std::move(nodes)) {}

  Interval interval_;
  std::size_t m_;
  double h_;
  std::vector<double> nodes_;
};

/// h = (b-a)/(m+1), xi_k = a + k h, last node clamped to b.
/// Throws InvalidArgument for m == 0.
Grid build_grid(const Interval& iv, std::size_t m);

/// Trapezoid-rule discretization of the integral operator with kernel g:
/// matrix(k, l) = h * g(xi_k, xi_l) over interior nodes. Its eigenvalues
/// approximate the integral-operator eigenvalues lambda directly.
class NystromSystem {
public:
  const Kernel& kernel() const { return kernel_; }
  const Grid& grid() const { return grid_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t size() const { return matrix_.size(); }

private:
  friend NystromSystem assemble(const Kernel& k, const Grid& grid);
  NystromSystem(Kernel k, Grid g, Matrix a)
      : kernel_(std::move(k)), grid_(std::move(g)), matrix_(std::move(a)) {}

  Kernel kernel_;
  Grid grid_;
  Matrix matrix_;
};

/// Evaluates the upper triangle (parallel over columns) and mirrors it.
/// Throws InvalidArgument when the grid was built on another interval.
NystromSystem assemble(const Kernel& k, const Grid& grid);

/// The same matrix with every entry recomputed in extended precision on the
/// same nodes.
ExtendedMatrix assemble_extended(const NystromSystem& sys);

/// Debug dump: one row per line, whitespace separated, 17 significant digits.
void write_matrix(std::ostream& os, const Matrix& a);

} // namespace nwidth
