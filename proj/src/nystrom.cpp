#include "nwidth/nystrom.hpp"

#include "nwidth/errors.hpp"

#include "assembly.hpp"
#include "nwidth/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace nwidth {

Grid build_grid(const Interval& iv, std::size_t m) {
  detail::require(m >= 1, "interior node count m must be >= 1");
  const double h = iv.length() / static_cast<double>(m + 1);
  std::vector<double> nodes(m + 2);
  for (std::size_t k = 0; k <= m; ++k) {
    nodes[k] = iv.a() + static_cast<double>(k) * h;
  }
  nodes[m + 1] = iv.b();
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    detail::require(nodes[k - 1] < nodes[k],
                    "grid nodes are not strictly increasing; m too large for "
                    "the interval");
  }
  return Grid(iv, m, h, std::move(nodes));
}

namespace {

// Column l holds y = xi_l; rows k <= l have x <= y, so the knot vector of
// the B-spline is shared along the column.
template <class Real>
BasicMatrix<Real> assemble_matrix(const Kernel& k, const Grid& grid) {
  const std::size_t m = grid.interior_count();
  const int r = k.order();
  const Real a = k.interval().a();
  const Real b = k.interval().b();
  const Real h = grid.spacing();
  const auto xi = grid.interior();
  BasicMatrix<Real> out(m);
  parallel_for(0, m, [&](std::size_t l) {
    std::vector<Real> knots(static_cast<std::size_t>(2 * r + 1));
    const Real y = xi[l];
    detail::fill_kernel_knots(r, a, b, y, knots.data());
    const Real scale = detail::factorial_scale_unchecked(r, y, a, b);
    for (std::size_t row = 0; row <= l; ++row) {
      const Real v =
          h * detail::kernel_upper(r, a, b, Real(xi[row]), y, scale,
                                   knots.data());
      out(row, l) = v;
      out(l, row) = v;
    }
  });
  return out;
}

} // namespace

NystromSystem assemble(const Kernel& k, const Grid& grid) {
  detail::require(k.interval() == grid.interval(),
                  "kernel and grid are defined on different intervals");
  return NystromSystem(k, grid, assemble_matrix<double>(k, grid));
}

ExtendedMatrix assemble_extended(const NystromSystem& sys) {
  return assemble_matrix<long double>(sys.kernel(), sys.grid());
}

template <class Real>
BasicMatrix<Real> detail::assemble_as(const NystromSystem& sys) {
  return assemble_matrix<Real>(sys.kernel(), sys.grid());
}

template ExtendedMatrix detail::assemble_as<long double>(const NystromSystem&);
template BasicMatrix<__float128> detail::assemble_as<__float128>(
    const NystromSystem&);

void write_matrix(std::ostream& os, const Matrix& a) {
  char buf[32];
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

} // namespace nwidth
