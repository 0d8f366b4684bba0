#include "nwidth/greens_kernel.hpp"

#include "nwidth/bspline.hpp"
#include "nwidth/errors.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace nwidth {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  detail::require(std::isfinite(a) && std::isfinite(b),
                  "interval endpoints must be finite");
  detail::require(a < b, "interval must satisfy a < b");
}

Kernel::Kernel(int r, Interval interval, bool allow_large_r)
    : r_(r), interval_(interval), allow_large_r_(allow_large_r) {
  detail::require(r >= 1, "derivative order r must satisfy r >= 1");
  detail::require(allow_large_r || r <= kMaxOrder,
                  "derivative order r must satisfy r <= " +
                      std::to_string(kMaxOrder));
}

double Kernel::operator()(double x, double y) const {
  return kernel_eval(*this, x, y);
}

template <class Real>
Real detail::factorial_scale_unchecked(int r, Real y, Real a, Real b) {
  const Real left = y - a;
  const Real right = b - y;
  Real s = Real(1) / (b - a);
  const int top = 2 * r - 1;
  for (int i = 1; i <= r; ++i) {
    s *= left;
    s /= 2 * i - 1;
    s *= right;
    if (2 * i <= top) s /= 2 * i;
  }
  return s;
}

double factorial_scale(int r, double y, const Interval& iv, bool allow_large_r) {
  detail::require(r >= 1, "derivative order r must satisfy r >= 1");
  detail::require(allow_large_r || r <= kMaxOrder,
                  "derivative order r must satisfy r <= " +
                      std::to_string(kMaxOrder));
  detail::require(iv.contains(y), "y lies outside [a, b]");
  return detail::factorial_scale_unchecked(r, y, iv.a(), iv.b());
}

template <class Real>
void detail::fill_kernel_knots(int r, Real a, Real b, Real y, Real* knots) {
  for (int i = 0; i < r; ++i) {
    knots[i] = a;
    knots[r + 1 + i] = b;
  }
  knots[r] = y;
}

template <class Real>
Real detail::kernel_upper(int r, Real a, Real b, Real x, Real y, Real scale,
                          const Real* knots) {
  if (x == a || x == b || y == a || y == b) return Real(0);
  const std::span<const Real> t(knots, static_cast<std::size_t>(2 * r + 1));
  return scale * detail::bspline_eval_unchecked(t, x);
}

template double detail::factorial_scale_unchecked<double>(int, double, double,
                                                          double);
template long double detail::factorial_scale_unchecked<long double>(
    int, long double, long double, long double);
template void detail::fill_kernel_knots<double>(int, double, double, double,
                                                double*);
template void detail::fill_kernel_knots<long double>(int, long double,
                                                     long double, long double,
                                                     long double*);
template double detail::kernel_upper<double>(int, double, double, double,
                                             double, double, const double*);
template long double detail::kernel_upper<long double>(
    int, long double, long double, long double, long double, long double,
    const long double*);
template __float128 detail::factorial_scale_unchecked<__float128>(
    int, __float128, __float128, __float128);
template void detail::fill_kernel_knots<__float128>(int, __float128, __float128,
                                                    __float128, __float128*);
template __float128 detail::kernel_upper<__float128>(int, __float128, __float128,
                                                     __float128, __float128,
                                                     __float128,
                                                     const __float128*);

double kernel_eval(const Kernel& k, double x, double y) {
  const Interval& iv = k.interval();
  detail::require(iv.contains(x) && iv.contains(y),
                  "kernel arguments must lie in [a, b]");
  if (x > y) std::swap(x, y);
  if (x == iv.a() || y == iv.b()) return 0.0;
  const int r = k.order();
  const double a = iv.a();
  const double b = iv.b();
  const double scale = detail::factorial_scale_unchecked(r, y, a, b);
  std::vector<double> knots(static_cast<std::size_t>(2 * r + 1));
  detail::fill_kernel_knots(r, a, b, y, knots.data());
  return detail::kernel_upper(r, a, b, x, y, scale, knots.data());
}

} // namespace nwidth
