#include "nwidth/bspline.hpp"

#include "nwidth/errors.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>

namespace nwidth {

namespace {

void validate(std::span<const double> t) {
  detail::require(t.size() >= 2, "B-spline needs at least two knots");
  for (std::size_t i = 1; i < t.size(); ++i) {
    detail::require(t[i - 1] <= t[i],
                    "knot sequence is not nondecreasing at index " +
                        std::to_string(i));
  }
  detail::require(t.front() < t.back(), "knot sequence has all knots equal");
}

// Index s of the knot interval used for evaluation: t[s] <= x < t[s+1], or
// t[s] < x <= t[s+1] when x is the last knot (left limit).
template <class Real>
std::size_t find_span(std::span<const Real> t, Real x) {
  const std::size_t last = t.size() - 1;
  if (x >= t[last]) {
    std::size_t s = last - 1;
    while (t[s] >= t[last]) --s;
    return s;
  }
  auto it = std::upper_bound(t.begin(), t.end(), x);
  return static_cast<std::size_t>(it - t.begin()) - 1;
}

// Triangular Cox-de Boor scheme restricted to the single B-spline: only the
// degree-0 function on the span of x starts nonzero, and basis functions
// that would need knots beyond the ends never feed the result.
template <class Real>
Real cox_de_boor(std::span<const Real> t, Real x, Real* work) {
  const std::size_t p = t.size() - 2;
  const std::size_t s = find_span(t, x);
  std::fill(work, work + p + 1, Real(0));
  work[s] = Real(1);
  for (std::size_t k = 1; k <= p; ++k) {
    const std::size_t lo = s >= k ? s - k : 0;
    const std::size_t hi = std::min(s, p - k);
    for (std::size_t i = lo; i <= hi; ++i) {
      const Real dl = t[i + k] - t[i];
      const Real dr = t[i + k + 1] - t[i + 1];
      const Real left = dl > Real(0) ? (x - t[i]) / dl * work[i] : Real(0);
      const Real right =
          dr > Real(0) ? (t[i + k + 1] - x) / dr * work[i + 1] : Real(0);
      work[i] = left + right;
    }
  }
  return work[0];
}

} // namespace

KnotVector::KnotVector(std::vector<double> knots) : knots_(std::move(knots)) {
  validate(knots_);
}

double bspline_eval(const KnotVector& knots, double x) {
  return detail::bspline_eval_unchecked(knots.knots(), x);
}

double bspline_eval(std::span<const double> knots, double x) {
  validate(knots);
  return detail::bspline_eval_unchecked(knots, x);
}

template <class Real>
Real detail::bspline_eval_unchecked(std::span<const Real> t, Real x) {
  if (!(x >= t.front() && x <= t.back())) return Real(0);
  const std::size_t n = t.size() - 1;
  if (n <= 64) {
    std::array<Real, 64> work;
    return cox_de_boor(t, x, work.data());
  }
  std::vector<Real> work(n);
  return cox_de_boor(t, x, work.data());
}

template double detail::bspline_eval_unchecked<double>(std::span<const double>,
                                                       double);
template long double detail::bspline_eval_unchecked<long double>(
    std::span<const long double>, long double);
template __float128 detail::bspline_eval_unchecked<__float128>(
    std::span<const __float128>, __float128);

} // namespace nwidth
