#pragma once

#include <span>
#include <vector>

namespace nwidth {

/// Knot sequence defining one B-spline of degree size() - 2.
class KnotVector {
public:
  /// Throws InvalidArgument unless the knots are nondecreasing, there are at
  /// least two of them and they are not all equal.
  explicit KnotVector(std::vector<double> knots);

  std::span<const double> knots() const { return knots_; }
  int degree() const { return static_cast<int>(knots_.size()) - 2; }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

private:
  std::vector<double> knots_;
};

/// Value at x of the B-spline with the given knot sequence (Cox-de Boor
/// recurrence, 0/0 := 0). Right-continuous at interior knots; at the last
/// knot the left limit is returned. Zero outside [front, back].
double bspline_eval(const KnotVector& knots, double x);

/// Same as above on an unvalidated view; validation happens here.
double bspline_eval(std::span<const double> knots, double x);

namespace detail {
/// Unchecked evaluation used by hot loops. Knots must already be valid.
/// Instantiated for double and long double.
template <class Real>
Real bspline_eval_unchecked(std::span<const Real> knots, Real x);
} // namespace detail

} // namespace nwidth
