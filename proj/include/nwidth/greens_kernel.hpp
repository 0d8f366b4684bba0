#pragma once

namespace nwidth {

/// Largest derivative order accepted without an explicit override.
inline constexpr int kMaxOrder = 20;

/// Open interval (a, b), a < b, both finite.
class Interval {
public:
  Interval(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  bool contains(double x) const { return x >= a_ && x <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  double a_;
  double b_;
};

/// Green's function of the order-2r Dirichlet problem
///   (-1)^r phi^(2r) = mu phi,  phi^(k)(a) = phi^(k)(b) = 0, k < r,
/// written as a scaled B-spline with r-fold end knots and one knot at y.
class Kernel {
public:
  /// Throws InvalidArgument for r < 1, or r > kMaxOrder unless allow_large_r.
  Kernel(int r, Interval interval, bool allow_large_r = false);

  int order() const { return r_; }
  const Interval& interval() const { return interval_; }
  bool allows_large_order() const { return allow_large_r_; }

  /// g(x, y); see kernel_eval.
  double operator()(double x, double y) const;

private:
  int r_;
  Interval interval_;
  bool allow_large_r_;
};

/// g(x, y) for x, y in [a, b]. For x <= y the B-spline form is evaluated
/// directly; for x > y the arguments are swapped, so g is exactly symmetric.
/// Exactly 0 when x or y is an endpoint. Throws InvalidArgument outside [a, b].
double kernel_eval(const Kernel& k, double x, double y);

/// (y-a)^r (b-y)^r / ((2r-1)! (b-a)), with multiplications and divisions
/// interleaved so intermediate values stay in range for r <= 20.
double factorial_scale(int r, double y, const Interval& iv,
                       bool allow_large_r = false);

namespace detail {
// The helpers below are instantiated for double and long double.

/// Fills knots[0..2r] with a (r times), y, b (r times).
template <class Real>
void fill_kernel_knots(int r, Real a, Real b, Real y, Real* knots);
/// g(x, y) for a <= x <= y <= b with knots already filled for this y.
template <class Real>
Real kernel_upper(int r, Real a, Real b, Real x, Real y, Real scale,
                  const Real* knots);
template <class Real>
Real factorial_scale_unchecked(int r, Real y, Real a, Real b);
} // namespace detail

} // namespace nwidth
