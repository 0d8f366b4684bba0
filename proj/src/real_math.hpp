#pragma once

// Elementary functions and limits for the floating types the numerical
// templates are instantiated with: double, long double and __float128.

#include <cmath>
#include <limits>
#include <type_traits>

#include <quadmath.h>

namespace nwidth::detail::math {

using quad = __float128;

template <class Real>
struct limits {
  static constexpr Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static constexpr Real infinity() { return std::numeric_limits<Real>::infinity(); }
};

template <>
struct limits<quad> {
  static constexpr quad epsilon() { return static_cast<quad>(0x1p-112); }
  static quad infinity() { return __builtin_infq(); }
};

/// Accumulator at least as wide as long double.
template <class Real>
using wide_t = std::conditional_t<std::is_same_v<Real, quad>, quad, long double>;

inline double sqrt(double x) { return std::sqrt(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline quad sqrt(quad x) { return sqrtq(x); }

inline double abs(double x) { return std::fabs(x); }
inline long double abs(long double x) { return std::fabs(x); }
inline quad abs(quad x) { return fabsq(x); }

inline double hypot(double x, double y) { return std::hypot(x, y); }
inline long double hypot(long double x, long double y) { return std::hypot(x, y); }
inline quad hypot(quad x, quad y) { return hypotq(x, y); }

inline double copysign(double x, double y) { return std::copysign(x, y); }
inline long double copysign(long double x, long double y) { return std::copysign(x, y); }
inline quad copysign(quad x, quad y) { return copysignq(x, y); }

inline bool isfinite(double x) { return std::isfinite(x); }
inline bool isfinite(long double x) { return std::isfinite(x); }
inline bool isfinite(quad x) { return finiteq(x) != 0; }

} // namespace nwidth::detail::math
