#pragma once

// Green's function of (-1)^r u^(2r) = f, u^(k)(a) = u^(k)(b) = 0 for k < r,
// built without B-splines. For fixed y,
//   g = sum_j c_j (x-a)^j  on [a, y],   g = sum_j d_j (b-x)^j  on [y, b],
// j = r..2r-1, so the boundary conditions hold by construction. The 2r
// coefficients follow from continuity of derivatives 0..2r-2 at y and a jump
// of (-1)^r in derivative 2r-1, solved by Gaussian elimination.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

class GreenPolynomial {
public:
  GreenPolynomial(int r, double a, double b, double y) : r_(r), a_(a), b_(b) {
    const std::size_t n = 2 * static_cast<std::size_t>(r);
    std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1, 0.0L));
    for (int i = 0; i < 2 * r; ++i) {
      for (int j = r; j < 2 * r; ++j) {
        // Right minus left of derivative i at y.
        m[i][j - r] = -falling(j, i) * pw(y - a_, j - i);
        const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
        m[i][r + j - r] = sign * falling(j, i) * pw(b_ - y, j - i);
      }
      m[i][n] = (i == 2 * r - 1) ? ((r % 2 == 0) ? 1.0L : -1.0L) : 0.0L;
    }
    solve(m);
    for (std::size_t i = 0; i < n; ++i) {
      (i < static_cast<std::size_t>(r) ? left_ : right_).push_back(m[i][n]);
    }
    y_ = y;
  }

  long double operator()(double x) const {
    long double s = 0.0L;
    if (x <= y_) {
      for (int j = r_; j < 2 * r_; ++j) s += left_[j - r_] * pw(x - a_, j);
    } else {
      for (int j = r_; j < 2 * r_; ++j) s += right_[j - r_] * pw(b_ - x, j);
    }
    return s;
  }

private:
  static long double pw(long double base, int e) {
    long double p = 1.0L;
    for (int i = 0; i < e; ++i) p *= base;
    return p;
  }
  // j (j-1) ... (j-i+1); zero when i > j.
  static long double falling(int j, int i) {
    if (i > j) return 0.0L;
    long double p = 1.0L;
    for (int t = 0; t < i; ++t) p *= j - t;
    return p;
  }
  static void solve(std::vector<std::vector<long double>>& m) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
      if (m[piv][c] == 0.0L) throw std::runtime_error("singular oracle system");
      std::swap(m[c], m[piv]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c) continue;
        const long double f = m[i][c] / m[c][c];
        for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) m[i][n] /= m[i][i];
  }

  int r_;
  double a_, b_, y_ = 0.0;
  std::vector<long double> left_, right_;
};

// Closed forms for r = 1, 2 with x <= y.
inline double green_r1(double a, double b, double x, double y) {
  return (x - a) * (b - y) / (b - a);
}
inline double green_r2(double a, double b, double x, double y) {
  const double L = b - a;
  return (x - a) * (x - a) * (b - y) * (b - y) / (6.0 * L * L * L) *
         (L * (y - x) + 2.0 * (b - x) * (y - a));
}

} // namespace oracle
