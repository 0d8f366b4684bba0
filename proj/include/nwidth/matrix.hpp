#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace nwidth {

/// Dense square row-major matrix.
template <class Real>
class BasicMatrix {
public:
  BasicMatrix() = default;
  explicit BasicMatrix(std::size_t n) : n_(n), data_(n * n, Real(0)) {}

  std::size_t size() const { return n_; }

  Real& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  Real operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  std::span<Real> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const Real> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  std::span<const Real> data() const { return data_; }

  double frobenius_norm() const {
    long double sum = 0.0L;
    for (Real v : data_) sum += static_cast<long double>(v) * v;
    return static_cast<double>(std::sqrt(sum));
  }

private:
  std::size_t n_ = 0;
  std::vector<Real> data_;
};

using Matrix = BasicMatrix<double>;
/// Same layout in x87 extended precision (64-bit significand).
using ExtendedMatrix = BasicMatrix<long double>;

} // namespace nwidth
