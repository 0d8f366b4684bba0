#pragma once

#include "nwidth/matrix.hpp"
#include "nwidth/nystrom.hpp"

#include <cstddef>
#include <vector>

namespace nwidth {

inline constexpr double kDefaultResidualTol = 1e-10;

/// Arithmetic used for assembly and eigensolve. Extended is long double,
/// Quad is 113-bit binary128. Auto starts in double and moves up one level
/// while a requested eigenvector's noise floor exceeds kAutoNoiseThreshold
/// (eigenvalues tiny relative to lambda_1).
enum class Precision { Double, Extended, Auto, Quad };

inline constexpr double kAutoNoiseThreshold = 1e-8;

/// One eigenpair of a symmetric matrix, ranked by descending eigenvalue.
struct Eigenpair {
  /// 1-based rank.
  int index = 0;
  double value = 0.0;
  /// Interior node values; max |entry| == 1 and the leading significant
  /// entry is positive.
  std::vector<double> vector;
  /// Estimated absolute rounding error of the normalized entries. Entries
  /// below this level carry no reliable sign.
  double noise_floor = 0.0;
  /// Arithmetic that produced this pair (never Auto).
  Precision precision = Precision::Double;
};

/// Largest `count` eigenpairs of the symmetric matrix `a`.
///
/// Householder tridiagonalization, implicit-shift QL for the tridiagonal
/// spectrum, inverse iteration for the requested vectors, back transformation,
/// then a Rayleigh-quotient refinement of each eigenvalue in extended
/// precision. Every pair is checked against
///   ||A v - lambda v||_2 <= tol_res * ||A||_F ||v||_2.
///
/// Throws InvalidArgument if count is 0 or exceeds the matrix size, and
/// NumericalError if the QL iteration budget (30 sweeps per eigenvalue) is
/// exhausted, a residual check fails, or two consecutive eigenvalues tie
/// within 1e-13 of their magnitude.
std::vector<Eigenpair> top_eigenpairs(const Matrix& a, std::size_t count,
                                      double tol_res = kDefaultResidualTol,
                                      bool require_separation = true);

std::vector<Eigenpair> top_eigenpairs(const ExtendedMatrix& a,
                                      std::size_t count,
                                      double tol_res = kDefaultResidualTol,
                                      bool require_separation = true);

/// `require_separation = false` skips the tie check so callers can flag
/// precision-limited spectra instead of failing.
std::vector<Eigenpair> top_eigenpairs(const NystromSystem& sys,
                                      std::size_t count,
                                      double tol_res = kDefaultResidualTol,
                                      Precision precision = Precision::Double,
                                      bool require_separation = true);

/// Magnitude below which entries of p.vector are treated as sign-less.
inline double significance_floor(const Eigenpair& p) {
  return 10.0 * p.noise_floor > 1e-12 ? 10.0 * p.noise_floor : 1e-12;
}

/// Samples over xi_0..xi_{m+1}: the eigenvector with a zero prepended and
/// appended (Dirichlet boundary values).
std::vector<double> eigenfunction_values(const Eigenpair& p, const Grid& grid);

/// Number of sign changes among entries whose magnitude exceeds `floor`.
std::size_t count_sign_changes(const std::vector<double>& samples,
                               double floor);

namespace detail {

struct Tridiagonal {
  std::vector<double> diag;
  /// off[i] couples i and i+1; off.size() == diag.size() (last entry 0).
  std::vector<double> off;
};

/// All eigenvalues of a symmetric tridiagonal matrix, descending.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t,
                                            std::size_t sweep_budget);

} // namespace detail
} // namespace nwidth
