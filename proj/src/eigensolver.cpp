#include "nwidth/eigensolver.hpp"

#include "nwidth/errors.hpp"

#include "assembly.hpp"
#include "real_math.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace nwidth {

namespace {

namespace math = detail::math;

template <class Real>
struct Tridiag {
  std::vector<Real> diag;
  std::vector<Real> off;
};

// Householder reduction A = Q T Q^T working on the upper triangle of a copy.
// Reflector j acts on coordinates j+1..n-1; its vector (leading 1 included)
// is left in row j of `work`.
template <class Real>
struct Reduction {
  BasicMatrix<Real> work;
  std::vector<Real> tau;
  Tridiag<Real> t;
};

template <class Real>
Reduction<Real> tridiagonalize(const BasicMatrix<Real>& a) {
  const std::size_t n = a.size();
  Reduction<Real> red{a, std::vector<Real>(n > 2 ? n - 2 : 0, Real(0)),
                      {std::vector<Real>(n, Real(0)),
                       std::vector<Real>(n, Real(0))}};
  BasicMatrix<Real>& w = red.work;
  std::vector<Real> p(n), q(n);

  for (std::size_t j = 0; j + 2 < n; ++j) {
    red.t.diag[j] = w(j, j);
    Real* x = w.row(j).data() + j + 1;
    const std::size_t len = n - j - 1;

    Real sigma = 0;
    for (std::size_t i = 1; i < len; ++i) sigma += x[i] * x[i];
    const Real alpha = x[0];
    if (sigma == Real(0)) {
      red.tau[j] = 0;
      red.t.off[j] = alpha;
      x[0] = 1;
      continue;
    }
    const Real norm = math::sqrt(alpha * alpha + sigma);
    const Real beta = alpha <= Real(0) ? norm : -norm;
    const Real tau = (beta - alpha) / beta;
    const Real scale = Real(1) / (alpha - beta);
    x[0] = 1;
    for (std::size_t i = 1; i < len; ++i) x[i] *= scale;
    red.tau[j] = tau;
    red.t.off[j] = beta;

    // p = tau * S v over the trailing block S, read from its upper triangle.
    const std::size_t off = j + 1;
    std::fill(p.begin(), p.begin() + len, Real(0));
    for (std::size_t i = 0; i < len; ++i) {
      const Real* row = w.row(off + i).data() + off;
      const Real vi = x[i];
      Real acc = row[i] * vi;
      for (std::size_t k = i + 1; k < len; ++k) {
        acc += row[k] * x[k];
        p[k] += row[k] * vi;
      }
      p[i] += acc;
    }
    Real pv = 0;
    for (std::size_t i = 0; i < len; ++i) {
      p[i] *= tau;
      pv += p[i] * x[i];
    }
    const Real kfac = Real(-0.5) * tau * pv;
    for (std::size_t i = 0; i < len; ++i) q[i] = p[i] + kfac * x[i];

    // S -= v q^T + q v^T, upper triangle only.
    for (std::size_t i = 0; i < len; ++i) {
      Real* row = w.row(off + i).data() + off;
      const Real vi = x[i];
      const Real qi = q[i];
      for (std::size_t k = i; k < len; ++k) row[k] -= vi * q[k] + qi * x[k];
    }
  }
  if (n >= 2) {
    red.t.diag[n - 2] = w(n - 2, n - 2);
    red.t.off[n - 2] = w(n - 2, n - 1);
  }
  red.t.diag[n - 1] = w(n - 1, n - 1);
  red.t.off[n - 1] = 0;
  return red;
}

template <class Real>
void back_transform(const Reduction<Real>& red, std::vector<Real>& x) {
  const std::size_t n = x.size();
  for (std::size_t jj = red.tau.size(); jj-- > 0;) {
    const Real tau = red.tau[jj];
    if (tau == Real(0)) continue;
    const Real* v = red.work.row(jj).data() + jj + 1;
    Real* y = x.data() + jj + 1;
    const std::size_t len = n - jj - 1;
    Real s = 0;
    for (std::size_t i = 0; i < len; ++i) s += v[i] * y[i];
    s *= tau;
    for (std::size_t i = 0; i < len; ++i) y[i] -= s * v[i];
  }
}

// Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.
template <class Real>
std::vector<Real> ql_eigenvalues(Tridiag<Real> t, std::size_t sweep_budget) {
  const Real eps = math::limits<Real>::epsilon();
  auto& d = t.diag;
  auto& e = t.off;
  const std::size_t n = d.size();
  std::size_t sweeps = 0;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t mm;
    while (true) {
      for (mm = l; mm + 1 < n; ++mm) {
        const Real dd = math::abs(d[mm]) + math::abs(d[mm + 1]);
        if (math::abs(e[mm]) <= eps * dd) break;
      }
      if (mm == l) break;
      if (++sweeps > sweep_budget) {
        throw NumericalError("implicit QL iteration exceeded its budget of " +
                             std::to_string(sweep_budget) + " sweeps");
      }
      Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
      Real r = math::hypot(g, Real(1));
      g = d[mm] - d[l] + e[l] / (g + math::copysign(r, g));
      Real s = 1, c = 1, p = 0;
      bool underflow = false;
      for (std::size_t i = mm; i-- > l;) {
        const Real f = s * e[i];
        const Real b = c * e[i];
        r = math::hypot(f, g);
        e[i + 1] = r;
        if (r == Real(0)) {
          d[i + 1] -= p;
          e[mm] = 0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + Real(2) * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[mm] = 0;
    }
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

// Deterministic start vectors for inverse iteration (splitmix64).
template <class Real>
std::vector<Real> start_vector(std::size_t n, std::uint64_t seed) {
  std::vector<Real> v(n);
  std::uint64_t state = seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull;
  for (auto& e : v) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    e = static_cast<Real>(static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5);
  }
  return v;
}

// LU factorization with partial pivoting of T - shift I.
template <class Real>
class ShiftedTridiagonalLU {
public:
  ShiftedTridiagonalLU(const Tridiag<Real>& t, Real shift, Real tiny)
      : u0_(t.diag.size()), u1_(t.diag.size(), Real(0)),
        u2_(t.diag.size(), Real(0)), mult_(t.diag.size(), Real(0)),
        swap_(t.diag.size(), false) {
    const std::size_t n = u0_.size();
    for (std::size_t i = 0; i < n; ++i) u0_[i] = t.diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) u1_[i] = t.off[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Real below = t.off[i];
      if (math::abs(u0_[i]) >= math::abs(below)) {
        if (u0_[i] == Real(0)) u0_[i] = tiny;
        mult_[i] = below / u0_[i];
        u0_[i + 1] -= mult_[i] * u1_[i];
      } else {
        const Real m = u0_[i] / below;
        const Real next_diag = u0_[i + 1];
        const Real next_super = i + 2 < n ? u1_[i + 1] : Real(0);
        mult_[i] = m;
        swap_[i] = true;
        u0_[i + 1] = u1_[i] - m * next_diag;
        u0_[i] = below;
        u1_[i] = next_diag;
        u2_[i] = next_super;
        if (i + 2 < n) u1_[i + 1] = -m * next_super;
      }
    }
    for (auto& d : u0_) {
      if (math::abs(d) < tiny) d = d < Real(0) ? -tiny : tiny;
    }
  }

  void solve(std::vector<Real>& y) const {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swap_[i]) std::swap(y[i], y[i + 1]);
      y[i + 1] -= mult_[i] * y[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      Real s = y[i];
      if (i + 1 < n) s -= u1_[i] * y[i + 1];
      if (i + 2 < n) s -= u2_[i] * y[i + 2];
      y[i] = s / u0_[i];
    }
  }

private:
  std::vector<Real> u0_, u1_, u2_, mult_;
  std::vector<bool> swap_;
};

template <class Real>
Real norm2(const std::vector<Real>& v) {
  using W = math::wide_t<Real>;
  W s = 0;
  for (Real e : v) s += static_cast<W>(e) * e;
  return static_cast<Real>(math::sqrt(s));
}

template <class Real>
void scale(std::vector<Real>& v, Real f) {
  for (auto& e : v) e *= f;
}

template <class Real>
std::vector<Real> tridiagonal_eigenvector(
    const Tridiag<Real>& t, Real lambda, Real tnorm, std::size_t rank,
    const std::vector<const std::vector<Real>*>& cluster) {
  const Real eps = math::limits<Real>::epsilon();
  const std::size_t n = t.diag.size();
  ShiftedTridiagonalLU<Real> lu(t, lambda, eps * tnorm);
  std::vector<Real> y = start_vector<Real>(n, rank);
  scale(y, Real(1) / norm2(y));
  // Converged once one solve amplifies by this much; then one extra sweep.
  const Real growth_target =
      Real(0.1) / (math::sqrt(static_cast<Real>(n)) * eps);
  int extra = -1;
  for (int it = 0; it < 8 && extra != 0; ++it) {
    lu.solve(y);
    for (const auto* u : cluster) {
      Real d = 0;
      for (std::size_t i = 0; i < n; ++i) d += (*u)[i] * y[i];
      for (std::size_t i = 0; i < n; ++i) y[i] -= d * (*u)[i];
    }
    const Real nrm = norm2(y);
    if (!(nrm > Real(0)) || !math::isfinite(nrm)) {
      throw NumericalError("inverse iteration broke down for eigenvalue rank " +
                           std::to_string(rank));
    }
    if (extra > 0) --extra;
    if (extra < 0 && nrm >= growth_target) extra = 1;
    scale(y, Real(1) / nrm);
  }
  return y;
}

template <class Real>
std::vector<Eigenpair> solve_top(const BasicMatrix<Real>& a, std::size_t count,
                                 double tol_res, Precision tag,
                                 bool require_separation) {
  const Real eps = math::limits<Real>::epsilon();
  const std::size_t n = a.size();
  detail::require(n >= 1, "matrix is empty");
  detail::require(count >= 1 && count <= n,
                  "eigenpair count must lie in [1, " + std::to_string(n) + "]");
  detail::require(tol_res > 0.0, "residual tolerance must be positive");

  const Reduction<Real> red = tridiagonalize(a);
  Real tnorm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tnorm = std::max(tnorm, math::abs(red.t.diag[i]) +
                                Real(2) * math::abs(red.t.off[i]));
  }
  const std::vector<Real> spectrum = ql_eigenvalues(red.t, 30 * n);
  const double fro = a.frobenius_norm();
  const Real spectral =
      std::max(math::abs(spectrum.front()), math::abs(spectrum.back()));

  std::vector<Eigenpair> pairs;
  pairs.reserve(count);
  std::vector<std::vector<Real>> tri_vectors;
  tri_vectors.reserve(count);
  using W = math::wide_t<Real>;
  std::vector<W> av(n);
  for (std::size_t k = 0; k < count; ++k) {
    const Real lambda = spectrum[k];
    std::vector<const std::vector<Real>*> cluster;
    for (std::size_t j = 0; j < k; ++j) {
      if (math::abs(spectrum[j] - lambda) < Real(1e-3) * tnorm) {
        cluster.push_back(&tri_vectors[j]);
      }
    }
    std::vector<Real> y =
        tridiagonal_eigenvector(red.t, lambda, tnorm, k + 1, cluster);
    tri_vectors.push_back(y);
    back_transform(red, y);
    scale(y, Real(1) / norm2(y));

    // Rayleigh quotient and residual with extended-precision accumulation.
    W quotient = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = a.row(i);
      W s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        s += static_cast<W>(row[j]) * y[j];
      }
      av[i] = s;
      quotient += s * y[i];
    }
    W ynorm2 = 0;
    for (Real v : y) ynorm2 += static_cast<W>(v) * v;
    quotient /= ynorm2;
    W res2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const W rr = av[i] - quotient * y[i];
      res2 += rr * rr;
    }
    const double residual = static_cast<double>(math::sqrt(res2 / ynorm2));
    if (!(residual <= tol_res * fro)) {
      throw NumericalError("eigenpair " + std::to_string(k + 1) +
                           " residual " + std::to_string(residual) +
                           " exceeds tolerance " +
                           std::to_string(tol_res * fro));
    }

    Real gap = math::limits<Real>::infinity();
    if (k > 0) gap = std::min(gap, spectrum[k - 1] - lambda);
    if (k + 1 < n) gap = std::min(gap, lambda - spectrum[k + 1]);

    Real vmax = 0;
    for (Real v : y) vmax = std::max(vmax, math::abs(v));
    // Backward error of order sqrt(n) eps ||A|| spread over the gap.
    const Real vec_err = math::sqrt(static_cast<Real>(n)) * eps * spectral /
                         std::max(gap, eps * spectral);
    const double noise = std::min(1.0, static_cast<double>(vec_err / vmax));

    Eigenpair pair;
    pair.index = static_cast<int>(k + 1);
    pair.value = static_cast<double>(quotient);
    pair.noise_floor = noise;
    pair.precision = tag;
    pair.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pair.vector[i] = static_cast<double>(y[i] / vmax);
    }
    const double significant = significance_floor(pair);
    for (double v : pair.vector) {
      if (math::abs(v) > significant) {
        if (v < 0.0) {
          for (auto& e : pair.vector) e = -e;
        }
        break;
      }
    }
    pairs.push_back(std::move(pair));
  }

  for (std::size_t k = 1; require_separation && k < pairs.size(); ++k) {
    const double upper = pairs[k - 1].value;
    const double lower = pairs[k].value;
    if (!(upper - lower > 1e-13 * math::abs(upper))) {
      throw NumericalError("eigenvalues " + std::to_string(k) + " and " +
                           std::to_string(k + 1) +
                           " are not strictly separated");
    }
  }
  return pairs;
}

} // namespace

std::vector<double> detail::tridiagonal_eigenvalues(Tridiagonal t,
                                                    std::size_t sweep_budget) {
  return ql_eigenvalues(Tridiag<double>{std::move(t.diag), std::move(t.off)},
                        sweep_budget);
}

std::vector<Eigenpair> top_eigenpairs(const Matrix& a, std::size_t count,
                                      double tol_res, bool require_separation) {
  return solve_top(a, count, tol_res, Precision::Double, require_separation);
}

std::vector<Eigenpair> top_eigenpairs(const ExtendedMatrix& a,
                                      std::size_t count, double tol_res,
                                      bool require_separation) {
  return solve_top(a, count, tol_res, Precision::Extended, require_separation);
}

std::vector<Eigenpair> top_eigenpairs(const NystromSystem& sys,
                                      std::size_t count, double tol_res,
                                      Precision precision,
                                      bool require_separation) {
  const auto noisy = [](const std::vector<Eigenpair>& pairs) {
    return std::any_of(pairs.begin(), pairs.end(), [](const Eigenpair& p) {
      return p.noise_floor > kAutoNoiseThreshold;
    });
  };
  const auto extended = [&] {
    return solve_top(detail::assemble_as<long double>(sys), count, tol_res,
                     Precision::Extended, require_separation);
  };
  const auto quad = [&] {
    return solve_top(detail::assemble_as<__float128>(sys), count, tol_res,
                     Precision::Quad, require_separation);
  };
  switch (precision) {
    case Precision::Double:
      return top_eigenpairs(sys.matrix(), count, tol_res, require_separation);
    case Precision::Extended: return extended();
    case Precision::Quad: return quad();
    case Precision::Auto: break;
  }
  auto pairs = top_eigenpairs(sys.matrix(), count, tol_res, require_separation);
  if (!noisy(pairs)) return pairs;
  pairs = extended();
  if (!noisy(pairs)) return pairs;
  return quad();
}

std::vector<double> eigenfunction_values(const Eigenpair& p, const Grid& grid) {
  detail::require(p.vector.size() == grid.interior_count(),
                  "eigenvector length does not match the grid");
  std::vector<double> out;
  out.reserve(p.vector.size() + 2);
  out.push_back(0.0);
  out.insert(out.end(), p.vector.begin(), p.vector.end());
  out.push_back(0.0);
  return out;
}

std::size_t count_sign_changes(const std::vector<double>& samples,
                               double floor) {
  std::size_t changes = 0;
  int last = 0;
  for (double v : samples) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

} // namespace nwidth
