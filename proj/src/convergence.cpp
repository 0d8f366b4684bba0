#include "nwidth/convergence.hpp"

#include "nwidth/errors.hpp"
#include "nwidth/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace nwidth {

namespace {

struct Line {
  double slope;
  double intercept;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {slope, my - slope * mx};
}

// d_n for every n in n_list on m interior nodes.
std::vector<double> widths_on_mesh(int r, const std::vector<int>& n_list,
                                   std::size_t m, const Interval& iv,
                                   double tol_res, Precision precision) {
  const int n_max = *std::max_element(n_list.begin(), n_list.end());
  const auto count = static_cast<std::size_t>(n_max + 1 - r);
  detail::require(count <= m, "mesh with m=" + std::to_string(m) +
                                  " cannot resolve rank " +
                                  std::to_string(count));
  const NystromSystem sys = assemble(Kernel(r, iv), build_grid(iv, m));
  const auto pairs =
      top_eigenpairs(sys, count, tol_res, precision, false);
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    const double lambda = pairs[static_cast<std::size_t>(n - r)].value;
    out.push_back(lambda > 0.0 ? std::sqrt(lambda)
                               : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

} // namespace

std::size_t nodes_for_spacing(const Interval& iv, double h) {
  detail::require(h > 0.0 && h < iv.length(),
                  "mesh size h must lie in (0, b-a)");
  const double segments = std::round(iv.length() / h);
  detail::require(segments >= 2.0, "mesh size h leaves no interior node");
  detail::require(std::abs(iv.length() / segments - h) <= 1e-12 * h,
                  "mesh size h=" + std::to_string(h) +
                      " is not (b-a)/(m+1) for an integer m");
  return static_cast<std::size_t>(segments) - 1;
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err,
                   double reference, double unit_roundoff) {
  detail::require(h.size() == err.size(), "h and error lists differ in length");
  const double plateau = kPlateauFactor * unit_roundoff * std::abs(reference);
  std::vector<std::size_t> order(h.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return h[i] > h[j]; });

  OrderFit fit;
  std::vector<double> lx, ly;
  for (std::size_t idx : order) {
    if (!(err[idx] > plateau) || !std::isfinite(err[idx])) {
      ++fit.plateau_points;
      continue;
    }
    lx.push_back(std::log(h[idx]));
    ly.push_back(std::log(err[idx]));
  }
  if (lx.size() < 2) {
    fit.points_used = lx.size();
    fit.few_points = true;
    fit.order = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  Line line = least_squares(lx, ly);
  if (lx.size() >= 3) {
    const double predicted = std::exp(line.intercept + line.slope * lx.front());
    const double observed = std::exp(ly.front());
    if (std::abs(observed / predicted - 1.0) > kCoarseMisfit) {
      lx.erase(lx.begin());
      ly.erase(ly.begin());
      line = least_squares(lx, ly);
      fit.dropped_coarsest = true;
    }
  }
  fit.order = line.slope;
  fit.points_used = lx.size();
  fit.few_points = lx.size() < 3;
  return fit;
}

ConvergenceStudy run_study(int r, const std::vector<int>& n_list,
                           const std::vector<double>& h_list, double h_ref,
                           const Interval& iv, Reference reference,
                           double tol_res, Precision precision) {
  detail::require(precision != Precision::Auto,
                  "convergence studies need an explicit precision");
  detail::require(r >= 1, "derivative order r must satisfy r >= 1");
  detail::require(!n_list.empty(), "n list is empty");
  detail::require(!h_list.empty(), "h list is empty");
  for (int n : n_list) {
    detail::require(n >= r, "every n must satisfy n >= r");
  }
  detail::require(reference != Reference::Analytic || r == 1,
                  "the analytic reference exists only for r = 1");

  ConvergenceStudy study;
  study.r = r;
  study.reference = reference;
  study.n_list = n_list;
  study.h_list = h_list;
  for (double h : h_list) study.m_list.push_back(nodes_for_spacing(iv, h));

  if (reference == Reference::Mesh) {
    for (double h : h_list) {
      detail::require(h_ref < h,
                      "reference mesh size must be smaller than every h");
    }
    study.reference_h = h_ref;
    study.reference_dn =
        widths_on_mesh(r, n_list, nodes_for_spacing(iv, h_ref), iv, tol_res,
                       precision);
  } else {
    for (int n : n_list) {
      study.reference_dn.push_back(iv.length() / (n * std::numbers::pi));
    }
  }

  study.errors.assign(n_list.size(), std::vector<double>(h_list.size(), 0.0));
  for (std::size_t j = 0; j < h_list.size(); ++j) {
    const auto dn = widths_on_mesh(r, n_list, study.m_list[j], iv, tol_res, precision);
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      study.errors[i][j] = std::abs(dn[i] - study.reference_dn[i]);
    }
  }
  double roundoff = std::numeric_limits<double>::epsilon();
  if (precision == Precision::Extended) {
    roundoff = static_cast<double>(std::numeric_limits<long double>::epsilon());
  } else if (precision == Precision::Quad) {
    roundoff = 0x1p-112;
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    study.fits.push_back(fit_order(study.h_list, study.errors[i],
                                   study.reference_dn[i], roundoff));
  }
  return study;
}

} // namespace nwidth
