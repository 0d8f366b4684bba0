#include "nwidth/nwidth.h"

#include "nwidth/bspline.hpp"
#include "nwidth/convergence.hpp"
#include "nwidth/eigensolver.hpp"
#include "nwidth/errors.hpp"
#include "nwidth/greens_kernel.hpp"
#include "nwidth/knots.hpp"
#include "nwidth/nwidths.hpp"
#include "nwidth/nystrom.hpp"
#include "nwidth/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>
#include <system_error>
#include <vector>

struct nwidth_system {
  nwidth::NystromSystem sys;
};

struct nwidth_spectrum {
  nwidth::Grid grid;
  int r;
  std::vector<nwidth::Eigenpair> pairs;
};

struct nwidth_study {
  nwidth::ConvergenceStudy study;
};

namespace {

thread_local std::string g_last_error;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nwidth_status fail(nwidth_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class F>
nwidth_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return NWIDTH_OK;
  } catch (const nwidth::InvalidArgument& e) {
    return fail(NWIDTH_INVALID_ARGUMENT, e.what());
  } catch (const nwidth::NumericalError& e) {
    return fail(NWIDTH_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(NWIDTH_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NWIDTH_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NWIDTH_INTERNAL, e.what());
  } catch (...) {
    return fail(NWIDTH_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) {
    throw nwidth::InvalidArgument(std::string(name) + " must not be null");
  }
}

void need_capacity(size_t capacity, size_t required) {
  if (capacity < required) {
    throw nwidth::InvalidArgument("output buffer holds " +
                                  std::to_string(capacity) + " values, " +
                                  std::to_string(required) + " needed");
  }
}

nwidth::Precision to_precision(nwidth_precision p) {
  switch (p) {
    case NWIDTH_PRECISION_DOUBLE: return nwidth::Precision::Double;
    case NWIDTH_PRECISION_EXTENDED: return nwidth::Precision::Extended;
    case NWIDTH_PRECISION_AUTO: return nwidth::Precision::Auto;
    case NWIDTH_PRECISION_QUAD: return nwidth::Precision::Quad;
  }
  throw nwidth::InvalidArgument("unknown precision selector");
}

const nwidth::Eigenpair& pair_at(const nwidth_spectrum* spec, int rank) {
  need(spec, "spectrum");
  if (rank < 1 || static_cast<size_t>(rank) > spec->pairs.size()) {
    throw nwidth::InvalidArgument("rank " + std::to_string(rank) +
                                  " outside 1.." +
                                  std::to_string(spec->pairs.size()));
  }
  return spec->pairs[static_cast<size_t>(rank - 1)];
}

nwidth_result to_c(const nwidth::NWidthResult& row) {
  nwidth_result out{};
  out.r = row.r;
  out.n = row.n;
  out.m = row.m;
  out.d_n = row.d_n;
  out.dn_inv_r = row.dn_inv_r;
  out.lower = row.lower;
  out.upper = row.upper;
  out.conjecture = row.conjecture;
  out.rel_err = row.rel_err;
  out.flag = static_cast<nwidth_flag>(row.flag);
  return out;
}

void copy_rows(const std::vector<nwidth::NWidthResult>& rows,
               nwidth_result* out, size_t capacity) {
  need_capacity(capacity, rows.size());
  std::transform(rows.begin(), rows.end(), out, to_c);
}

// Writes through a sibling temporary so readers never see a partial file.
template <class F>
void write_atomically(const char* path, F&& emit) {
  need(path, "path");
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    emit(os);
    os.flush();
    if (!os) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + target.string());
  }
}

} // namespace

extern "C" {

const char* nwidth_last_error(void) { return g_last_error.c_str(); }

const char* nwidth_version(void) { return "1.0.0"; }

const char* nwidth_flag_name(nwidth_flag flag) {
  switch (flag) {
    case NWIDTH_FLAG_OK: return "ok";
    case NWIDTH_FLAG_PRECISION_LIMITED: return "precision-limited";
    case NWIDTH_FLAG_NONPOSITIVE: return "nonpositive";
    case NWIDTH_FLAG_NON_MONOTONE: return "non-monotone";
  }
  return "unknown";
}

nwidth_status nwidth_set_threads(int threads) {
  return guarded([&] {
    nwidth::detail::require(threads >= 0, "thread count must be >= 0");
    nwidth::set_thread_count(threads);
  });
}

nwidth_status nwidth_bspline_eval(const double* knots, size_t count, double x,
                                  double* out) {
  return guarded([&] {
    need(knots, "knots");
    need(out, "out");
    *out = nwidth::bspline_eval(std::span<const double>(knots, count), x);
  });
}

nwidth_status nwidth_kernel_eval(int r, double a, double b, double x,
                                 double y, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = nwidth::kernel_eval(nwidth::Kernel(r, nwidth::Interval(a, b)), x, y);
  });
}

nwidth_status nwidth_theorem1_bounds(int r, int n, double a, double b,
                                     double* lower, double* upper) {
  return guarded([&] {
    need(lower, "lower");
    need(upper, "upper");
    const auto bounds = nwidth::theorem1_bounds(r, n, nwidth::Interval(a, b));
    *lower = bounds.lower;
    *upper = bounds.upper;
  });
}

nwidth_status nwidth_conjecture_value(int r, int n, double a, double b,
                                      double* out) {
  return guarded([&] {
    need(out, "out");
    *out = nwidth::conjecture_value(r, n, nwidth::Interval(a, b));
  });
}

nwidth_status nwidth_dn_from_eigenvalue(double lambda, int n, int r,
                                        double* out) {
  return guarded([&] {
    need(out, "out");
    *out = nwidth::dn_from_eigenvalue(lambda, n, r);
  });
}

nwidth_status nwidth_system_create(int r, double a, double b, size_t m,
                                   nwidth_system** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const nwidth::Interval iv(a, b);
    *out = new nwidth_system{
        nwidth::assemble(nwidth::Kernel(r, iv), nwidth::build_grid(iv, m))};
  });
}

void nwidth_system_destroy(nwidth_system* sys) { delete sys; }

size_t nwidth_system_size(const nwidth_system* sys) {
  return sys ? sys->sys.size() : 0;
}

double nwidth_system_spacing(const nwidth_system* sys) {
  return sys ? sys->sys.grid().spacing() : 0.0;
}

nwidth_status nwidth_system_nodes(const nwidth_system* sys, double* out,
                                  size_t capacity) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    const auto nodes = sys->sys.grid().nodes();
    need_capacity(capacity, nodes.size());
    std::copy(nodes.begin(), nodes.end(), out);
  });
}

nwidth_status nwidth_system_write_matrix(const nwidth_system* sys,
                                         const char* path) {
  return guarded([&] {
    need(sys, "system");
    write_atomically(path, [&](std::ostream& os) {
      nwidth::write_matrix(os, sys->sys.matrix());
    });
  });
}

nwidth_status nwidth_spectrum_compute(const nwidth_system* sys, size_t count,
                                      double tol_res,
                                      nwidth_precision precision,
                                      nwidth_spectrum** out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    *out = nullptr;
    auto pairs = nwidth::top_eigenpairs(sys->sys, count, tol_res,
                                        to_precision(precision));
    *out = new nwidth_spectrum{sys->sys.grid(), sys->sys.kernel().order(),
                               std::move(pairs)};
  });
}

void nwidth_spectrum_destroy(nwidth_spectrum* spec) { delete spec; }

size_t nwidth_spectrum_count(const nwidth_spectrum* spec) {
  return spec ? spec->pairs.size() : 0;
}

nwidth_status nwidth_spectrum_value(const nwidth_spectrum* spec, int rank,
                                    double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pair_at(spec, rank).value;
  });
}

nwidth_status nwidth_spectrum_noise_floor(const nwidth_spectrum* spec,
                                          int rank, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pair_at(spec, rank).noise_floor;
  });
}

nwidth_status nwidth_spectrum_vector(const nwidth_spectrum* spec, int rank,
                                     double* out, size_t capacity) {
  return guarded([&] {
    need(out, "out");
    const auto& v = pair_at(spec, rank).vector;
    need_capacity(capacity, v.size());
    std::copy(v.begin(), v.end(), out);
  });
}

nwidth_status nwidth_spectrum_eigenfunction(const nwidth_spectrum* spec,
                                            int rank, double* out,
                                            size_t capacity) {
  return guarded([&] {
    need(out, "out");
    const auto s = nwidth::eigenfunction_values(pair_at(spec, rank), spec->grid);
    need_capacity(capacity, s.size());
    std::copy(s.begin(), s.end(), out);
  });
}

nwidth_status nwidth_spectrum_write_eigenfunction(const nwidth_spectrum* spec,
                                                  int rank, const char* path) {
  return guarded([&] {
    const auto& p = pair_at(spec, rank);
    write_atomically(path, [&](std::ostream& os) {
      nwidth::eigenfunction_dump(os, p, spec->grid);
    });
  });
}

nwidth_status nwidth_spectrum_knots(const nwidth_spectrum* spec, int rank,
                                    double tol, double* out, size_t capacity,
                                    size_t* written) {
  return guarded([&] {
    need(written, "written");
    *written = 0;
    const auto report =
        nwidth::extract_knots(pair_at(spec, rank), spec->grid, spec->r, tol);
    if (!report.zeros.empty()) need(out, "out");
    need_capacity(capacity, report.zeros.size());
    std::copy(report.zeros.begin(), report.zeros.end(), out);
    *written = report.zeros.size();
  });
}

nwidth_status nwidth_compute(int r, int n_first, int n_last, size_t m,
                             double a, double b, double tol_res,
                             nwidth_result* out, size_t capacity) {
  return guarded([&] {
    need(out, "out");
    copy_rows(nwidth::compute_widths(r, n_first, n_last, m,
                                     nwidth::Interval(a, b), tol_res),
              out, capacity);
  });
}

nwidth_status nwidth_conjecture_table(int r_max, int offset_first,
                                      int offset_last, size_t m, double a,
                                      double b, double tol_res,
                                      nwidth_result* out, size_t capacity) {
  return guarded([&] {
    need(out, "out");
    if (r_max >= 1 && offset_last >= offset_first && offset_first >= 0) {
      need_capacity(capacity, static_cast<size_t>(r_max) *
                                  static_cast<size_t>(offset_last -
                                                      offset_first + 1));
    }
    copy_rows(nwidth::conjecture_table(r_max, offset_first, offset_last, m,
                                       nwidth::Interval(a, b), tol_res),
              out, capacity);
  });
}

nwidth_status nwidth_study_run(int r, const int* n_list, size_t n_count,
                               const double* h_list, size_t h_count,
                               double h_ref, double a, double b,
                               double tol_res, nwidth_precision precision,
                               nwidth_study** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(n_list, "n_list");
    need(h_list, "h_list");
    const auto reference = h_ref > 0.0 ? nwidth::Reference::Mesh
                                       : nwidth::Reference::Analytic;
    auto study = nwidth::run_study(
        r, std::vector<int>(n_list, n_list + n_count),
        std::vector<double>(h_list, h_list + h_count), h_ref,
        nwidth::Interval(a, b), reference, tol_res, to_precision(precision));
    *out = new nwidth_study{std::move(study)};
  });
}

void nwidth_study_destroy(nwidth_study* study) { delete study; }

nwidth_status nwidth_study_errors(const nwidth_study* study, double* out,
                                  size_t capacity) {
  return guarded([&] {
    need(study, "study");
    need(out, "out");
    const auto& s = study->study;
    need_capacity(capacity, s.n_list.size() * s.h_list.size());
    for (const auto& row : s.errors) out = std::copy(row.begin(), row.end(), out);
  });
}

nwidth_status nwidth_study_fit(const nwidth_study* study, size_t n_index,
                               nwidth_order_fit* out) {
  return guarded([&] {
    need(study, "study");
    need(out, "out");
    nwidth::detail::require(n_index < study->study.fits.size(),
                            "n index out of range");
    const auto& f = study->study.fits[n_index];
    *out = {f.order, f.points_used, f.plateau_points, f.dropped_coarsest ? 1 : 0,
            f.few_points ? 1 : 0};
  });
}

nwidth_status nwidth_study_reference(const nwidth_study* study, size_t n_index,
                                     double* out) {
  return guarded([&] {
    need(study, "study");
    need(out, "out");
    nwidth::detail::require(n_index < study->study.reference_dn.size(),
                            "n index out of range");
    *out = study->study.reference_dn[n_index];
  });
}

} // extern "C"
