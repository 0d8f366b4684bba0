#include "cli_run.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nwidth::cli {

namespace {

using nlohmann::ordered_json;

// Carries a failed library status up to run().
struct LibraryError : std::runtime_error {
  LibraryError(nwidth_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
  nwidth_status status;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(nwidth_status s) {
  if (s != NWIDTH_OK) throw LibraryError(s, nwidth_last_error());
}

// Owns a C handle.
template <class T, void (*Destroy)(T*)>
class Handle {
public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

private:
  T* ptr_ = nullptr;
};

using System = Handle<nwidth_system, nwidth_system_destroy>;
using Spectrum = Handle<nwidth_spectrum, nwidth_spectrum_destroy>;
using Study = Handle<nwidth_study, nwidth_study_destroy>;

ordered_json number(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file_atomically(cfg.out, text);
  }
}

void dump_matrix_if_requested(const RunConfig& cfg, int r) {
  if (cfg.dump_matrix.empty()) return;
  System sys;
  check(nwidth_system_create(r, cfg.a, cfg.b, cfg.m, sys.out()));
  check(nwidth_system_write_matrix(sys.get(), cfg.dump_matrix.c_str()));
}

std::string render_widths(const RunConfig& cfg,
                          const std::vector<nwidth_result>& rows) {
  return cfg.format == Format::Csv ? widths_csv(rows) : widths_json(rows);
}

int run_compute(const RunConfig& cfg, std::ostream& out) {
  std::vector<nwidth_result> rows(
      static_cast<std::size_t>(cfg.n.last - cfg.n.first + 1));
  check(nwidth_compute(cfg.r, cfg.n.first, cfg.n.last, cfg.m, cfg.a, cfg.b,
                       cfg.tol, rows.data(), rows.size()));
  dump_matrix_if_requested(cfg, cfg.r);
  emit(cfg, render_widths(cfg, rows), out);
  return kExitOk;
}

int run_table(const RunConfig& cfg, std::ostream& out) {
  std::vector<nwidth_result> rows(
      static_cast<std::size_t>(cfg.r_max) *
      static_cast<std::size_t>(cfg.offset_last - cfg.offset_first + 1));
  check(nwidth_conjecture_table(cfg.r_max, cfg.offset_first, cfg.offset_last,
                                cfg.m, cfg.a, cfg.b, cfg.tol, rows.data(),
                                rows.size()));
  emit(cfg, render_widths(cfg, rows), out);
  return kExitOk;
}

std::vector<double> nodes_of(const nwidth_system* sys) {
  std::vector<double> nodes(nwidth_system_size(sys) + 2);
  check(nwidth_system_nodes(sys, nodes.data(), nodes.size()));
  return nodes;
}

int run_knots(const RunConfig& cfg, std::ostream& out) {
  System sys;
  check(nwidth_system_create(cfg.r, cfg.a, cfg.b, cfg.m, sys.out()));
  if (!cfg.dump_matrix.empty()) {
    check(nwidth_system_write_matrix(sys.get(), cfg.dump_matrix.c_str()));
  }
  Spectrum spec;
  check(nwidth_spectrum_compute(sys.get(), static_cast<size_t>(cfg.k.last),
                                cfg.tol, cfg.precision, spec.out()));
  const double tol = cfg.knot_tol * (cfg.b - cfg.a);
  std::vector<KnotRow> rows;
  for (int k = cfg.k.first; k <= cfg.k.last; ++k) {
    std::vector<double> zeros(static_cast<std::size_t>(k));
    size_t written = 0;
    check(nwidth_spectrum_knots(spec.get(), k, tol, zeros.data(), zeros.size(),
                                &written));
    for (size_t i = 0; i < written; ++i) {
      rows.push_back({cfg.r, k, static_cast<int>(i + 1), zeros[i]});
    }
  }
  emit(cfg, cfg.format == Format::Csv ? knots_csv(rows) : knots_json(rows),
       out);
  return kExitOk;
}

int run_eigenfunction(const RunConfig& cfg, std::ostream& out) {
  System sys;
  check(nwidth_system_create(cfg.r, cfg.a, cfg.b, cfg.m, sys.out()));
  if (!cfg.dump_matrix.empty()) {
    check(nwidth_system_write_matrix(sys.get(), cfg.dump_matrix.c_str()));
  }
  Spectrum spec;
  check(nwidth_spectrum_compute(sys.get(), static_cast<size_t>(cfg.k.first),
                                cfg.tol, cfg.precision, spec.out()));
  const auto x = nodes_of(sys.get());
  std::vector<double> phi(x.size());
  check(nwidth_spectrum_eigenfunction(spec.get(), cfg.k.first, phi.data(),
                                      phi.size()));
  emit(cfg,
       cfg.format == Format::Csv ? curve_csv(x, phi)
                                 : curve_json(cfg.r, cfg.k.first, x, phi),
       out);
  return kExitOk;
}

int run_convergence(const RunConfig& cfg, std::ostream& out) {
  std::vector<int> n_list;
  for (int n = cfg.n.first; n <= cfg.n.last; ++n) n_list.push_back(n);
  Study study;
  check(nwidth_study_run(cfg.r, n_list.data(), n_list.size(), cfg.h_list.data(),
                         cfg.h_list.size(), cfg.analytic ? 0.0 : cfg.h_ref,
                         cfg.a, cfg.b, cfg.tol, cfg.precision, study.out()));
  const std::size_t nh = cfg.h_list.size();
  std::vector<double> errors(n_list.size() * nh);
  check(nwidth_study_errors(study.get(), errors.data(), errors.size()));
  std::vector<nwidth_order_fit> fits(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    check(nwidth_study_fit(study.get(), i, &fits[i]));
  }

  std::string body, summary;
  if (cfg.format == Format::Csv) {
    body = "r,n,h,error\n";
    summary = "r,n,fitted_order,points_used\n";
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      for (std::size_t j = 0; j < nh; ++j) {
        body += std::to_string(cfg.r) + "," + std::to_string(n_list[i]) + "," +
                format_number(cfg.h_list[j]) + "," +
                format_number(errors[i * nh + j]) + "\n";
      }
      summary += std::to_string(cfg.r) + "," + std::to_string(n_list[i]) + "," +
                 format_number(fits[i].order) + "," +
                 std::to_string(fits[i].points_used) + "\n";
    }
  } else {
    ordered_json rows = ordered_json::array(), fit_rows = ordered_json::array();
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      for (std::size_t j = 0; j < nh; ++j) {
        rows.push_back({{"r", cfg.r},
                        {"n", n_list[i]},
                        {"h", cfg.h_list[j]},
                        {"error", number(errors[i * nh + j])}});
      }
      fit_rows.push_back({{"r", cfg.r},
                          {"n", n_list[i]},
                          {"fitted_order", number(fits[i].order)},
                          {"points_used", fits[i].points_used}});
    }
    body = rows.dump(2) + "\n";
    summary = fit_rows.dump(2) + "\n";
  }
  emit(cfg, body, out);
  if (!cfg.summary_out.empty()) write_file_atomically(cfg.summary_out, summary);

  if (!cfg.plot_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.plot_dir, ec);
    if (ec) throw IoError("cannot create directory " + cfg.plot_dir);
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      std::string data = "# r=" + std::to_string(cfg.r) +
                         " n=" + std::to_string(n_list[i]) + "\n# h error\n";
      for (std::size_t j = 0; j < nh; ++j) {
        data += format_number(cfg.h_list[j]) + " " +
                format_number(errors[i * nh + j]) + "\n";
      }
      const auto name = "r" + std::to_string(cfg.r) + "_n" +
                        std::to_string(n_list[i]) + ".dat";
      write_file_atomically(
          (std::filesystem::path(cfg.plot_dir) / name).string(), data);
    }
  }
  if (!cfg.dump_matrix.empty()) dump_matrix_if_requested(cfg, cfg.r);
  return kExitOk;
}

} // namespace

int exit_code_for(nwidth_status status) {
  switch (status) {
    case NWIDTH_OK: return kExitOk;
    case NWIDTH_INVALID_ARGUMENT:
    case NWIDTH_IO: return kExitUsage;
    case NWIDTH_NUMERICAL:
    case NWIDTH_INTERNAL: return kExitNumerical;
  }
  return kExitNumerical;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string widths_csv(const std::vector<nwidth_result>& rows) {
  std::string s = "r,n,m,d_n,dn_inv_r,lower,upper,conjecture,rel_err,flag\n";
  for (const auto& row : rows) {
    s += std::to_string(row.r) + "," + std::to_string(row.n) + "," +
         std::to_string(row.m) + "," + format_number(row.d_n) + "," +
         format_number(row.dn_inv_r) + "," + format_number(row.lower) + "," +
         format_number(row.upper) + "," + format_number(row.conjecture) + "," +
         format_number(row.rel_err) + "," + nwidth_flag_name(row.flag) + "\n";
  }
  return s;
}

std::string widths_json(const std::vector<nwidth_result>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    arr.push_back({{"r", row.r},
                   {"n", row.n},
                   {"m", row.m},
                   {"d_n", number(row.d_n)},
                   {"dn_inv_r", number(row.dn_inv_r)},
                   {"lower", row.lower},
                   {"upper", row.upper},
                   {"conjecture", row.conjecture},
                   {"rel_err", number(row.rel_err)},
                   {"flag", nwidth_flag_name(row.flag)}});
  }
  return arr.dump(2) + "\n";
}

std::string knots_csv(const std::vector<KnotRow>& rows) {
  std::string s = "r,k,index,zero\n";
  for (const auto& row : rows) {
    s += std::to_string(row.r) + "," + std::to_string(row.k) + "," +
         std::to_string(row.index) + "," + format_number(row.zero) + "\n";
  }
  return s;
}

std::string knots_json(const std::vector<KnotRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    arr.push_back(
        {{"r", row.r}, {"k", row.k}, {"index", row.index}, {"zero", row.zero}});
  }
  return arr.dump(2) + "\n";
}

std::string curve_csv(const std::vector<double>& x,
                      const std::vector<double>& phi) {
  std::string s = "x,phi\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += format_number(x[i]) + "," + format_number(phi[i]) + "\n";
  }
  return s;
}

std::string curve_json(int r, int k, const std::vector<double>& x,
                       const std::vector<double>& phi) {
  ordered_json obj{{"r", r}, {"k", k}, {"x", x}, {"phi", phi}};
  return obj.dump(2) + "\n";
}

void write_file_atomically(const std::string& path,
                           const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os << contents;
    os.flush();
    if (!os) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename " + tmp.string() + " to " + target.string());
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check(nwidth_set_threads(cfg.threads));
    switch (cfg.command) {
      case Command::Compute: return run_compute(cfg, out);
      case Command::ConjectureTable: return run_table(cfg, out);
      case Command::Convergence: return run_convergence(cfg, out);
      case Command::Knots: return run_knots(cfg, out);
      case Command::Eigenfunctions: return run_eigenfunction(cfg, out);
    }
  } catch (const LibraryError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.status);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace nwidth::cli
