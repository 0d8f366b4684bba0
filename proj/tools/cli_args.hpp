#pragma once

#include "nwidth/nwidth.h"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nwidth::cli {

enum class Command { Compute, ConjectureTable, Convergence, Knots, Eigenfunctions };
enum class Format { Csv, Json };

/// Closed integer range; a single value N is N..N.
struct IndexRange {
  int first = 0;
  int last = 0;
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct RunConfig {
  Command command = Command::Compute;
  int r = 0;
  /// n for compute and convergence.
  IndexRange n;
  /// Eigenfunction ranks for knots and eigenfunctions.
  IndexRange k;
  std::size_t m = 2047;
  double a = 0.0;
  double b = 1.0;
  double tol = 1e-10;
  /// Knot refinement tolerance relative to b - a.
  double knot_tol = 1e-10;
  nwidth_precision precision = NWIDTH_PRECISION_AUTO;
  // conjecture-table
  int r_max = 20;
  int offset_first = 0;
  int offset_last = 5;
  // convergence
  std::vector<double> h_list;
  double h_ref = 0x1p-11;
  bool analytic = false;
  std::string summary_out;
  std::string plot_dir;

  Format format = Format::Csv;
  /// Empty means stdout.
  std::string out;
  std::string dump_matrix;
  /// 0 uses every available core.
  int threads = 0;
};

/// Bad command line; the message is one actionable line.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// "N" or "N1..N2".
IndexRange parse_range(const std::string& text);
/// "a,b".
std::pair<double, double> parse_interval(const std::string& text);
/// A float or "2^-k".
double parse_mesh_size(const std::string& text);
/// Comma-separated mesh sizes, or "2^-k1..2^-k2" for every power between.
std::vector<double> parse_h_list(const std::string& text);

struct ParseOutcome {
  /// Set when the command should run.
  std::optional<RunConfig> config;
  /// Exit code when config is empty (0 after --help).
  int exit_code = 0;
};

/// Parses argv, reading NWIDTH_THREADS when --threads is absent. Help text
/// goes to `out`, errors to `err`.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out,
                        std::ostream& err);

/// Throws UsageError when the config breaks a documented constraint.
void validate(const RunConfig& cfg);

} // namespace nwidth::cli
