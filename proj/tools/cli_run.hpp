#pragma once

#include "cli_args.hpp"

#include "nwidth/nwidth.h"

#include <iosfwd>
#include <string>
#include <vector>

namespace nwidth::cli {

/// Exit codes of the nwidth tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Maps a library status to an exit code.
int exit_code_for(nwidth_status status);

/// "%.17g"; "nan" / "inf" for non-finite values.
std::string format_number(double v);

std::string widths_csv(const std::vector<nwidth_result>& rows);
std::string widths_json(const std::vector<nwidth_result>& rows);

struct KnotRow {
  int r;
  int k;
  int index;
  double zero;
};
std::string knots_csv(const std::vector<KnotRow>& rows);
std::string knots_json(const std::vector<KnotRow>& rows);

std::string curve_csv(const std::vector<double>& x, const std::vector<double>& phi);
std::string curve_json(int r, int k, const std::vector<double>& x,
                       const std::vector<double>& phi);

/// Replaces `path` with `contents` via a temporary sibling and a rename.
void write_file_atomically(const std::string& path, const std::string& contents);

/// Executes a validated config. Results go to cfg.out (or `out` when empty),
/// diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace nwidth::cli
