#include "cli_args.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace nwidth::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw UsageError("cannot parse " + what + " '" + text + "' as an integer");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() ||
      !std::isfinite(value)) {
    throw UsageError("cannot parse " + what + " '" + text + "' as a number");
  }
  return value;
}

// Exponent k of "2^-k" (or "2^k"); nullopt if the text is not of that form.
std::optional<int> power_of_two_exponent(const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("2^", 0) != 0) return std::nullopt;
  return parse_int(t.substr(2), "exponent in '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct RawOptions {
  std::string n, k, interval = "0,1", h_list, h_ref = "2^-11", format = "csv";
  // One per subcommand so each keeps its own default.
  std::string conv_precision = "double", knots_precision = "auto",
              eig_precision = "auto";
};

void add_common(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
  sub->add_option("--m", cfg.m, "interior nodes (h = (b-a)/(m+1))")
      ->capture_default_str();
  sub->add_option("--interval", raw.interval, "a,b")->capture_default_str();
  sub->add_option("--tol", cfg.tol, "eigenpair residual tolerance")
      ->capture_default_str();
  sub->add_option("--format", raw.format, "csv or json")->capture_default_str();
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores")
      ->envname("NWIDTH_THREADS");
  sub->add_option("--dump-matrix", cfg.dump_matrix,
                  "write the Nystrom matrix of the run to this file");
}

void add_precision(CLI::App* sub, std::string& target) {
  sub->add_option("--precision", target, "double, extended, quad or auto")
      ->capture_default_str();
}

nwidth_precision parse_precision(const std::string& text) {
  if (text == "double") return NWIDTH_PRECISION_DOUBLE;
  if (text == "extended") return NWIDTH_PRECISION_EXTENDED;
  if (text == "quad") return NWIDTH_PRECISION_QUAD;
  if (text == "auto") return NWIDTH_PRECISION_AUTO;
  throw UsageError("--precision must be double, extended, quad or auto, got '" +
                   text + "'");
}

} // namespace

IndexRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(text, "index");
    return {v, v};
  }
  IndexRange range{parse_int(text.substr(0, dots), "range start"),
                   parse_int(text.substr(dots + 2), "range end")};
  if (range.last < range.first) {
    throw UsageError("range '" + text + "' is empty; write N1..N2 with N1 <= N2");
  }
  return range;
}

std::pair<double, double> parse_interval(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw UsageError("--interval expects a,b, got '" + text + "'");
  }
  return {parse_double(parts[0], "interval end"),
          parse_double(parts[1], "interval end")};
}

double parse_mesh_size(const std::string& text) {
  if (const auto k = power_of_two_exponent(text)) {
    if (*k > 0 || *k < -60) {
      throw UsageError("mesh size '" + text + "' must be 2^-k with 0 <= k <= 60");
    }
    return std::ldexp(1.0, *k);
  }
  return parse_double(text, "mesh size");
}

std::vector<double> parse_h_list(const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = power_of_two_exponent(text.substr(0, dots));
    const auto hi = power_of_two_exponent(text.substr(dots + 2));
    if (!lo || !hi) {
      throw UsageError("--h-list ranges are written 2^-k1..2^-k2, got '" +
                       text + "'");
    }
    std::vector<double> out;
    const int step = *hi >= *lo ? 1 : -1;
    for (int k = *lo;; k += step) {
      out.push_back(parse_mesh_size("2^" + std::to_string(k)));
      if (k == *hi) break;
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_mesh_size(part));
  return out;
}

void validate(const RunConfig& cfg) {
  const auto bad = [](const std::string& msg) { throw UsageError(msg); };
  if (!(cfg.a < cfg.b)) bad("--interval needs a < b");
  if (cfg.m < 1) bad("--m must be >= 1");
  if (!(cfg.tol > 0.0)) bad("--tol must be positive");
  if (!(cfg.knot_tol > 0.0)) bad("--knot-tol must be positive");
  if (cfg.threads < 0) bad("--threads must be >= 0");
  switch (cfg.command) {
    case Command::Compute:
    case Command::Convergence:
      if (cfg.r < 1) bad("--r must satisfy r >= 1");
      if (cfg.n.first < cfg.r) {
        bad("--n must satisfy n >= r (got n=" + std::to_string(cfg.n.first) +
            ", r=" + std::to_string(cfg.r) + ")");
      }
      break;
    case Command::Knots:
    case Command::Eigenfunctions:
      if (cfg.r < 1) bad("--r must satisfy r >= 1");
      if (cfg.k.first < 1) bad("--k must be >= 1");
      if (cfg.command == Command::Eigenfunctions && cfg.k.first != cfg.k.last) {
        bad("eigenfunctions takes a single --k");
      }
      break;
    case Command::ConjectureTable:
      if (cfg.r_max < 1) bad("--r-max must be >= 1");
      if (cfg.offset_first < 0 || cfg.offset_last < cfg.offset_first) {
        bad("offsets must satisfy 0 <= --offset-first <= --offset-last");
      }
      break;
  }
  if (cfg.command == Command::Convergence) {
    for (double h : cfg.h_list) {
      if (!(h > 0.0)) bad("--h-list entries must be positive");
      if (!cfg.analytic && !(cfg.h_ref < h)) {
        bad("--h-ref must be smaller than every --h-list entry");
      }
    }
    if (cfg.analytic && cfg.r != 1) {
      bad("--analytic-reference is only available for r = 1");
    }
    if (cfg.precision == NWIDTH_PRECISION_AUTO) {
      bad("convergence needs --precision double, extended or quad");
    }
  }
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out,
                        std::ostream& err) {
  RunConfig cfg;
  RawOptions raw;
  CLI::App app{"Kolmogorov n-widths of Sobolev balls by Nystrom discretization",
               "nwidth"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "d_n for a range of n");
  compute->add_option("--r", cfg.r, "derivative order")->required();
  compute->add_option("--n", raw.n, "N or N1..N2")->required();
  add_common(compute, cfg, raw);

  auto* table = app.add_subcommand("conjecture-table",
                                   "d_n^{-1/r} against the conjectured value");
  table->add_option("--r-max", cfg.r_max, "largest r")->capture_default_str();
  table->add_option("--offset-first", cfg.offset_first, "first n - r")
      ->capture_default_str();
  table->add_option("--offset-last", cfg.offset_last, "last n - r")
      ->capture_default_str();
  add_common(table, cfg, raw);

  auto* conv = app.add_subcommand("convergence", "error of d_n against h");
  conv->add_option("--r", cfg.r, "derivative order")->required();
  conv->add_option("--n", raw.n, "N or N1..N2")->required();
  conv->add_option("--h-list", raw.h_list,
                   "comma list or 2^-k1..2^-k2 (default 2^-4..2^-8)");
  conv->add_option("--h-ref", raw.h_ref, "reference mesh size")
      ->capture_default_str();
  conv->add_flag("--analytic-reference", cfg.analytic,
                 "compare against (b-a)/(n pi) instead (r = 1)");
  conv->add_option("--summary-out", cfg.summary_out,
                   "fitted orders as CSV/JSON");
  conv->add_option("--plot-dir", cfg.plot_dir,
                   "one log-log data file per n in this directory");
  add_precision(conv, raw.conv_precision);
  add_common(conv, cfg, raw);

  auto* knots = app.add_subcommand("knots", "zeros of eigenfunctions");
  knots->add_option("--r", cfg.r, "derivative order")->required();
  knots->add_option("--k", raw.k, "rank K or K1..K2")->required();
  knots->add_option("--knot-tol", cfg.knot_tol,
                    "zero refinement tolerance relative to b-a")
      ->capture_default_str();
  add_precision(knots, raw.knots_precision);
  add_common(knots, cfg, raw);

  auto* eig = app.add_subcommand("eigenfunctions",
                                 "node samples of one eigenfunction");
  eig->add_option("--r", cfg.r, "derivative order")->required();
  eig->add_option("--k", raw.k, "rank")->required();
  add_precision(eig, raw.eig_precision);
  add_common(eig, cfg, raw);

  try {
    app.parse(argc, argv);
    if (compute->parsed()) cfg.command = Command::Compute;
    if (table->parsed()) cfg.command = Command::ConjectureTable;
    if (conv->parsed()) cfg.command = Command::Convergence;
    if (knots->parsed()) cfg.command = Command::Knots;
    if (eig->parsed()) cfg.command = Command::Eigenfunctions;

    if (!raw.n.empty()) cfg.n = parse_range(raw.n);
    if (!raw.k.empty()) cfg.k = parse_range(raw.k);
    std::tie(cfg.a, cfg.b) = parse_interval(raw.interval);
    if (raw.format == "csv") {
      cfg.format = Format::Csv;
    } else if (raw.format == "json") {
      cfg.format = Format::Json;
    } else {
      throw UsageError("--format must be csv or json, got '" + raw.format + "'");
    }
    if (conv->parsed()) cfg.precision = parse_precision(raw.conv_precision);
    if (knots->parsed()) cfg.precision = parse_precision(raw.knots_precision);
    if (eig->parsed()) cfg.precision = parse_precision(raw.eig_precision);
    if (cfg.command == Command::Convergence) {
      cfg.h_list = parse_h_list(raw.h_list.empty() ? "2^-4..2^-8" : raw.h_list);
      cfg.h_ref = parse_mesh_size(raw.h_ref);
    }
    validate(cfg);
  } catch (const CLI::CallForHelp& e) {
    return {std::nullopt, app.exit(e, out, err)};
  } catch (const CLI::CallForAllHelp& e) {
    return {std::nullopt, app.exit(e, out, err)};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, 1};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, 1};
  }
  return {cfg, 0};
}

} // namespace nwidth::cli
