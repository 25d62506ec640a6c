#ifndef KTRELAX_CLI_HPP
#define KTRELAX_CLI_HPP

// Run configuration, argument parsing and the benchmark dispatcher behind the
// `ktrelax` command-line tool.

#include <charconv>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ktrelax/bench.hpp"
#include "ktrelax/csv.hpp"

namespace ktrelax::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by parse_args for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Benchmark { Advect, NonConvex, Lax };
enum class SchemeChoice { Kt, Relax, Both };

struct RunConfig {
  Benchmark benchmark = Benchmark::Advect;
  SchemeChoice scheme = SchemeChoice::Both;
  CflMode cfl = CflMode::Convective;
  double cfl_constant = CflPolicy::default_constant;
  double theta = MusclLimiter::default_theta;
  double safety = RelaxScheme<AdvectionModel>::default_safety;
  std::vector<std::size_t> n;
  std::string out = ".";

  bool operator==(const RunConfig&) const = default;

  BenchParams params() const {
    return {{cfl, cfl_constant}, theta, safety};
  }
  std::vector<SchemeKind> schemes() const {
    switch (scheme) {
      case SchemeChoice::Kt: return {SchemeKind::Kt};
      case SchemeChoice::Relax: return {SchemeKind::Relax};
      default: return {SchemeKind::Kt, SchemeKind::Relax};
    }
  }
};

inline std::string to_string(Benchmark b) {
  switch (b) {
    case Benchmark::Advect: return "advect";
    case Benchmark::NonConvex: return "nonconvex";
    default: return "lax";
  }
}

inline std::string to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::Kt: return "kt";
    case SchemeChoice::Relax: return "relax";
    default: return "both";
  }
}

inline std::vector<std::size_t> default_n(Benchmark b, CflMode mode) {
  if (b != Benchmark::Advect) return {100, 200};
  if (mode == CflMode::Parabolic) return {20, 40, 80, 160, 320, 640};
  return {20, 40, 80, 160, 320, 640, 1280};
}

/// Shortest text that reads back as the same double.
inline std::string exact_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void validate(const RunConfig& c) {
  if (!(c.theta >= 1.0 && c.theta <= 2.0)) {
    throw UsageError("--theta " + exact_number(c.theta) +
                     ": theta must lie in [1, 2]");
  }
  if (!(c.cfl_constant > 0.0) || !std::isfinite(c.cfl_constant)) {
    throw UsageError("--C " + exact_number(c.cfl_constant) +
                     ": CFL constant must be positive");
  }
  if (!(c.safety >= 1.0) || !std::isfinite(c.safety)) {
    throw UsageError("--safety " + exact_number(c.safety) +
                     ": safety factor must be >= 1");
  }
  if (c.n.empty()) throw UsageError("--n: at least one grid size required");
  const std::size_t min_n =
      c.benchmark == Benchmark::Advect ? Grid1D::min_cells : min_benchmark_cells;
  for (std::size_t n : c.n) {
    if (n < min_n) {
      throw UsageError("--n " + std::to_string(n) + ": " +
                       to_string(c.benchmark) + " needs at least " +
                       std::to_string(min_n) + " cells");
    }
  }
}

inline RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Semidiscrete Kurganov-Tadmor and relaxation schemes for 1D "
               "conservation laws",
               "ktrelax"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  RunConfig cfg;
  std::string scheme = "both";
  std::string cfl = "convective";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scheme", scheme, "Scheme to run")
        ->check(CLI::IsMember({"kt", "relax", "both"}))
        ->capture_default_str();
    sub->add_option("--cfl", cfl, "Time-step restriction")
        ->check(CLI::IsMember({"convective", "parabolic"}))
        ->capture_default_str();
    sub->add_option("--C", cfg.cfl_constant,
                    "CFL constant (dt = C dx / s_max or C dx^2)")
        ->capture_default_str();
    sub->add_option("--theta", cfg.theta, "Minmod limiter parameter in [1, 2]")
        ->capture_default_str();
    sub->add_option("--safety", cfg.safety,
                    "Multiplier (>= 1) on the relaxation speeds")
        ->capture_default_str();
    sub->add_option("--n", cfg.n,
                    "Comma-separated cell counts (default: advect 20..1280, "
                    "parabolic 20..640, Riemann problems 100,200)")
        ->delimiter(',');
    sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  };
  auto* advect = app.add_subcommand("advect", "Sine advection convergence table");
  auto* nonconvex =
      app.add_subcommand("nonconvex", "Non-convex flux Riemann problem");
  auto* lax = app.add_subcommand("lax", "Lax shock tube");
  for (auto* sub : {advect, nonconvex, lax}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (advect->parsed()) cfg.benchmark = Benchmark::Advect;
  if (nonconvex->parsed()) cfg.benchmark = Benchmark::NonConvex;
  if (lax->parsed()) cfg.benchmark = Benchmark::Lax;
  cfg.scheme = scheme == "kt"      ? SchemeChoice::Kt
               : scheme == "relax" ? SchemeChoice::Relax
                                   : SchemeChoice::Both;
  cfg.cfl = cfl == "parabolic" ? CflMode::Parabolic : CflMode::Convective;
  if (cfg.n.empty()) cfg.n = default_n(cfg.benchmark, cfg.cfl);
  validate(cfg);
  return cfg;
}

inline RunConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

/// Argument vector that parses back to `c`.
inline std::vector<std::string> to_args(const RunConfig& c) {
  std::string ns;
  for (std::size_t k = 0; k < c.n.size(); ++k) {
    if (k) ns += ',';
    ns += std::to_string(c.n[k]);
  }
  return {to_string(c.benchmark),
          "--scheme", to_string(c.scheme),
          "--cfl", ktrelax::to_string(c.cfl),
          "--C", exact_number(c.cfl_constant),
          "--theta", exact_number(c.theta),
          "--safety", exact_number(c.safety),
          "--n", ns,
          "--out", c.out};
}

inline constexpr const char* config_prefix = "config: ";

inline std::string config_line(const RunConfig& c) {
  std::string line = config_prefix;
  const auto args = to_args(c);
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) line += ' ';
    line += args[k];
  }
  return line;
}

/// Recovers the configuration from the metadata lines of an output file.
/// Accepts lines with or without the leading "# ".
inline RunConfig parse_config_line(std::string line) {
  if (line.starts_with("# ")) line.erase(0, 2);
  if (!line.starts_with(config_prefix)) {
    throw UsageError("not a config metadata line: " + line);
  }
  std::istringstream is(line.substr(std::string(config_prefix).size()));
  std::vector<std::string> tokens;
  for (std::string t; is >> t;) tokens.push_back(t);
  return parse_args(tokens);
}

inline RunConfig find_config(std::istream& is) {
  for (std::string line; std::getline(is, line);) {
    if (!line.starts_with("#")) break;
    if (line.starts_with(std::string("# ") + config_prefix)) {
      return parse_config_line(line);
    }
  }
  throw UsageError("no config metadata line found");
}

/// Runs the configured benchmark, writes its CSV files under `c.out` and
/// returns their paths. Progress and summaries go to `log`.
inline std::vector<std::string> run(const RunConfig& c, std::ostream& log) {
  validate(c);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw IoError("cannot create output directory '" + c.out + "'");
  const auto params = c.params();
  const std::vector<std::string> meta{config_line(c)};
  std::vector<std::string> written;

  if (c.benchmark == Benchmark::Advect) {
    std::vector<ConvergenceRow> rows;
    for (auto kind : c.schemes()) {
      auto part = run_advection_table(kind, params, c.n);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    const auto path =
        (fs::path(c.out) / ("advect_" + ktrelax::to_string(c.cfl) + ".csv"))
            .string();
    emit_convergence_csv(rows, path, meta);
    written.push_back(path);
    for (const auto& r : rows) {
      log << ktrelax::to_string(r.scheme) << " n=" << r.n
          << " l1=" << format_number(r.l1_error);
      if (r.observed_order) log << " order=" << format_number(*r.observed_order);
      log << '\n';
    }
    return written;
  }

  ReferenceSolution reference{Grid1D(0.0, 1.0, 4), Field(4, 1)};
  if (c.benchmark == Benchmark::NonConvex) reference = nonconvex_reference();
  for (auto kind : c.schemes()) {
    for (std::size_t n : c.n) {
      const std::string stem = to_string(c.benchmark) + "_" +
                               ktrelax::to_string(kind) + "_n" +
                               std::to_string(n) + ".csv";
      const auto path = (fs::path(c.out) / stem).string();
      if (c.benchmark == Benchmark::NonConvex) {
        const auto r = run_nonconvex(kind, n, params, reference);
        emit_solution_csv(r.dump, path, meta);
        log << ktrelax::to_string(kind) << " n=" << n
            << " l1_to_reference=" << format_number(r.l1_to_reference) << '\n';
      } else {
        const auto r = run_lax(kind, n, params);
        emit_solution_csv(r.dump, path, meta);
        log << ktrelax::to_string(kind) << " n=" << n
            << " density_l1=" << format_number(r.density_l1)
            << " peak=" << format_number(r.peak_density) << " at x="
            << format_number(r.peak_position) << '\n';
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace ktrelax::cli

#endif  // KTRELAX_CLI_HPP
