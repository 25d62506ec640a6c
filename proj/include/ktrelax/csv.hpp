#ifndef KTRELAX_CSV_HPP
#define KTRELAX_CSV_HPP

// Deterministic CSV emission: LF line endings, twelve significant digits,
// `#`-prefixed metadata lines ahead of the header.

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ktrelax/bench.hpp"

namespace ktrelax {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* convergence_header =
    "n,scheme,cfl_mode,C,theta,safety,l1_error,observed_order";

inline void write_metadata(std::ostream& os,
                           const std::vector<std::string>& lines) {
  for (const auto& l : lines) os << "# " << l << '\n';
}

inline void write_convergence_csv(std::ostream& os,
                                  const std::vector<ConvergenceRow>& rows,
                                  const std::vector<std::string>& metadata = {}) {
  write_metadata(os, metadata);
  os << convergence_header << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << to_string(r.scheme) << ',' << to_string(r.cfl_mode)
       << ',' << format_number(r.cfl_constant) << ','
       << format_number(r.theta) << ',' << format_number(r.safety) << ','
       << format_number(r.l1_error) << ',';
    if (r.observed_order) os << format_number(*r.observed_order);
    os << '\n';
  }
}

inline std::vector<std::string> metadata_lines(const SolutionDump& dump) {
  std::vector<std::string> lines;
  for (const auto& [k, v] : dump.metadata) lines.push_back(k + "=" + v);
  return lines;
}

inline void write_solution_csv(std::ostream& os, const SolutionDump& dump,
                               const std::vector<std::string>& extra = {}) {
  for (const auto& c : dump.columns) {
    if (c.size() != dump.x.size()) {
      throw std::invalid_argument("write_solution_csv: ragged columns");
    }
  }
  if (dump.columns.size() != dump.names.size()) {
    throw std::invalid_argument("write_solution_csv: names/columns mismatch");
  }
  write_metadata(os, extra);
  write_metadata(os, metadata_lines(dump));
  os << 'x';
  for (const auto& name : dump.names) os << ',' << name;
  os << '\n';
  for (std::size_t j = 0; j < dump.x.size(); ++j) {
    os << format_number(dump.x[j]);
    for (const auto& c : dump.columns) os << ',' << format_number(c[j]);
    os << '\n';
  }
}

namespace detail {

template <class Writer>
void write_file(const std::string& path, Writer&& write) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write(os);
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

}  // namespace detail

inline void emit_convergence_csv(const std::vector<ConvergenceRow>& rows,
                                 const std::string& path,
                                 const std::vector<std::string>& metadata = {}) {
  detail::write_file(path, [&](std::ostream& os) {
    write_convergence_csv(os, rows, metadata);
  });
}

inline void emit_solution_csv(const SolutionDump& dump, const std::string& path,
                              const std::vector<std::string>& extra = {}) {
  detail::write_file(path, [&](std::ostream& os) {
    write_solution_csv(os, dump, extra);
  });
}

}  // namespace ktrelax

#endif  // KTRELAX_CSV_HPP
