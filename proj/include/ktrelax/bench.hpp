#ifndef KTRELAX_BENCH_HPP
#define KTRELAX_BENCH_HPP

// Benchmark drivers: sine-advection convergence table, the non-convex scalar
// Riemann problem and the Lax shock tube, each compared against an
// independent reference (exact translate, monotone fine-grid solution, exact
// Riemann solver).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktrelax/core.hpp"
#include "ktrelax/models.hpp"
#include "ktrelax/reference.hpp"
#include "ktrelax/riemann.hpp"
#include "ktrelax/schemes.hpp"
#include "ktrelax/timeint.hpp"

namespace ktrelax {

enum class SchemeKind { Kt, Relax };

inline std::string to_string(SchemeKind k) {
  return k == SchemeKind::Kt ? "kt" : "relax";
}
inline std::string to_string(CflMode m) {
  return m == CflMode::Convective ? "convective" : "parabolic";
}

struct BenchParams {
  CflPolicy policy{};
  double theta = MusclLimiter::default_theta;
  double safety = RelaxScheme<AdvectionModel>::default_safety;
};

struct ConvergenceRow {
  std::size_t n = 0;
  SchemeKind scheme = SchemeKind::Kt;
  CflMode cfl_mode = CflMode::Convective;
  double cfl_constant = 0.0;
  double theta = 0.0;
  double safety = 0.0;
  double l1_error = 0.0;
  std::optional<double> observed_order;
  std::size_t steps = 0;
};

struct SolutionDump {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> names;  // excluding the leading x column
  std::vector<double> x;
  std::vector<std::vector<double>> columns;
};

inline double observed_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
    throw std::invalid_argument("observed_order: errors must be positive");
  }
  return std::log2(e_coarse / e_fine);
}

/// Runs `fn(scheme)` with the scheme selected by `kind`.
template <ConservationLaw Model, class Fn>
decltype(auto) with_scheme(SchemeKind kind, const Model& model,
                           const BenchParams& p, Fn&& fn) {
  if (kind == SchemeKind::Kt) {
    KtScheme<Model> s(model, MusclLimiter{p.theta});
    return fn(s);
  }
  RelaxScheme<Model> s(model, p.safety);
  return fn(s);
}

// ---------------------------------------------------------------------------
// Linear advection of sin(2 pi x), one period

inline constexpr double advection_t_end = 1.0;

inline double advection_error(SchemeKind kind, std::size_t n,
                              const BenchParams& p, std::size_t* steps = nullptr) {
  const Grid1D grid(0.0, 1.0, n);
  const auto exact = [](double t) {
    return [t](double x) { return advection_exact(x, t); };
  };
  Field u0 = cell_average(grid, exact(0.0));
  const Field reference = cell_average(grid, exact(advection_t_end));
  return with_scheme(kind, AdvectionModel{}, p, [&](auto& scheme) {
    auto run = integrate(scheme, std::move(u0), grid, BoundaryKind::Periodic,
                         p.policy, advection_t_end);
    if (steps) *steps = run.diagnostics.steps;
    return l1_distance(run.field, reference, grid)[0];
  });
}

inline std::vector<ConvergenceRow> run_advection_table(
    SchemeKind kind, const BenchParams& p, std::vector<std::size_t> n_list) {
  std::ranges::sort(n_list);
  std::vector<std::future<ConvergenceRow>> jobs;
  for (std::size_t n : n_list) {
    jobs.push_back(std::async(std::launch::async, [=] {
      ConvergenceRow row;
      row.n = n;
      row.scheme = kind;
      row.cfl_mode = p.policy.mode;
      row.cfl_constant = p.policy.constant;
      row.theta = p.theta;
      row.safety = p.safety;
      row.l1_error = advection_error(kind, n, p, &row.steps);
      return row;
    }));
  }
  std::vector<ConvergenceRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].n == 2 * rows[r - 1].n && rows[r].l1_error > 0.0 &&
        rows[r - 1].l1_error > 0.0) {
      rows[r].observed_order =
          observed_order(rows[r - 1].l1_error, rows[r].l1_error);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Shared helpers for the Riemann benchmarks

/// Twelve significant digits, the precision of every emitted number.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::vector<std::pair<std::string, std::string>> run_metadata(
    const std::string& benchmark, SchemeKind kind, std::size_t n, double t,
    const BenchParams& p) {
  const auto num = format_number;
  return {{"benchmark", benchmark},
          {"scheme", to_string(kind)},
          {"n", std::to_string(n)},
          {"t", num(t)},
          {"cfl_mode", to_string(p.policy.mode)},
          {"C", num(p.policy.constant)},
          {"theta", num(p.theta)},
          {"safety", num(p.safety)}};
}

/// Indices of the `count` largest |u_{j+1} - u_j| that are at least
/// `separation` cells apart, in increasing order.
inline std::vector<std::size_t> steepest_jumps(const std::vector<double>& u,
                                               std::size_t count,
                                               std::size_t separation = 5) {
  std::vector<std::size_t> order(u.size() > 0 ? u.size() - 1 : 0);
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
    return std::abs(u[a + 1] - u[a]) > std::abs(u[b + 1] - u[b]);
  });
  std::vector<std::size_t> picked;
  for (std::size_t j : order) {
    if (picked.size() == count) break;
    const bool far = std::ranges::all_of(picked, [&](std::size_t q) {
      return (j > q ? j - q : q - j) >= separation;
    });
    if (far) picked.push_back(j);
  }
  std::ranges::sort(picked);
  return picked;
}

// ---------------------------------------------------------------------------
// Non-convex scalar Riemann problem

inline constexpr std::size_t nonconvex_reference_cells = 8192;
inline constexpr std::size_t min_benchmark_cells = 50;

inline PointFunction riemann_initial(const RiemannSetup<double>& s) {
  return [s](double x, std::span<double> out) {
    out[0] = x < s.interface ? s.left : s.right;
  };
}

inline ReferenceSolution nonconvex_reference(
    std::size_t n_fine = nonconvex_reference_cells,
    const RiemannSetup<double>& setup = nonconvex_riemann_setup()) {
  const Grid1D fine(setup.x_min, setup.x_max, n_fine);
  return rusanov_reference(NonConvexModel{}, fine, BoundaryKind::Outflow,
                           riemann_initial(setup), setup.t_end);
}

struct NonConvexResult {
  Grid1D grid;
  Field field;
  Field reference;  // fine reference averaged onto `grid`
  double l1_to_reference = 0.0;
  RunDiagnostics diagnostics;
  SolutionDump dump;
};

inline NonConvexResult run_nonconvex(SchemeKind kind, std::size_t n,
                                     const BenchParams& p,
                                     const ReferenceSolution& reference) {
  if (n < min_benchmark_cells) {
    throw std::invalid_argument("run_nonconvex: need n >= " +
                                std::to_string(min_benchmark_cells));
  }
  const auto setup = nonconvex_riemann_setup();
  setup.validate(3.0);
  const Grid1D grid(setup.x_min, setup.x_max, n);
  Field u0 = cell_average(grid, 1, riemann_initial(setup));
  auto run = with_scheme(kind, NonConvexModel{}, p, [&](auto& scheme) {
    return integrate(scheme, std::move(u0), grid, BoundaryKind::Outflow,
                     p.policy, setup.t_end);
  });
  Field ref = conservative_average(reference.field, reference.grid, grid);
  const double dist = l1_distance(run.field, ref, grid)[0];

  SolutionDump dump;
  dump.metadata = run_metadata("nonconvex", kind, n, setup.t_end, p);
  dump.metadata.emplace_back("reference", "rusanov n=" +
                                              std::to_string(reference.grid.n_cells()));
  dump.names = {"u", "u_reference"};
  dump.x = cell_centers(grid);
  dump.columns = {run.field.component(0), ref.component(0)};
  return {grid, std::move(run.field), std::move(ref), dist,
          std::move(run.diagnostics), std::move(dump)};
}

inline NonConvexResult run_nonconvex(SchemeKind kind, std::size_t n,
                                     const BenchParams& p) {
  return run_nonconvex(kind, n, p, nonconvex_reference());
}

// ---------------------------------------------------------------------------
// Lax shock tube

struct LaxResult {
  Grid1D grid;
  Field field;
  std::vector<double> exact_density;  // cell averages of the exact solution
  double density_l1 = 0.0;
  double peak_density = 0.0;
  double peak_position = 0.0;
  RunDiagnostics diagnostics;
  SolutionDump dump;
};

inline std::vector<double> exact_density_averages(
    const RiemannSetup<EulerPrimitive>& setup, const Grid1D& grid,
    double gamma = EulerModel::default_gamma) {
  const ExactRiemannEuler exact(setup.left, setup.right, gamma);
  const Field avg = cell_average(
      grid, 1,
      [&](double x, std::span<double> out) {
        out[0] = exact.sample((x - setup.interface) / setup.t_end).rho;
      },
      5);
  return avg.component(0);
}

inline LaxResult run_riemann_euler(SchemeKind kind, std::size_t n,
                                   const BenchParams& p,
                                   const RiemannSetup<EulerPrimitive>& setup,
                                   const std::string& benchmark = "lax") {
  if (n < min_benchmark_cells) {
    throw std::invalid_argument("run_lax: need n >= " +
                                std::to_string(min_benchmark_cells));
  }
  const EulerModel model;
  const ExactRiemannEuler exact(setup.left, setup.right, model.gamma());
  setup.validate(exact.max_wave_speed());

  const Grid1D grid(setup.x_min, setup.x_max, n);
  const auto ql = model.prim_to_cons(setup.left);
  const auto qr = model.prim_to_cons(setup.right);
  Field u0 = cell_average(grid, 3, [&](double x, std::span<double> out) {
    std::ranges::copy(x < setup.interface ? ql : qr, out.begin());
  });
  auto run = with_scheme(kind, model, p, [&](auto& scheme) {
    return integrate(scheme, std::move(u0), grid, BoundaryKind::Outflow,
                     p.policy, setup.t_end);
  });

  LaxResult r{grid, std::move(run.field), exact_density_averages(setup, grid),
              0.0, 0.0, 0.0, std::move(run.diagnostics), {}};
  const auto rho = r.field.component(0);
  for (std::size_t j = 0; j < n; ++j) {
    r.density_l1 += std::abs(rho[j] - r.exact_density[j]);
  }
  r.density_l1 *= grid.dx();
  const auto peak = std::ranges::max_element(rho);
  r.peak_density = *peak;
  r.peak_position = grid.center(static_cast<std::size_t>(peak - rho.begin()));

  r.dump.metadata = run_metadata(benchmark, kind, n, setup.t_end, p);
  r.dump.metadata.emplace_back("gamma", format_number(model.gamma()));
  r.dump.names = {"rho", "momentum", "energy", "rho_exact"};
  r.dump.x = cell_centers(grid);
  r.dump.columns = {rho, r.field.component(1), r.field.component(2),
                    r.exact_density};
  return r;
}

inline LaxResult run_lax(SchemeKind kind, std::size_t n, const BenchParams& p) {
  return run_riemann_euler(kind, n, p, lax_riemann_setup());
}

}  // namespace ktrelax

#endif  // KTRELAX_BENCH_HPP
