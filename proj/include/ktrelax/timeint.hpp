#ifndef KTRELAX_TIMEINT_HPP
#define KTRELAX_TIMEINT_HPP

// Heun (two-stage SSP) Runge-Kutta stepping and run-to-final-time driver.

#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "ktrelax/core.hpp"
#include "ktrelax/schemes.hpp"

namespace ktrelax {

struct RunDiagnostics {
  std::size_t steps = 0;
  double min_dt = std::numeric_limits<double>::infinity();
  double max_dt = 0.0;
  double elapsed = 0.0;  // compensated sum of accepted steps
  std::vector<double> conservation_drift;
  std::size_t subchar_warnings = 0;
  std::size_t positivity_failures = 0;
};

struct RunResult {
  Field field;
  RunDiagnostics diagnostics;
};

/// u* = u + dt L(u);  u_next = (u + u* + dt L(u*)) / 2
template <class Rhs>
Field heun_step(const Rhs& rhs, const Field& u, double dt,
                std::size_t step_index = 0) {
  if (!(dt > 0.0)) throw std::invalid_argument("heun_step: dt must be > 0");
  const Field stage = axpy(u, dt, rhs(u));
  Field next = axpy(stage, dt, rhs(stage));
  auto out = next.data();
  const auto base = u.data();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.5 * (base[k] + out[k]);
  validate_finite(next, "Heun step " + std::to_string(step_index));
  return next;
}

/// Observer called after every accepted step with (field, time, step count).
using StepObserver =
    std::function<void(const Field&, double, std::size_t)>;

template <SemidiscreteScheme Scheme>
RunResult integrate(Scheme& scheme, Field u, const Grid1D& grid,
                    BoundaryKind bc, const CflPolicy& policy, double t_end,
                    const StepObserver& observer = {}) {
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("integrate: t_end must be positive");
  }
  if (u.n_cells() != grid.n_cells()) {
    throw std::invalid_argument("integrate: field does not match grid");
  }
  validate_finite(u, "initial data");
  RunDiagnostics diag;
  const auto mass0 = total_mass(u, grid);

  CompensatedSum time;
  const auto rhs = [&](const Field& f) { return scheme.rhs(f, grid, bc); };
  // Steps within this relative distance of t_end are merged into one.
  const double landing = 1e-13 * t_end;

  for (bool last = false; !last;) {
    const double remaining = t_end - time.value();
    SubcharReport report;
    try {
      report = scheme.begin_step(u);
    } catch (const PositivityError& e) {
      ++diag.positivity_failures;
      throw PositivityError(std::string(e.what()) + " before step " +
                            std::to_string(diag.steps + 1));
    }
    if (!report.ok()) ++diag.subchar_warnings;

    double dt = compute_dt(grid, scheme.max_speed(u), policy, remaining);
    last = remaining - dt <= landing;
    if (last) dt = remaining;

    try {
      u = heun_step(rhs, u, dt, diag.steps + 1);
    } catch (const PositivityError& e) {
      ++diag.positivity_failures;
      throw PositivityError(std::string(e.what()) + " during step " +
                            std::to_string(diag.steps + 1));
    }
    ++diag.steps;
    diag.min_dt = std::min(diag.min_dt, dt);
    diag.max_dt = std::max(diag.max_dt, dt);
    time.add(dt);
    if (observer) observer(u, time.value(), diag.steps);
  }

  // Final state must still be admissible (positivity for gas dynamics).
  if constexpr (requires { scheme.model(); }) {
    try {
      (void)scheme.model().max_signal_speed(u);
    } catch (const PositivityError& e) {
      ++diag.positivity_failures;
      throw PositivityError(std::string(e.what()) + " after final step");
    }
  }

  diag.elapsed = time.value();
  const auto mass1 = total_mass(u, grid);
  diag.conservation_drift.resize(mass0.size());
  for (std::size_t i = 0; i < mass0.size(); ++i) {
    diag.conservation_drift[i] = mass1[i] - mass0[i];
  }
  return {std::move(u), std::move(diag)};
}

}  // namespace ktrelax

#endif  // KTRELAX_TIMEINT_HPP
