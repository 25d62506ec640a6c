#ifndef KTRELAX_REFERENCE_HPP
#define KTRELAX_REFERENCE_HPP

// First-order monotone (local Lax-Friedrichs / Rusanov) fine-grid solutions
// used as entropy-solution references, and conservative transfer of cell
// averages between grids on the same interval.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ktrelax/core.hpp"
#include "ktrelax/models.hpp"

namespace ktrelax {

struct ReferenceSolution {
  Grid1D grid;
  Field field;
};

inline constexpr std::size_t min_reference_cells = 4096;
inline constexpr double reference_cfl = 0.4;

template <ConservationLaw Model>
ReferenceSolution rusanov_reference(const Model& model, const Grid1D& fine,
                                    BoundaryKind bc,
                                    const PointFunction& initial,
                                    double t_end) {
  constexpr std::size_t m = Model::components;
  if (fine.n_cells() < min_reference_cells) {
    throw std::invalid_argument("rusanov_reference: need at least " +
                                std::to_string(min_reference_cells) + " cells");
  }
  if (!(t_end >= 0.0)) {
    throw std::invalid_argument("rusanov_reference: t_end must be >= 0");
  }
  const std::size_t n = fine.n_cells();
  Field u = cell_average(fine, m, initial);
  std::vector<double> flux((n + 1) * m);
  CompensatedSum time;

  while (t_end - time.value() > 1e-14 * std::max(1.0, t_end)) {
    const double remaining = t_end - time.value();
    const double s_max = model.max_signal_speed(u);
    const double dt = s_max > 0.0
                          ? std::min(reference_cfl * fine.dx() / s_max, remaining)
                          : remaining;
    const Field ext = extend_with_ghosts(u, bc, 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto ul = load_state<m>(ext.cell(k));
      const auto ur = load_state<m>(ext.cell(k + 1));
      const double a =
          std::max(model.spectral_radius(ul), model.spectral_radius(ur));
      const auto fl = model.flux(ul);
      const auto fr = model.flux(ur);
      for (std::size_t i = 0; i < m; ++i) {
        flux[k * m + i] = 0.5 * (fl[i] + fr[i]) - 0.5 * a * (ur[i] - ul[i]);
      }
    }
    const double ratio = dt / fine.dx();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        u(j, i) -= ratio * (flux[(j + 1) * m + i] - flux[j * m + i]);
      }
    }
    time.add(dt);
  }
  return {fine, std::move(u)};
}

/// Overlap-weighted averaging of `source` (on `from`) onto the cells of `to`.
/// Both grids must span the same interval.
inline Field conservative_average(const Field& source, const Grid1D& from,
                                  const Grid1D& to) {
  const double tol = 1e-12 * std::max(1.0, from.length());
  if (std::abs(from.x_min() - to.x_min()) > tol ||
      std::abs(from.x_max() - to.x_max()) > tol) {
    throw std::invalid_argument("conservative_average: grids differ in extent");
  }
  if (source.n_cells() != from.n_cells()) {
    throw std::invalid_argument("conservative_average: field/grid mismatch");
  }
  const std::size_t m = source.components();
  Field out(to.n_cells(), m);
  std::size_t k = 0;
  for (std::size_t j = 0; j < to.n_cells(); ++j) {
    const double a = to.left_edge(j);
    const double b = (j + 1 == to.n_cells()) ? to.x_max() : to.left_edge(j + 1);
    while (k + 1 < from.n_cells() && from.left_edge(k + 1) <= a) ++k;
    for (std::size_t q = k; q < from.n_cells(); ++q) {
      const double lo = std::max(a, from.left_edge(q));
      const double hi = std::min(b, from.left_edge(q) + from.dx());
      if (lo >= b) break;
      if (hi <= lo) continue;
      const double w = (hi - lo) / (b - a);
      for (std::size_t i = 0; i < m; ++i) out(j, i) += w * source(q, i);
    }
  }
  return out;
}

}  // namespace ktrelax

#endif  // KTRELAX_REFERENCE_HPP
