#ifndef KTRELAX_CORE_HPP
#define KTRELAX_CORE_HPP

// Grids, cell-average fields, ghost cells, the CFL time-step policy and the
// discrete norms shared by every scheme.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ktrelax {

/// Base class of every failure raised while a run is in progress.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density or pressure dropped to zero or below.
class PositivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// Grid1D

class Grid1D {
 public:
  static constexpr std::size_t min_cells = 4;

  Grid1D(double x_min, double x_max, std::size_t n_cells)
      : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
      throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    }
    if (n_cells < min_cells) {
      throw std::invalid_argument("Grid1D: need at least " +
                                  std::to_string(min_cells) + " cells, got " +
                                  std::to_string(n_cells));
    }
    dx_ = (x_max - x_min) / static_cast<double>(n_cells);
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }

  double center(std::size_t j) const {
    return x_min_ + (static_cast<double>(j) + 0.5) * dx_;
  }
  double left_edge(std::size_t j) const {
    return x_min_ + static_cast<double>(j) * dx_;
  }

 private:
  double x_min_;
  double x_max_;
  std::size_t n_cells_;
  double dx_;
};

inline std::vector<double> cell_centers(const Grid1D& grid) {
  std::vector<double> x(grid.n_cells());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = grid.center(j);
  return x;
}

// ---------------------------------------------------------------------------
// Field

/// Cell averages of `components` conserved quantities, stored cell-major:
/// all components of cell 0, then cell 1, ...
class Field {
 public:
  Field() = default;
  Field(std::size_t n_cells, std::size_t components, double fill = 0.0)
      : n_cells_(n_cells), components_(components),
        data_(n_cells * components, fill) {
    if (components == 0) {
      throw std::invalid_argument("Field: component count must be positive");
    }
  }

  std::size_t n_cells() const { return n_cells_; }
  std::size_t components() const { return components_; }

  double& operator()(std::size_t j, std::size_t i) {
    return data_[j * components_ + i];
  }
  double operator()(std::size_t j, std::size_t i) const {
    return data_[j * components_ + i];
  }

  std::span<double> cell(std::size_t j) {
    return {data_.data() + j * components_, components_};
  }
  std::span<const double> cell(std::size_t j) const {
    return {data_.data() + j * components_, components_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Copies component `i` into a contiguous array.
  std::vector<double> component(std::size_t i) const {
    std::vector<double> out(n_cells_);
    for (std::size_t j = 0; j < n_cells_; ++j) out[j] = (*this)(j, i);
    return out;
  }

  bool same_shape(const Field& other) const {
    return n_cells_ == other.n_cells_ && components_ == other.components_;
  }

  bool operator==(const Field&) const = default;

 private:
  std::size_t n_cells_ = 0;
  std::size_t components_ = 0;
  std::vector<double> data_;
};

/// Throws NumericalError naming the first non-finite entry.
inline void validate_finite(const Field& f, const std::string& context = {}) {
  for (std::size_t j = 0; j < f.n_cells(); ++j) {
    for (std::size_t i = 0; i < f.components(); ++i) {
      if (!std::isfinite(f(j, i))) {
        std::string msg = "non-finite value in cell " + std::to_string(j) +
                          ", component " + std::to_string(i);
        if (!context.empty()) msg += " (" + context + ")";
        throw NumericalError(msg);
      }
    }
  }
}

/// `a + s * b`, the building block of every Runge-Kutta stage.
inline Field axpy(const Field& a, double s, const Field& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("axpy: shape mismatch");
  Field out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] += s * bd[k];
  return out;
}

// ---------------------------------------------------------------------------
// Boundaries

enum class BoundaryKind { Periodic, Outflow };

inline constexpr std::size_t ghost_width = 2;

/// Returns a field with `width` ghost cells on each side.
inline Field extend_with_ghosts(const Field& f, BoundaryKind bc,
                                std::size_t width = ghost_width) {
  if (width > 2) {
    throw std::invalid_argument("extend_with_ghosts: width " +
                                std::to_string(width) + " exceeds 2");
  }
  const std::size_t n = f.n_cells();
  const std::size_t m = f.components();
  if (n < width) {
    throw std::invalid_argument("extend_with_ghosts: fewer cells than ghosts");
  }
  Field ext(n + 2 * width, m);
  for (std::size_t j = 0; j < n; ++j) {
    std::ranges::copy(f.cell(j), ext.cell(j + width).begin());
  }
  for (std::size_t g = 0; g < width; ++g) {
    std::size_t left_src = 0;
    std::size_t right_src = n - 1;
    if (bc == BoundaryKind::Periodic) {
      left_src = n - width + g;
      right_src = g;
    }
    std::ranges::copy(f.cell(left_src), ext.cell(g).begin());
    std::ranges::copy(f.cell(right_src), ext.cell(n + width + g).begin());
  }
  return ext;
}

// ---------------------------------------------------------------------------
// Time-step policy

enum class CflMode { Convective, Parabolic };

struct CflPolicy {
  static constexpr double default_constant = 0.45;

  CflMode mode = CflMode::Convective;
  double constant = default_constant;
};

/// Convective: C*dx/s_max; parabolic: C*dx^2. Never exceeds `t_remaining`.
inline double compute_dt(const Grid1D& grid, double s_max,
                         const CflPolicy& policy, double t_remaining) {
  if (!(policy.constant > 0.0)) {
    throw std::invalid_argument("compute_dt: CFL constant must be positive");
  }
  if (!(t_remaining > 0.0)) {
    throw std::invalid_argument("compute_dt: t_remaining must be positive");
  }
  double candidate = 0.0;
  if (policy.mode == CflMode::Convective) {
    if (!(s_max > 0.0) || !std::isfinite(s_max)) {
      throw NumericalError(
          "compute_dt: maximum signal speed is zero; no wave motion");
    }
    candidate = policy.constant * grid.dx() / s_max;
  } else {
    candidate = policy.constant * grid.dx() * grid.dx();
  }
  return std::min(candidate, t_remaining);
}

// ---------------------------------------------------------------------------
// Norms

inline std::vector<double> total_mass(const Field& f, const Grid1D& grid) {
  std::vector<double> mass(f.components(), 0.0);
  for (std::size_t j = 0; j < f.n_cells(); ++j) {
    for (std::size_t i = 0; i < f.components(); ++i) mass[i] += f(j, i);
  }
  for (auto& v : mass) v *= grid.dx();
  return mass;
}

inline std::vector<double> l1_distance(const Field& a, const Field& b,
                                       const Grid1D& grid) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("l1_distance: shape mismatch");
  }
  std::vector<double> d(a.components(), 0.0);
  for (std::size_t j = 0; j < a.n_cells(); ++j) {
    for (std::size_t i = 0; i < a.components(); ++i) {
      d[i] += std::abs(a(j, i) - b(j, i));
    }
  }
  for (auto& v : d) v *= grid.dx();
  return d;
}

/// Sum of |u_{j+1} - u_j| over the cells of one component (no wrap-around).
inline double total_variation(const Field& f, std::size_t component = 0) {
  double tv = 0.0;
  for (std::size_t j = 0; j + 1 < f.n_cells(); ++j) {
    tv += std::abs(f(j + 1, component) - f(j, component));
  }
  return tv;
}

// ---------------------------------------------------------------------------
// Cell averaging of point data

namespace detail {

struct GaussRule {
  std::span<const double> nodes;    // on [-1, 1]
  std::span<const double> weights;  // sum to 2
};

inline constexpr std::array<double, 3> gl3_nodes{-0.7745966692414834, 0.0,
                                                 0.7745966692414834};
inline constexpr std::array<double, 3> gl3_weights{
    0.5555555555555556, 0.8888888888888888, 0.5555555555555556};

inline constexpr std::array<double, 5> gl5_nodes{
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
    0.9061798459386640};
inline constexpr std::array<double, 5> gl5_weights{
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

inline GaussRule gauss_rule(std::size_t points) {
  switch (points) {
    case 3: return {gl3_nodes, gl3_weights};
    case 5: return {gl5_nodes, gl5_weights};
    default:
      throw std::invalid_argument("gauss_rule: only 3 or 5 points supported");
  }
}

}  // namespace detail

/// Point-valued initial data: fills `out` (length m) with the state at x.
using PointFunction = std::function<void(double x, std::span<double> out)>;

/// Cell averages of `fn` by Gauss-Legendre quadrature (3 or 5 points).
inline Field cell_average(const Grid1D& grid, std::size_t components,
                          const PointFunction& fn, std::size_t points = 3) {
  const auto rule = detail::gauss_rule(points);
  Field f(grid.n_cells(), components);
  std::vector<double> sample(components);
  const double half = 0.5 * grid.dx();
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const double xc = grid.center(j);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      fn(xc + half * rule.nodes[q], sample);
      for (std::size_t i = 0; i < components; ++i) {
        f(j, i) += 0.5 * rule.weights[q] * sample[i];
      }
    }
  }
  return f;
}

/// Scalar convenience overload.
inline Field cell_average(const Grid1D& grid,
                          const std::function<double(double)>& fn,
                          std::size_t points = 3) {
  return cell_average(
      grid, 1, [&](double x, std::span<double> out) { out[0] = fn(x); },
      points);
}

/// Neumaier-compensated accumulator, used for simulation time.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }
  void reset(double v = 0.0) {
    sum_ = v;
    carry_ = 0.0;
  }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace ktrelax

#endif  // KTRELAX_CORE_HPP
