#ifndef KTRELAX_SCHEMES_HPP
#define KTRELAX_SCHEMES_HPP

// Semidiscrete right-hand sides L(u) for u_t = L(u):
//
//  * KtScheme: Kurganov-Tadmor central flux on minmod-theta boundary
//    extrapolated data, with one local speed per interface shared by all
//    components.
//  * RelaxScheme: Jin-Xin relaxation in the relaxed limit. For every
//    component the 2x2 block (u_i, v_i) is diagonalised into w+ = v + A u and
//    w- = v - A u, each reconstructed upwind with ENO2, with v projected onto
//    f(u) at every evaluation.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "ktrelax/core.hpp"
#include "ktrelax/models.hpp"
#include "ktrelax/reconstruct.hpp"

namespace ktrelax {

/// Status returned once per time step by a scheme's `begin_step`.
struct SubcharReport {
  enum class Status { Ok, Warning, Violation };
  Status status = Status::Ok;
  double physical_speed = 0.0;  // global spectral radius of the Jacobian
  double relaxation_speed = 0.0;  // the bound it was compared against
  std::string message;

  bool ok() const { return status == Status::Ok; }
};

template <class S>
concept SemidiscreteScheme =
    requires(S& s, const S& cs, const Field& f, const Grid1D& g,
             BoundaryKind bc) {
      { cs.rhs(f, g, bc) } -> std::same_as<Field>;
      { cs.max_speed(f) } -> std::convertible_to<double>;
      { s.begin_step(f) } -> std::same_as<SubcharReport>;
      { cs.name() } -> std::convertible_to<std::string>;
    };

namespace detail {

template <ConservationLaw Model>
typename Model::State checked_flux(const Model& model,
                                   const typename Model::State& u,
                                   const char* where, std::size_t index) {
  try {
    return model.flux(u);
  } catch (const PositivityError& e) {
    throw PositivityError(std::string(e.what()) + " at " + where + " " +
                          std::to_string(index));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kurganov-Tadmor

template <ConservationLaw Model>
double kt_local_speed(const typename Model::State& u_minus,
                      const typename Model::State& u_plus, const Model& model) {
  return std::max(model.spectral_radius(u_minus),
                  model.spectral_radius(u_plus));
}

template <ConservationLaw Model>
typename Model::State kt_numerical_flux(const typename Model::State& u_minus,
                                        const typename Model::State& u_plus,
                                        double a, const Model& model) {
  if (!(a >= 0.0)) {
    throw std::invalid_argument("kt_numerical_flux: local speed must be >= 0");
  }
  const auto fm = model.flux(u_minus);
  const auto fp = model.flux(u_plus);
  typename Model::State out{};
  for (std::size_t i = 0; i < Model::components; ++i) {
    out[i] = 0.5 * (fp[i] + fm[i] - a * (u_plus[i] - u_minus[i]));
  }
  return out;
}

/// Conservative difference of interface fluxes; `flux` holds n+1 interfaces
/// (cell-major, m components each), the first being the left edge of cell 0.
inline Field flux_difference(const std::vector<double>& flux, std::size_t n,
                             std::size_t m, double dx) {
  Field out(n, m);
  const double inv_dx = 1.0 / dx;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      out(j, i) = -(flux[(j + 1) * m + i] - flux[j * m + i]) * inv_dx;
    }
  }
  return out;
}

template <ConservationLaw Model>
Field kt_rhs(const Model& model, const MusclLimiter& limiter,
             const Field& field, const Grid1D& grid, BoundaryKind bc) {
  constexpr std::size_t m = Model::components;
  require_components<Model>(field);
  const std::size_t n = field.n_cells();
  const Field ext = extend_with_ghosts(field, bc);
  const std::size_t count = interface_count(ext.n_cells());

  std::vector<std::vector<double>> minus(m), plus(m);
  std::vector<double> slopes(ext.n_cells());
  for (std::size_t i = 0; i < m; ++i) {
    const auto column = ext.component(i);
    muscl_slopes(column, limiter.theta, slopes);
    minus[i].resize(count);
    plus[i].resize(count);
    boundary_extrapolate(column, slopes, minus[i], plus[i]);
  }

  std::vector<double> flux(count * m);
  for (std::size_t k = 0; k < count; ++k) {
    typename Model::State um{}, up{};
    for (std::size_t i = 0; i < m; ++i) {
      um[i] = minus[i][k];
      up[i] = plus[i][k];
    }
    double a = 0.0;
    try {
      a = kt_local_speed(um, up, model);
    } catch (const PositivityError& e) {
      throw PositivityError(std::string(e.what()) + " at interface " +
                            std::to_string(k) + " (left edge of cell " +
                            std::to_string(k) + ")");
    }
    const auto f = kt_numerical_flux(um, up, a, model);
    std::copy(f.begin(), f.end(), flux.begin() + static_cast<long>(k * m));
  }
  return flux_difference(flux, n, m, grid.dx());
}

template <ConservationLaw Model>
class KtScheme {
 public:
  explicit KtScheme(Model model = Model(), MusclLimiter limiter = {})
      : model_(std::move(model)), limiter_(limiter) {
    limiter_.validate();
  }

  const Model& model() const { return model_; }
  double theta() const { return limiter_.theta; }
  std::string name() const { return "kt"; }

  Field rhs(const Field& field, const Grid1D& grid, BoundaryKind bc) const {
    return kt_rhs(model_, limiter_, field, grid, bc);
  }

  double max_speed(const Field& field) const {
    return model_.max_signal_speed(field);
  }

  SubcharReport begin_step(const Field& field) {
    return {SubcharReport::Status::Ok, model_.max_signal_speed(field), 0.0, {}};
  }

 private:
  Model model_;
  MusclLimiter limiter_;
};

// ---------------------------------------------------------------------------
// Relaxation (relaxed limit)

inline constexpr double relaxation_speed_floor = 1e-12;

template <ConservationLaw Model>
typename Model::State relax_update_speeds(const Model& model,
                                          const Field& field, double safety) {
  if (!(safety >= 1.0)) {
    throw std::invalid_argument("relaxation safety factor must be >= 1");
  }
  auto speeds = model.family_speed_bounds(field);
  for (auto& a : speeds) a = std::max(safety * a, relaxation_speed_floor);
  return speeds;
}

template <ConservationLaw Model>
SubcharReport subchar_check(const Field& field,
                            const typename Model::State& speeds,
                            const Model& model) {
  SubcharReport r;
  r.physical_speed = model.max_signal_speed(field);
  const double a_max = *std::max_element(speeds.begin(), speeds.end());
  const double a_min = *std::min_element(speeds.begin(), speeds.end());
  if (r.physical_speed > a_max) {
    r.status = SubcharReport::Status::Violation;
    r.relaxation_speed = a_max;
    r.message = "subcharacteristic condition violated: max signal speed " +
                std::to_string(r.physical_speed) + " exceeds relaxation speed " +
                std::to_string(a_max);
  } else if (Model::components > 1 && r.physical_speed > a_min) {
    r.status = SubcharReport::Status::Warning;
    r.relaxation_speed = a_min;
    r.message = "spectral radius " + std::to_string(r.physical_speed) +
                " exceeds the smallest family speed " + std::to_string(a_min);
  } else {
    r.relaxation_speed = a_max;
  }
  return r;
}

template <ConservationLaw Model>
Field relax_rhs(const Model& model, const Field& field, const Grid1D& grid,
                BoundaryKind bc, const typename Model::State& speeds) {
  constexpr std::size_t m = Model::components;
  require_components<Model>(field);
  for (double a : speeds) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("relax_rhs: relaxation speeds must be > 0");
    }
  }
  const std::size_t n = field.n_cells();
  const Field ext = extend_with_ghosts(field, bc);
  const std::size_t ne = ext.n_cells();
  const std::size_t count = interface_count(ne);

  // Relaxed equilibrium v = f(u) on every extended cell.
  Field v(ne, m);
  for (std::size_t j = 0; j < ne; ++j) {
    const auto f = detail::checked_flux(model, load_state<m>(ext.cell(j)),
                                        "extended cell", j);
    std::ranges::copy(f, v.cell(j).begin());
  }

  std::vector<double> w_plus(ne), w_minus(ne), trace_plus(count),
      trace_minus(count);
  std::vector<double> flux(count * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = speeds[i];
    for (std::size_t j = 0; j < ne; ++j) {
      w_plus[j] = v(j, i) + a * ext(j, i);
      w_minus[j] = v(j, i) - a * ext(j, i);
    }
    eno2_interface(w_plus, EnoBias::FromLeft, trace_plus);
    eno2_interface(w_minus, EnoBias::FromRight, trace_minus);
    for (std::size_t k = 0; k < count; ++k) {
      flux[k * m + i] = 0.5 * (trace_plus[k] + trace_minus[k]);
    }
  }
  return flux_difference(flux, n, m, grid.dx());
}

template <ConservationLaw Model>
class RelaxScheme {
 public:
  static constexpr double default_safety = 1.0;
  using Speeds = typename Model::State;

  explicit RelaxScheme(Model model = Model(), double safety = default_safety)
      : model_(std::move(model)), safety_(safety) {
    if (!(safety >= 1.0)) {
      throw std::invalid_argument("relaxation safety factor must be >= 1");
    }
    speeds_.fill(1.0);
  }

  const Model& model() const { return model_; }
  double safety() const { return safety_; }
  const Speeds& speeds() const { return speeds_; }
  void set_speeds(const Speeds& a) { speeds_ = a; }
  std::string name() const { return "relax"; }

  /// Recomputes the diagonal relaxation speeds from the current field.
  const Speeds& update_speeds(const Field& field) {
    speeds_ = relax_update_speeds(model_, field, safety_);
    return speeds_;
  }

  Field rhs(const Field& field, const Grid1D& grid, BoundaryKind bc) const {
    return relax_rhs(model_, field, grid, bc, speeds_);
  }

  double max_speed(const Field&) const {
    return *std::max_element(speeds_.begin(), speeds_.end());
  }

  SubcharReport begin_step(const Field& field) {
    update_speeds(field);
    return subchar_check(field, speeds_, model_);
  }

 private:
  Model model_;
  double safety_;
  Speeds speeds_{};
};

static_assert(SemidiscreteScheme<KtScheme<AdvectionModel>>);
static_assert(SemidiscreteScheme<RelaxScheme<EulerModel>>);

}  // namespace ktrelax

#endif  // KTRELAX_SCHEMES_HPP
