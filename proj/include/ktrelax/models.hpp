#ifndef KTRELAX_MODELS_HPP
#define KTRELAX_MODELS_HPP

// Concrete conservation laws u_t + f(u)_x = 0.
//
// Every model exposes a fixed component count, the flux, the spectral radius
// of the flux Jacobian at a state, and two field-level speed reductions:
// the global maximum signal speed and one speed bound per component family
// (the diagonal speeds used by the relaxation scheme).

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "ktrelax/core.hpp"

namespace ktrelax {

template <class M>
concept ConservationLaw = requires(const M& model, const typename M::State& u,
                                   const Field& field) {
  { M::components } -> std::convertible_to<std::size_t>;
  { model.flux(u) } -> std::same_as<typename M::State>;
  { model.spectral_radius(u) } -> std::convertible_to<double>;
  { model.max_signal_speed(field) } -> std::convertible_to<double>;
  { model.family_speed_bounds(field) } -> std::same_as<typename M::State>;
  { M::component_names() };
  model.check(u);
};

template <std::size_t M>
std::array<double, M> load_state(std::span<const double> cell) {
  std::array<double, M> s{};
  std::copy_n(cell.begin(), M, s.begin());
  return s;
}

template <class Model>
void require_components(const Field& field) {
  if (field.components() != Model::components) {
    throw std::invalid_argument(
        "field has " + std::to_string(field.components()) +
        " components, model expects " + std::to_string(Model::components));
  }
}

// ---------------------------------------------------------------------------
// Linear advection u_t + a u_x = 0

class AdvectionModel {
 public:
  static constexpr std::size_t components = 1;
  using State = std::array<double, 1>;

  explicit AdvectionModel(double speed = 1.0) : speed_(speed) {}

  double speed() const { return speed_; }

  State flux(const State& u) const { return {speed_ * u[0]}; }
  double spectral_radius(const State&) const { return std::abs(speed_); }
  void check(const State&) const {}

  double max_signal_speed(const Field&) const { return std::abs(speed_); }
  State family_speed_bounds(const Field&) const { return {std::abs(speed_)}; }

  static std::array<std::string_view, 1> component_names() { return {"u"}; }

 private:
  double speed_;
};

/// Periodic translate of sin(2 pi x) with unit speed.
inline double advection_exact(double x, double t) {
  return std::sin(2.0 * std::numbers::pi * (x - t));
}

// ---------------------------------------------------------------------------
// Non-convex scalar flux f(u) = (u^2 - 1)(u^2 - 4)/4

inline double nonconvex_flux(double u) {
  const double u2 = u * u;
  return 0.25 * (u2 - 1.0) * (u2 - 4.0);
}

inline double nonconvex_dflux(double u) { return u * u * u - 2.5 * u; }

class NonConvexModel {
 public:
  static constexpr std::size_t components = 1;
  using State = std::array<double, 1>;

  State flux(const State& u) const { return {nonconvex_flux(u[0])}; }
  double spectral_radius(const State& u) const {
    return std::abs(nonconvex_dflux(u[0]));
  }
  void check(const State&) const {}

  double max_signal_speed(const Field& f) const {
    double s = 0.0;
    for (std::size_t j = 0; j < f.n_cells(); ++j) {
      s = std::max(s, std::abs(nonconvex_dflux(f(j, 0))));
    }
    return s;
  }
  State family_speed_bounds(const Field& f) const {
    return {max_signal_speed(f)};
  }

  static std::array<std::string_view, 1> component_names() { return {"u"}; }
};

// ---------------------------------------------------------------------------
// Euler equations of an ideal gas, conserved state (rho, m, E)

struct EulerPrimitive {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;

  bool operator==(const EulerPrimitive&) const = default;
};

class EulerModel {
 public:
  static constexpr std::size_t components = 3;
  static constexpr double default_gamma = 1.4;
  using State = std::array<double, 3>;

  explicit EulerModel(double gamma = default_gamma) : gamma_(gamma) {
    if (!(gamma > 1.0)) {
      throw std::invalid_argument("EulerModel: gamma must exceed 1");
    }
  }

  double gamma() const { return gamma_; }

  State prim_to_cons(const EulerPrimitive& w) const {
    if (!(w.rho > 0.0) || !(w.p > 0.0)) {
      throw PositivityError("nonpositive primitive state: rho=" +
                            std::to_string(w.rho) +
                            ", p=" + std::to_string(w.p));
    }
    return {w.rho, w.rho * w.u,
            w.p / (gamma_ - 1.0) + 0.5 * w.rho * w.u * w.u};
  }

  EulerPrimitive cons_to_prim(const State& q) const {
    if (!(q[0] > 0.0)) {
      throw PositivityError("nonpositive density " + std::to_string(q[0]));
    }
    const double u = q[1] / q[0];
    const double p = (gamma_ - 1.0) * (q[2] - 0.5 * q[1] * u);
    if (!(p > 0.0)) {
      throw PositivityError("nonpositive pressure " + std::to_string(p) +
                            " (rho=" + std::to_string(q[0]) + ")");
    }
    return {q[0], u, p};
  }

  double sound_speed(const EulerPrimitive& w) const {
    return std::sqrt(gamma_ * w.p / w.rho);
  }

  State flux(const State& q) const {
    const auto w = cons_to_prim(q);
    return {q[1], q[1] * w.u + w.p, w.u * (q[2] + w.p)};
  }

  double spectral_radius(const State& q) const {
    const auto w = cons_to_prim(q);
    return std::abs(w.u) + sound_speed(w);
  }

  void check(const State& q) const { (void)cons_to_prim(q); }

  /// (max_j |u_j - c_j|, max_j |u_j|, max_j |u_j + c_j|)
  State family_speed_bounds(const Field& f) const {
    require_components<EulerModel>(f);
    State bounds{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < f.n_cells(); ++j) {
      EulerPrimitive w;
      try {
        w = cons_to_prim(load_state<3>(f.cell(j)));
      } catch (const PositivityError& e) {
        throw PositivityError(std::string(e.what()) + " in cell " +
                              std::to_string(j));
      }
      const double c = sound_speed(w);
      bounds[0] = std::max(bounds[0], std::abs(w.u - c));
      bounds[1] = std::max(bounds[1], std::abs(w.u));
      bounds[2] = std::max(bounds[2], std::abs(w.u + c));
    }
    return bounds;
  }

  double max_signal_speed(const Field& f) const {
    const auto b = family_speed_bounds(f);
    return std::max({b[0], b[1], b[2]});
  }

  static std::array<std::string_view, 3> component_names() {
    return {"rho", "momentum", "energy"};
  }

 private:
  double gamma_;
};

static_assert(ConservationLaw<AdvectionModel>);
static_assert(ConservationLaw<NonConvexModel>);
static_assert(ConservationLaw<EulerModel>);

}  // namespace ktrelax

#endif  // KTRELAX_MODELS_HPP
