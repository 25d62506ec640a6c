#ifndef KTRELAX_RIEMANN_HPP
#define KTRELAX_RIEMANN_HPP

// Riemann problem set-ups and the exact ideal-gas Riemann solver used as the
// reference for the gas-dynamics benchmark.

#include <algorithm>
#include <cmath>
#include <string>

#include "ktrelax/models.hpp"

namespace ktrelax {

template <class S>
struct RiemannSetup {
  S left{};
  S right{};
  double interface = 0.0;
  double x_min = -1.0;
  double x_max = 1.0;
  double t_end = 1.0;

  /// Rejects set-ups whose waves could reach the domain boundary.
  void validate(double max_speed) const {
    if (!(interface > x_min && interface < x_max)) {
      throw std::invalid_argument("RiemannSetup: interface outside domain");
    }
    if (!(t_end > 0.0)) {
      throw std::invalid_argument("RiemannSetup: t_end must be positive");
    }
    const double reach = max_speed * t_end;
    if (interface - reach <= x_min || interface + reach >= x_max) {
      throw std::invalid_argument(
          "RiemannSetup: waves leave the domain before t_end");
    }
  }
};

/// u_l = 2, u_r = -2 on [-1, 1]; two shocks joined by a rarefaction.
inline RiemannSetup<double> nonconvex_riemann_setup() {
  return {2.0, -2.0, 0.0, -1.0, 1.0, 0.25};
}

inline RiemannSetup<EulerPrimitive> lax_riemann_setup() {
  return {{0.445, 0.698, 3.528}, {0.5, 0.0, 0.571}, 0.0, -0.5, 0.5, 0.16};
}

inline RiemannSetup<EulerPrimitive> sod_riemann_setup() {
  return {{1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 0.0, -0.5, 0.5, 0.2};
}

// ---------------------------------------------------------------------------
// Exact solver

struct StarState {
  double p = 0.0;
  double u = 0.0;
  double rho_left = 0.0;   // density between left wave and contact
  double rho_right = 0.0;  // density between contact and right wave
  int iterations = 0;
};

/// Self-similar solution of the ideal-gas Riemann problem: star-region
/// pressure by Newton iteration on the pressure function, then sampling of
/// the left wave / contact / right wave fan at xi = x/t.
class ExactRiemannEuler {
 public:
  static constexpr int max_iterations = 100;
  static constexpr double tolerance = 1e-12;

  ExactRiemannEuler(const EulerPrimitive& left, const EulerPrimitive& right,
                    double gamma = EulerModel::default_gamma)
      : left_(left), right_(right), g_(gamma) {
    if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 &&
          right.p > 0.0)) {
      throw PositivityError("exact Riemann solver: nonpositive input state");
    }
    cl_ = std::sqrt(g_ * left.p / left.rho);
    cr_ = std::sqrt(g_ * right.p / right.rho);
    if (2.0 / (g_ - 1.0) * (cl_ + cr_) <= right.u - left.u) {
      throw NumericalError("exact Riemann solver: initial data generate vacuum");
    }
    solve_star();
  }

  const StarState& star() const { return star_; }

  EulerPrimitive sample(double xi) const {
    const double g = g_;
    if (xi <= star_.u) {
      const auto& w = left_;
      const double c = cl_;
      if (star_.p > w.p) {
        const double q = star_.p / w.p;
        const double s =
            w.u - c * std::sqrt((g + 1.0) / (2.0 * g) * q + (g - 1.0) / (2.0 * g));
        return xi <= s ? w : EulerPrimitive{star_.rho_left, star_.u, star_.p};
      }
      const double c_star = c * std::pow(star_.p / w.p, (g - 1.0) / (2.0 * g));
      const double head = w.u - c;
      const double tail = star_.u - c_star;
      if (xi <= head) return w;
      if (xi >= tail) return {star_.rho_left, star_.u, star_.p};
      const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
      return {w.rho * std::pow(k, 2.0 / (g - 1.0)),
              2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi),
              w.p * std::pow(k, 2.0 * g / (g - 1.0))};
    }
    const auto& w = right_;
    const double c = cr_;
    if (star_.p > w.p) {
      const double q = star_.p / w.p;
      const double s =
          w.u + c * std::sqrt((g + 1.0) / (2.0 * g) * q + (g - 1.0) / (2.0 * g));
      return xi >= s ? w : EulerPrimitive{star_.rho_right, star_.u, star_.p};
    }
    const double c_star = c * std::pow(star_.p / w.p, (g - 1.0) / (2.0 * g));
    const double head = w.u + c;
    const double tail = star_.u + c_star;
    if (xi >= head) return w;
    if (xi <= tail) return {star_.rho_right, star_.u, star_.p};
    const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
    return {w.rho * std::pow(k, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + xi),
            w.p * std::pow(k, 2.0 * g / (g - 1.0))};
  }

  /// Fastest wave speed magnitude in the fan.
  double max_wave_speed() const {
    double s = 0.0;
    for (double xi : {left_edge_speed(), right_edge_speed()}) {
      s = std::max(s, std::abs(xi));
    }
    return s;
  }

 private:
  // Pressure function of one side and its derivative.
  void side_function(double p, const EulerPrimitive& w, double c, double& f,
                     double& df) const {
    const double g = g_;
    if (p > w.p) {
      const double a = 2.0 / ((g + 1.0) * w.rho);
      const double b = (g - 1.0) / (g + 1.0) * w.p;
      const double root = std::sqrt(a / (p + b));
      f = (p - w.p) * root;
      df = root * (1.0 - 0.5 * (p - w.p) / (p + b));
    } else {
      const double ratio = p / w.p;
      f = 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
      df = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (w.rho * c);
    }
  }

  double initial_guess() const {
    const double z = (g_ - 1.0) / (2.0 * g_);
    const double num = cl_ + cr_ - 0.5 * (g_ - 1.0) * (right_.u - left_.u);
    const double den = cl_ / std::pow(left_.p, z) + cr_ / std::pow(right_.p, z);
    const double p = std::pow(num / den, 1.0 / z);
    if (std::isfinite(p) && p > 0.0) return p;
    return 0.5 * (left_.p + right_.p);
  }

  void solve_star() {
    double p = initial_guess();
    const double du = right_.u - left_.u;
    for (int it = 1; it <= max_iterations; ++it) {
      double fl = 0.0, dfl = 0.0, fr = 0.0, dfr = 0.0;
      side_function(p, left_, cl_, fl, dfl);
      side_function(p, right_, cr_, fr, dfr);
      double next = p - (fl + fr + du) / (dfl + dfr);
      if (!(next > 0.0)) next = 1e-3 * p;
      const double change = 2.0 * std::abs(next - p) / (next + p);
      p = next;
      if (change < tolerance) {
        side_function(p, left_, cl_, fl, dfl);
        side_function(p, right_, cr_, fr, dfr);
        star_.p = p;
        star_.u = 0.5 * (left_.u + right_.u) + 0.5 * (fr - fl);
        star_.rho_left = star_density(left_);
        star_.rho_right = star_density(right_);
        star_.iterations = it;
        return;
      }
    }
    throw ConvergenceError("exact Riemann solver: Newton iteration failed after " +
                           std::to_string(max_iterations) + " iterations");
  }

  double star_density(const EulerPrimitive& w) const {
    const double g = g_;
    if (star_.p > w.p) {
      const double q = star_.p / w.p;
      const double r = (g - 1.0) / (g + 1.0);
      return w.rho * (q + r) / (r * q + 1.0);
    }
    return w.rho * std::pow(star_.p / w.p, 1.0 / g);
  }

  double left_edge_speed() const {
    if (star_.p > left_.p) {
      return left_.u - cl_ * std::sqrt((g_ + 1.0) / (2.0 * g_) * star_.p / left_.p +
                                       (g_ - 1.0) / (2.0 * g_));
    }
    return left_.u - cl_;
  }
  double right_edge_speed() const {
    if (star_.p > right_.p) {
      return right_.u + cr_ * std::sqrt((g_ + 1.0) / (2.0 * g_) * star_.p / right_.p +
                                        (g_ - 1.0) / (2.0 * g_));
    }
    return right_.u + cr_;
  }

  EulerPrimitive left_;
  EulerPrimitive right_;
  double g_;
  double cl_ = 0.0;
  double cr_ = 0.0;
  StarState star_;
};

inline EulerPrimitive exact_riemann_euler(const EulerPrimitive& left,
                                          const EulerPrimitive& right,
                                          double xi,
                                          double gamma = EulerModel::default_gamma) {
  return ExactRiemannEuler(left, right, gamma).sample(xi);
}

}  // namespace ktrelax

#endif  // KTRELAX_RIEMANN_HPP
