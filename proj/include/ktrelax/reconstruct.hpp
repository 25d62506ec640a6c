#ifndef KTRELAX_RECONSTRUCT_HPP
#define KTRELAX_RECONSTRUCT_HPP

// Componentwise reconstructions on ghost-extended arrays.
//
// Input arrays hold N = n + 4 values (two ghosts per side). Interface k lies
// between entries k and k+1 of the extended array; reconstructions produce the
// n + 1 interfaces k = 1 .. N-3, i.e. every physical cell edge. Output index
// k-1 therefore corresponds to edge x_{k-3/2} in physical cell numbering.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ktrelax {

inline double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

inline double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

struct MusclLimiter {
  static constexpr double default_theta = 1.5;
  double theta = default_theta;

  void validate() const {
    if (!(theta >= 1.0 && theta <= 2.0)) {
      throw std::invalid_argument("theta must lie in [1, 2], got " +
                                  std::to_string(theta));
    }
  }
};

/// Limited slopes (increments per cell) of the minmod-theta family. Entries
/// 0 and N-1 have no full stencil and are left at zero.
inline void muscl_slopes(std::span<const double> v, double theta,
                         std::span<double> slopes) {
  MusclLimiter{theta}.validate();
  const std::size_t n = v.size();
  if (slopes.size() != n) {
    throw std::invalid_argument("muscl_slopes: output size mismatch");
  }
  if (n == 0) return;
  slopes[0] = 0.0;
  slopes[n - 1] = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double back = v[j] - v[j - 1];
    const double fwd = v[j + 1] - v[j];
    slopes[j] = minmod(theta * back, 0.5 * (v[j + 1] - v[j - 1]), theta * fwd);
  }
}

inline std::vector<double> muscl_slopes(std::span<const double> v,
                                        double theta) {
  std::vector<double> s(v.size());
  muscl_slopes(v, theta, s);
  return s;
}

/// Left (minus) and right (plus) traces at each interface.
struct InterfaceTraces {
  std::vector<double> minus;
  std::vector<double> plus;
};

inline std::size_t interface_count(std::size_t extended_size) {
  if (extended_size < 4) {
    throw std::invalid_argument("reconstruction needs at least 4 values");
  }
  return extended_size - 3;
}

inline void boundary_extrapolate(std::span<const double> v,
                                 std::span<const double> slopes,
                                 std::span<double> minus,
                                 std::span<double> plus) {
  const std::size_t count = interface_count(v.size());
  if (slopes.size() != v.size() || minus.size() != count ||
      plus.size() != count) {
    throw std::invalid_argument("boundary_extrapolate: size mismatch");
  }
  for (std::size_t k = 1; k <= count; ++k) {
    minus[k - 1] = v[k] + 0.5 * slopes[k];
    plus[k - 1] = v[k + 1] - 0.5 * slopes[k + 1];
  }
}

inline InterfaceTraces boundary_extrapolate(std::span<const double> v,
                                            std::span<const double> slopes) {
  const std::size_t count = interface_count(v.size());
  InterfaceTraces t{std::vector<double>(count), std::vector<double>(count)};
  boundary_extrapolate(v, slopes, t.minus, t.plus);
  return t;
}

enum class EnoBias { FromLeft, FromRight };

/// Smaller-magnitude divided difference; ties go to `first`.
inline double eno_pick(double first, double second) {
  return std::abs(second) < std::abs(first) ? second : first;
}

/// Second-order ENO interface values. FromLeft reconstructs in the cell to the
/// left of each interface (right-going waves); FromRight in the cell to the
/// right. Ties take the stencil nearer the upwind side.
inline void eno2_interface(std::span<const double> v, EnoBias bias,
                           std::span<double> out) {
  const std::size_t count = interface_count(v.size());
  if (out.size() != count) {
    throw std::invalid_argument("eno2_interface: output size mismatch");
  }
  if (bias == EnoBias::FromLeft) {
    for (std::size_t k = 1; k <= count; ++k) {
      const double back = v[k] - v[k - 1];
      const double fwd = v[k + 1] - v[k];
      out[k - 1] = v[k] + 0.5 * eno_pick(back, fwd);
    }
  } else {
    for (std::size_t k = 1; k <= count; ++k) {
      const double fwd = v[k + 2] - v[k + 1];
      const double back = v[k + 1] - v[k];
      out[k - 1] = v[k + 1] - 0.5 * eno_pick(fwd, back);
    }
  }
}

inline std::vector<double> eno2_interface(std::span<const double> v,
                                          EnoBias bias) {
  std::vector<double> out(interface_count(v.size()));
  eno2_interface(v, bias, out);
  return out;
}

}  // namespace ktrelax

#endif  // KTRELAX_RECONSTRUCT_HPP
