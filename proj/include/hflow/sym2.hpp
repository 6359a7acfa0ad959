#ifndef HFLOW_SYM2_HPP_
#define HFLOW_SYM2_HPP_

#include <algorithm>
#include <cmath>

namespace hflow {

struct Vec2
{
  double x{0.0};
  double y{0.0};

  double norm() const { return std::hypot(x, y); }
  /// Counter-clockwise perpendicular (-y, x).
  Vec2 perp() const { return {-y, x}; }

  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

/// Symmetrized horizontal Hessian [[a11, a12], [a12, a22]].
struct HessianSym2
{
  double a11{0.0};
  double a12{0.0};
  double a22{0.0};

  /// <H v, v>, written so that v and -v give bit-identical results.
  double quad(const Vec2 &v) const { return a11 * v.x * v.x + 2.0 * a12 * (v.x * v.y) + a22 * v.y * v.y; }

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a12; }
  double max_abs() const { return std::max({std::abs(a11), std::abs(a12), std::abs(a22)}); }

  // closed form: mean +- sqrt(((a11 - a22) / 2)^2 + a12^2)
  double eig_min() const { return 0.5 * (a11 + a22) - std::hypot(0.5 * (a11 - a22), a12); }
  double eig_max() const { return 0.5 * (a11 + a22) + std::hypot(0.5 * (a11 - a22), a12); }

  friend constexpr bool operator==(const HessianSym2 &, const HessianSym2 &) = default;
};

}  // namespace hflow

#endif  // HFLOW_SYM2_HPP_
