#ifndef HFLOW_HGROUP_HPP_
#define HFLOW_HGROUP_HPP_

/**
 * @file
 * @brief Group calculus on the first Heisenberg group (R^3 with the
 * non-commutative product), Koranyi gauge, dilations and horizontal steps.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hflow {

/// A point of the Heisenberg group in exponential coordinates.
struct Point
{
  double x{0.0};
  double y{0.0};
  double z{0.0};

  friend constexpr bool operator==(const Point &, const Point &) = default;
};

/**
 * @brief Unit horizontal direction v = (cos theta, sin theta, 0).
 *
 * Stored as an angle so that |v_h| = 1 holds by construction.
 */
struct HorizontalDirection
{
  double theta{0.0};

  double vx() const { return std::cos(theta); }
  double vy() const { return std::sin(theta); }
};

/// (x_p + x_q, y_p + y_q, z_p + z_q + (x_p y_q - x_q y_p) / 2)
constexpr Point group_mul(const Point &p, const Point &q)
{
  return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y)};
}

constexpr Point operator*(const Point &p, const Point &q) { return group_mul(p, q); }

constexpr Point group_inverse(const Point &p) { return {-p.x, -p.y, -p.z}; }

/// Non-isotropic dilation (lambda x, lambda y, lambda^2 z).
struct Dilation
{
  double lambda;

  explicit Dilation(double factor) : lambda(factor)
  {
    if (!(factor >= 0.0)) { throw std::invalid_argument("dilation factor must be >= 0"); }
  }

  Point operator()(const Point &p) const { return {lambda * p.x, lambda * p.y, lambda * lambda * p.z}; }
};

inline Point dilation(double lambda, const Point &p) { return Dilation(lambda)(p); }

/// Koranyi gauge ((x^2 + y^2)^2 + 16 z^2)^(1/4).
inline double gauge(const Point &p)
{
  const double r2 = p.x * p.x + p.y * p.y;
  return std::sqrt(std::sqrt(r2 * r2 + 16.0 * p.z * p.z));
}

/// Left-invariant gauge distance |p^{-1} q|_G.
inline double left_metric(const Point &p, const Point &q) { return gauge(group_inverse(p) * q); }

/**
 * @brief Signed distance in z of q from the horizontal plane through p.
 *
 * Zero exactly when q lies in H_p. Antisymmetric in (p, q).
 */
constexpr double horizontal_offset(const Point &p, const Point &q)
{
  return q.z - p.z - 0.5 * (p.x * q.y - q.x * p.y);
}

/// Scale-aware horizontality test |offset| <= 1e-9 (1 + |p|_G^2).
inline bool is_horizontal(const Point &p, const Point &q, double rel_tol = 1e-9)
{
  const double g = gauge(p);
  return std::abs(horizontal_offset(p, q)) <= rel_tol * (1.0 + g * g);
}

/**
 * @brief p . (sign r v) for the horizontal unit vector v.
 *
 * One move of the game; the result always lies in H_p.
 */
inline Point horizontal_step(const Point &p, double cos_t, double sin_t, double r, int sign)
{
  const double s = sign >= 0 ? r : -r;
  return {p.x + s * cos_t, p.y + s * sin_t, p.z + 0.5 * s * (p.x * sin_t - p.y * cos_t)};
}

inline Point horizontal_step(const Point &p, const HorizontalDirection &d, double r, int sign)
{
  return horizontal_step(p, d.vx(), d.vy(), r, sign);
}

/// theta_k = pi k / M, k = 0..M-1; b = +-1 supplies the antipodes.
inline double direction_angle(int k, int m) { return std::numbers::pi * k / m; }

}  // namespace hflow

#endif  // HFLOW_HGROUP_HPP_
