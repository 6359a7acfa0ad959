#ifndef HFLOW_HCALC_HPP_
#define HFLOW_HCALC_HPP_

/**
 * @file
 * @brief Horizontal differential operators: gradient, symmetrized Hessian,
 * the second-order quasiconvexity operator L, its envelopes L* and L-bar,
 * closed forms for rotationally symmetric fields, and the curvature operator F.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hflow/fields.hpp"
#include "hflow/hgroup.hpp"
#include "hflow/sym2.hpp"

namespace hflow {

/// Numerical parameters of the operator evaluation.
struct OperatorConfig
{
  double fd_step{1e-3};   ///< h for first derivatives
  double fd_step2{1e-2};  ///< h for second derivatives
  /// Characteristic threshold for finite-difference gradients: |grad| <= grad_tol (1 + |H|_inf).
  double grad_tol{1e-8};
  /// Characteristic threshold for analytic gradients (absolute).
  double analytic_grad_tol{0.0};
  std::vector<double> limsup_radii{1e-1, 1e-2, 1e-3};
  int limsup_samples{64};

  void validate() const
  {
    if (!(fd_step > 0.0) || !(fd_step2 > 0.0)) { throw std::invalid_argument("fd steps must be positive"); }
    if (!(grad_tol > 0.0) || analytic_grad_tol < 0.0) { throw std::invalid_argument("gradient tolerances invalid"); }
    if (limsup_radii.empty() || limsup_samples < 1) { throw std::invalid_argument("limsup sampling is empty"); }
    for (std::size_t i = 0; i < limsup_radii.size(); ++i) {
      if (!(limsup_radii[i] > 0.0) || (i > 0 && !(limsup_radii[i] < limsup_radii[i - 1]))) {
        throw std::invalid_argument("limsup radii must be positive and strictly decreasing");
      }
    }
  }
};

namespace detail {
inline double checked(double v, const char *what, const Point &p)
{
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string("non-finite ") + what + " at (" + std::to_string(p.x) + ", "
                            + std::to_string(p.y) + ", " + std::to_string(p.z) + ")");
  }
  return v;
}

/// f(p . (s (a e1 + b e2)))
inline double along(const ScalarField &f, const Point &p, double a, double b, double s)
{
  return f(p * Point{s * a, s * b, 0.0});
}
}  // namespace detail

/// (X1 f, X2 f): analytic when available, else central differences along the flows of X1, X2.
inline Vec2 hgrad(const ScalarField &f, const Point &p, const OperatorConfig &cfg = {})
{
  Vec2 g;
  if (f.hgrad) {
    g = f.hgrad(p);
  } else {
    const double h = cfg.fd_step;
    g.x = (detail::along(f, p, 1.0, 0.0, h) - detail::along(f, p, 1.0, 0.0, -h)) / (2.0 * h);
    g.y = (detail::along(f, p, 0.0, 1.0, h) - detail::along(f, p, 0.0, 1.0, -h)) / (2.0 * h);
  }
  detail::checked(g.x, "horizontal gradient", p);
  detail::checked(g.y, "horizontal gradient", p);
  return g;
}

/**
 * @brief Symmetrized horizontal Hessian.
 *
 * The numeric path uses second differences along horizontal lines: the
 * second derivative of t -> f(p . t(a e1 + b e2)) is (a X1 + b X2)^2 f, so the
 * diagonals (1, +-1)/sqrt 2 give the symmetrized mixed term as half their difference.
 */
inline HessianSym2 hhess(const ScalarField &f, const Point &p, const OperatorConfig &cfg = {})
{
  HessianSym2 H;
  if (f.hhess) {
    H = f.hhess(p);
  } else {
    const double h = cfg.fd_step2;
    const double f0 = f(p);
    auto second = [&](double a, double b) {
      return (detail::along(f, p, a, b, h) - 2.0 * f0 + detail::along(f, p, a, b, -h)) / (h * h);
    };
    const double s = std::numbers::sqrt2 / 2.0;
    H.a11 = second(1.0, 0.0);
    H.a22 = second(0.0, 1.0);
    H.a12 = 0.5 * (second(s, s) - second(s, -s));
  }
  detail::checked(H.a11, "horizontal Hessian", p);
  detail::checked(H.a12, "horizontal Hessian", p);
  detail::checked(H.a22, "horizontal Hessian", p);
  return H;
}

/// Gradient, Hessian and the two pointwise operators at one point.
struct OperatorValues
{
  Vec2 grad;
  HessianSym2 hess;
  bool characteristic{false};
  double L{0.0};
  double L_star{0.0};
};

inline bool is_characteristic(const Vec2 &grad, const HessianSym2 &H, bool analytic, const OperatorConfig &cfg)
{
  const double n = grad.norm();
  return analytic ? n <= cfg.analytic_grad_tol : n <= cfg.grad_tol * (1.0 + H.max_abs());
}

/// Unit vector perpendicular to a non-zero gradient.
inline Vec2 level_tangent(const Vec2 &grad)
{
  const double n = grad.norm();
  return {-grad.y / n, grad.x / n};
}

inline OperatorValues evaluate_operators(const ScalarField &f, const Point &p, const OperatorConfig &cfg = {})
{
  OperatorValues out;
  out.grad = hgrad(f, p, cfg);
  out.hess = hhess(f, p, cfg);
  out.characteristic = is_characteristic(out.grad, out.hess, static_cast<bool>(f.hgrad), cfg);
  if (out.characteristic) {
    // unconstrained min / max over unit eta
    out.L = out.hess.eig_min();
    out.L_star = out.hess.eig_max();
  } else {
    out.L = out.hess.quad(level_tangent(out.grad));
    out.L_star = out.L;
  }
  return out;
}

/// min <H eta, eta> over unit eta orthogonal to grad_H f(p).
inline double op_L(const ScalarField &f, const Point &p, const OperatorConfig &cfg = {})
{
  return evaluate_operators(f, p, cfg).L;
}

/// Upper semicontinuous envelope in (gradient, Hessian): lambda_max at characteristic points.
inline double op_L_star(const ScalarField &f, const Point &p, const OperatorConfig &cfg = {})
{
  return evaluate_operators(f, p, cfg).L_star;
}

/**
 * @brief Deterministic quasi-uniform points of the unit gauge ball.
 *
 * Halton sequence (bases 2, 3, 5) in [-1, 1]^2 x [-1/4, 1/4], rejecting
 * points with gauge >= 1.
 */
inline std::vector<Point> gauge_ball_samples(int count)
{
  auto radical_inverse = [](unsigned n, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (n > 0) {
      r += f * static_cast<double>(n % base);
      n /= base;
      f *= inv;
    }
    return r;
  };
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (unsigned n = 1; static_cast<int>(pts.size()) < count; ++n) {
    const Point q{2.0 * radical_inverse(n, 2) - 1.0, 2.0 * radical_inverse(n, 3) - 1.0,
                  0.5 * radical_inverse(n, 5) - 0.25};
    if (gauge(q) < 1.0) { pts.push_back(q); }
  }
  return pts;
}

/// Shell-sampled surrogate of limsup_{q -> p} L[f](q).
struct LimsupEstimate
{
  double value{0.0};               ///< estimate at the smallest radius
  std::vector<double> per_radius;  ///< max over B_r(p) for each configured radius
};

/**
 * @brief Approximates the upper limit of L[f] at p.
 *
 * For each radius r the maximum of L is taken over p itself and
 * limsup_samples points p . delta_r(u), u quasi-uniform in the unit gauge ball.
 * This is a sampled estimate, not a certified bound.
 */
inline LimsupEstimate op_L_bar(const ScalarField &f, const Point &p, const OperatorConfig &cfg = {})
{
  cfg.validate();
  const auto unit = gauge_ball_samples(cfg.limsup_samples);
  const double at_p = op_L(f, p, cfg);
  LimsupEstimate est;
  for (double r : cfg.limsup_radii) {
    double m = at_p;
    for (const Point &u : unit) { m = std::max(m, op_L(f, p * dilation(r, u), cfg)); }
    est.per_radius.push_back(m);
  }
  est.value = est.per_radius.back();
  return est;
}

/// L for f = r^2 - g(z): 2 - 4 r^2 g''(z) / (16 + g'(z)^2), and 2 on the axis.
inline double op_L_rotsym(const ProfileFunction &g, double r, double z)
{
  if (!g.has_derivatives()) { throw std::invalid_argument("op_L_rotsym needs g' and g''"); }
  if (r < 0.0) { throw std::invalid_argument("op_L_rotsym needs r >= 0"); }
  if (r == 0.0) { return 2.0; }
  const double g1 = g.d1(z);
  return 2.0 - 4.0 * r * r * g.d2(z) / (16.0 + g1 * g1);
}

/// L for f = F(rho, z); requires (F_rho, F_z) != 0 at (rho, z).
inline double op_L_Frhoz(const RhoZFunction &F, double rho, double z)
{
  if (!F.has_partials()) { throw std::invalid_argument("op_L_Frhoz needs all partials of F"); }
  const double fr = F.F_rho(rho, z), fz = F.F_z(rho, z);
  if (fr == 0.0 && fz == 0.0) { throw std::domain_error("op_L_Frhoz: F_rho and F_z both vanish"); }
  const double num = F.F_rhorho(rho, z) * fz * fz - 2.0 * F.F_rhoz(rho, z) * fr * fz + F.F_zz(rho, z) * fr * fr;
  return 2.0 * fr + 4.0 * rho * num / (fz * fz + 16.0 * fr * fr);
}

/// Horizontal curvature operator -tr((I - xi xi^T / |xi|^2) H), xi != 0.
inline double op_F(const Vec2 &xi, const HessianSym2 &H)
{
  const double n2 = xi.x * xi.x + xi.y * xi.y;
  if (n2 == 0.0) { throw std::domain_error("op_F is undefined at xi = 0"); }
  const double proj = (H.a11 * xi.x * xi.x + 2.0 * H.a12 * xi.x * xi.y + H.a22 * xi.y * xi.y) / n2;
  return -(H.trace() - proj);
}

}  // namespace hflow

#endif  // HFLOW_HCALC_HPP_
