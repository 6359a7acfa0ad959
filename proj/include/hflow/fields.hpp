#ifndef HFLOW_FIELDS_HPP_
#define HFLOW_FIELDS_HPP_

/**
 * @file
 * @brief Scalar fields on the Heisenberg group with optional analytic
 * horizontal derivatives, profile functions for rotationally symmetric sets,
 * and the named example fields.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "hflow/hgroup.hpp"
#include "hflow/sym2.hpp"

namespace hflow {

/**
 * @brief Evaluatable function H -> R.
 *
 * hgrad / hhess are left empty when no closed form is known; the operators
 * in hcalc.hpp then fall back to finite differences along X1, X2.
 * All callables must be safe to invoke concurrently.
 */
struct ScalarField
{
  std::function<double(const Point &)> eval;
  std::function<Vec2(const Point &)> hgrad;
  std::function<HessianSym2(const Point &)> hhess;

  double operator()(const Point &p) const { return eval(p); }
  bool has_analytic_derivatives() const { return static_cast<bool>(hgrad) && static_cast<bool>(hhess); }

  /// Same values, derivatives stripped (forces the finite-difference path).
  ScalarField numeric_only() const { return ScalarField{eval, {}, {}}; }
};

enum class ProfileExtension {
  none,              ///< evaluation outside [a, b] throws
  quadratic_taylor,  ///< second-order Taylor polynomial at the nearest endpoint
};

/**
 * @brief Profile g of a surface of revolution x^2 + y^2 = g(z), z in [a, b].
 *
 * a and b may be infinite for profiles used only to define fields.
 */
struct ProfileFunction
{
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> d2g;
  double a{-std::numeric_limits<double>::infinity()};
  double b{std::numeric_limits<double>::infinity()};
  ProfileExtension extension{ProfileExtension::none};

  bool has_derivatives() const { return static_cast<bool>(dg) && static_cast<bool>(d2g); }
  bool in_domain(double z) const { return z >= a && z <= b; }

  double value(double z) const { return eval_order(z, 0); }
  double d1(double z) const { return eval_order(z, 1); }
  double d2(double z) const { return eval_order(z, 2); }

private:
  double raw(double z, int order) const
  {
    switch (order) {
    case 0: return g(z);
    case 1:
      if (!dg) { throw std::logic_error("profile has no first derivative"); }
      return dg(z);
    default:
      if (!d2g) { throw std::logic_error("profile has no second derivative"); }
      return d2g(z);
    }
  }

  double eval_order(double z, int order) const
  {
    if (in_domain(z)) { return raw(z, order); }
    if (extension == ProfileExtension::none) {
      throw std::domain_error("profile evaluated outside [a, b] at z = " + std::to_string(z));
    }
    const double e = z < a ? a : b;
    const double t = z - e;
    const double g0 = raw(e, 0), g1 = raw(e, 1), g2 = raw(e, 2);
    switch (order) {
    case 0: return g0 + g1 * t + 0.5 * g2 * t * t;
    case 1: return g1 + g2 * t;
    default: return g2;
    }
  }
};

/// F(rho, z) with its partials up to second order, rho = x^2 + y^2.
struct RhoZFunction
{
  std::function<double(double, double)> F;
  std::function<double(double, double)> F_rho;
  std::function<double(double, double)> F_z;
  std::function<double(double, double)> F_rhorho;
  std::function<double(double, double)> F_rhoz;
  std::function<double(double, double)> F_zz;

  bool has_partials() const { return F_rho && F_z && F_rhorho && F_rhoz && F_zz; }
};

// ---------------------------------------------------------------------------
// Named fields

/// f = -z^4: L = L* = 0 everywhere, yet not h-quasiconvex.
inline ScalarField field_neg_z4()
{
  ScalarField f;
  f.eval = [](const Point &p) {
    const double z2 = p.z * p.z;
    return -z2 * z2;
  };
  f.hgrad = [](const Point &p) {
    const double g1 = -4.0 * p.z * p.z * p.z;
    return Vec2{0.5 * g1 * -p.y, 0.5 * g1 * p.x};
  };
  f.hhess = [](const Point &p) {
    const double c = -12.0 * p.z * p.z / 4.0;
    return HessianSym2{c * p.y * p.y, -c * p.x * p.y, c * p.x * p.x};
  };
  return f;
}

/// f = x^2 + (z + xy/2)^2: L* > 0 and no local maxima, yet not h-quasiconvex.
inline ScalarField field_positive_example()
{
  ScalarField f;
  f.eval = [](const Point &p) {
    const double zz = p.z + 0.5 * p.x * p.y;
    return p.x * p.x + zz * zz;
  };
  f.hgrad = [](const Point &p) {
    const double zz = p.z + 0.5 * p.x * p.y;
    return Vec2{2.0 * p.x, 2.0 * p.x * zz};
  };
  f.hhess = [](const Point &p) {
    const double zz = p.z + 0.5 * p.x * p.y;
    return HessianSym2{2.0, zz, 2.0 * p.x * p.x};
  };
  return f;
}

/// f = x^2 + y^2 - g(z).
inline ScalarField field_rot_profile(ProfileFunction g)
{
  ScalarField f;
  f.eval = [g](const Point &p) { return p.x * p.x + p.y * p.y - g.value(p.z); };
  if (g.has_derivatives()) {
    f.hgrad = [g](const Point &p) {
      const double g1 = g.d1(p.z);
      return Vec2{2.0 * p.x + 0.5 * p.y * g1, 2.0 * p.y - 0.5 * p.x * g1};
    };
    f.hhess = [g](const Point &p) {
      const double q = 0.25 * g.d2(p.z);
      return HessianSym2{2.0 - p.y * p.y * q, p.x * p.y * q, 2.0 - p.x * p.x * q};
    };
  }
  return f;
}

/// f = F(x^2 + y^2, z); analytic derivatives when all partials are given.
inline ScalarField field_F_rho_z(RhoZFunction F)
{
  ScalarField f;
  f.eval = [F](const Point &p) { return F.F(p.x * p.x + p.y * p.y, p.z); };
  if (F.has_partials()) {
    f.hgrad = [F](const Point &p) {
      const double rho = p.x * p.x + p.y * p.y;
      const double fr = F.F_rho(rho, p.z), fz = F.F_z(rho, p.z);
      return Vec2{2.0 * p.x * fr - 0.5 * p.y * fz, 2.0 * p.y * fr + 0.5 * p.x * fz};
    };
    f.hhess = [F](const Point &p) {
      const double x = p.x, y = p.y, rho = x * x + y * y;
      const double fr = F.F_rho(rho, p.z);
      const double frr = F.F_rhorho(rho, p.z), frz = F.F_rhoz(rho, p.z), fzz = F.F_zz(rho, p.z);
      return HessianSym2{
        2.0 * fr + 4.0 * x * x * frr - 2.0 * x * y * frz + 0.25 * y * y * fzz,
        4.0 * x * y * frr + (x * x - y * y) * frz - 0.25 * x * y * fzz,
        2.0 * fr + 4.0 * y * y * frr + 2.0 * x * y * frz + 0.25 * x * x * fzz,
      };
    };
  }
  return f;
}

// ---------------------------------------------------------------------------
// Named profiles

/// g(z) = (1 - z^2)(1 + 2 z^2) on [-1, 1]: h-convex but not convex in R^3.
inline ProfileFunction quartic_profile()
{
  ProfileFunction g;
  g.g = [](double z) { return (1.0 - z * z) * (1.0 + 2.0 * z * z); };
  g.dg = [](double z) { return 2.0 * z - 8.0 * z * z * z; };
  g.d2g = [](double z) { return 2.0 - 24.0 * z * z; };
  g.a = -1.0;
  g.b = 1.0;
  g.extension = ProfileExtension::quadratic_taylor;
  return g;
}

/// g(z) = sqrt(1 - 16 z^2) on [-1/4, 1/4]: boundary of the unit gauge ball.
inline ProfileFunction gauge_ball_profile()
{
  ProfileFunction g;
  g.g = [](double z) { return std::sqrt(std::max(0.0, 1.0 - 16.0 * z * z)); };
  g.dg = [](double z) { return -16.0 * z / std::sqrt(1.0 - 16.0 * z * z); };
  g.d2g = [](double z) {
    const double s = 1.0 - 16.0 * z * z;
    return -16.0 / (s * std::sqrt(s));
  };
  g.a = -0.25;
  g.b = 0.25;
  return g;
}

/// g(z) = slope z + offset on the whole line (concave, so f is uniformly h-quasiconvex with lambda = 1).
inline ProfileFunction linear_profile(double slope = 1.0, double offset = 0.0)
{
  ProfileFunction g;
  g.g = [slope, offset](double z) { return slope * z + offset; };
  g.dg = [slope](double) { return slope; };
  g.d2g = [](double) { return 0.0; };
  return g;
}

/// g(z) = c1 z^2 / 2 + slope z: semiconcave with constant c1 (g'' = c1).
inline ProfileFunction semiconcave_profile(double c1, double slope = 0.0)
{
  ProfileFunction g;
  g.g = [c1, slope](double z) { return 0.5 * c1 * z * z + slope * z; };
  g.dg = [c1, slope](double z) { return c1 * z + slope; };
  g.d2g = [c1](double) { return c1; };
  return g;
}

}  // namespace hflow

#endif  // HFLOW_FIELDS_HPP_
