#ifndef HFLOW_HULL_INIT_HPP_
#define HFLOW_HULL_INIT_HPP_

/**
 * @file
 * @brief Star-shaped initial sets, their Minkowski-type functional U0, the
 * star-shapedness conditions (S1) and (S2), and uniformly h-quasiconvex
 * defining functions built from them.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hflow/fields.hpp"
#include "hflow/hgroup.hpp"
#include "hflow/parallel.hpp"
#include "hflow/qcheck.hpp"

namespace hflow {

/// Open set E0 with B_r(0) inside and E0 inside B_R(0) (gauge balls).
struct StarShapedSet
{
  Membership member;
  double r{0.0};
  double R{0.0};

  bool operator()(const Point &p) const { return member(p); }

  void validate() const
  {
    if (!member) { throw std::invalid_argument("set has no membership oracle"); }
    if (!(r > 0.0) || !(R >= r)) { throw std::invalid_argument("set radii must satisfy 0 < r <= R"); }
    if (!member(Point{})) { throw std::invalid_argument("set does not contain the origin"); }
  }
};

/// Non-monotone membership along a dilation ray mu -> delta_mu(p).
class S1Violation : public std::runtime_error
{
public:
  S1Violation(const Point &p, double mu, const std::string &what)
      : std::runtime_error("star-shapedness violated along the ray of (" + std::to_string(p.x) + ", "
                           + std::to_string(p.y) + ", " + std::to_string(p.z) + ") at mu = " + std::to_string(mu)
                           + ": " + what),
        point(p), mu(mu)
  {}

  Point point;
  double mu;
};

struct MinkowskiConfig
{
  double tol{1e-10};  ///< relative bracket width
  int max_iterations{60};
  /// Extra membership probes on each side of the crossing (0 disables the ray check).
  int ray_probes{7};
};

/// Scale mu* at which delta_mu(p) leaves E, p != 0, by bisection on [0.99 r / |p|, 1.01 R / |p|].
inline double boundary_scale(const StarShapedSet &E, const Point &p, const MinkowskiConfig &cfg = {})
{
  const double g = gauge(p);
  double lo = 0.99 * E.r / g;
  double hi = 1.01 * E.R / g;
  if (!E.member(dilation(lo, p))) { throw S1Violation(p, lo, "point inside the inner ball is not a member"); }
  if (E.member(dilation(hi, p))) { throw S1Violation(p, hi, "point outside the outer ball is a member"); }
  const double lo0 = lo, hi0 = hi;
  for (int it = 0; it < cfg.max_iterations && hi - lo > cfg.tol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    (E.member(dilation(mid, p)) ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  for (int j = 1; j <= cfg.ray_probes; ++j) {
    const double t = static_cast<double>(j) / (cfg.ray_probes + 1);
    const double in = lo0 + t * (lo - lo0);
    const double out = hi + t * (hi0 - hi);
    if (!E.member(dilation(in, p))) { throw S1Violation(p, in, "gap inside the crossing"); }
    if (E.member(dilation(out, p))) { throw S1Violation(p, out, "member beyond the crossing"); }
  }
  return mu;
}

/// U0(p) = mu*^-2, U0(0) = 0.
inline double minkowski_u0(const StarShapedSet &E, const Point &p, const MinkowskiConfig &cfg = {})
{
  if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) { return 0.0; }
  const double mu = boundary_scale(E, p, cfg);
  return 1.0 / (mu * mu);
}

inline double minkowski_u0(const StarShapedSet &E, const Point &p, double tol)
{
  MinkowskiConfig cfg;
  cfg.tol = tol;
  return minkowski_u0(E, p, cfg);
}

/// U0 as a field; cfg is captured by value.
inline ScalarField minkowski_field(const StarShapedSet &E, const MinkowskiConfig &cfg = {})
{
  return ScalarField{[E, cfg](const Point &p) { return minkowski_u0(E, p, cfg); }, {}, {}};
}

/**
 * @brief Points of the unit gauge sphere.
 *
 * u = (sqrt(cos a) cos t, sqrt(cos a) sin t, sin(a) / 4), a over n_alpha values in
 * [-pi/2, pi/2] (poles included once) and t over n_theta values in [0, 2 pi).
 */
inline std::vector<Point> gauge_sphere_points(int n_alpha, int n_theta)
{
  if (n_alpha < 2 || n_theta < 1) { throw std::invalid_argument("gauge sphere sampling too coarse"); }
  std::vector<Point> pts;
  for (int i = 0; i < n_alpha; ++i) {
    const double a = -std::numbers::pi / 2 + std::numbers::pi * i / (n_alpha - 1);
    const double s = std::sin(a) / 4.0;
    if (i == 0 || i + 1 == n_alpha) {
      pts.push_back({0.0, 0.0, i == 0 ? -0.25 : 0.25});
      continue;
    }
    const double c = std::sqrt(std::cos(a));
    for (int k = 0; k < n_theta; ++k) {
      const double t = 2.0 * std::numbers::pi * k / n_theta;
      pts.push_back({c * std::cos(t), c * std::sin(t), s});
    }
  }
  return pts;
}

/// Boundary points delta_mu*(u) for sampled unit-sphere directions u.
inline std::vector<Point> boundary_points(const StarShapedSet &E, int n_alpha, int n_theta,
                                          const MinkowskiConfig &cfg = {})
{
  auto dirs = gauge_sphere_points(n_alpha, n_theta);
  for (Point &u : dirs) { u = dilation(boundary_scale(E, u, cfg), u); }
  return dirs;
}

struct S1Sampling
{
  std::vector<double> mus{0.1, 0.25, 0.5, 0.75, 0.9, 0.99};
  int n_alpha{17};
  int n_theta{24};
  int scan_steps{400};       ///< outermost-crossing scan resolution along each ray
  double offset{1e-6};       ///< relative offset of the inside / outside boundary samples
};

/**
 * @brief Samples delta_mu(p) for p just inside and just outside the outermost
 * boundary crossing on each ray; any non-member is a violation.
 */
inline std::optional<S1Violation> check_S1(const StarShapedSet &E, const S1Sampling &plan = {})
{
  E.validate();
  for (const Point &u : gauge_sphere_points(plan.n_alpha, plan.n_theta)) {
    // scan inward from the outer ball so the outermost crossing is found even if the set is not star-shaped
    const double top = 1.01 * E.R;
    const double ds = top / plan.scan_steps;
    double s_in = 0.0;
    for (int i = plan.scan_steps; i > 0; --i) {
      if (E.member(dilation(i * ds, u))) {
        s_in = i * ds;
        break;
      }
    }
    if (s_in == 0.0) { return S1Violation(u, 0.0, "no member found along the ray"); }
    double lo = s_in, hi = s_in + ds;
    for (int it = 0; it < 60 && hi - lo > 1e-12 * lo; ++it) {
      const double mid = 0.5 * (lo + hi);
      (E.member(dilation(mid, u)) ? lo : hi) = mid;
    }
    for (double side : {1.0 - plan.offset, 1.0 + plan.offset}) {
      const Point pbar = dilation(lo * side, u);
      for (double mu : plan.mus) {
        if (mu * side >= 1.0) { continue; }
        if (!E.member(dilation(mu, pbar))) { return S1Violation(pbar, mu, "dilated boundary point left the set"); }
      }
    }
  }
  return std::nullopt;
}

struct S2Sampling
{
  int n_alpha{17};
  int n_theta{24};
  int directions{36};
  std::vector<double> radii{0.05, 0.1, 0.2};
};

struct S2Report
{
  double worst_margin{std::numeric_limits<double>::infinity()};
  Point worst_point;
  double worst_radius{0.0};
  std::vector<double> margins;  ///< per radius
};

/// min over boundary p, v, r of max{U0(p.rv), U0(p.rv^-1)} - 1 - sigma r^2.
inline S2Report check_S2(const StarShapedSet &E, double r0, double sigma, const S2Sampling &plan = {},
                         const MinkowskiConfig &cfg = {})
{
  E.validate();
  for (double r : plan.radii) {
    if (!(r > 0.0 && r < r0)) { throw std::invalid_argument("check_S2: radii must lie in (0, r0)"); }
  }
  const auto bnd = boundary_points(E, plan.n_alpha, plan.n_theta, cfg);
  const std::size_t nr = plan.radii.size();
  std::vector<double> per(bnd.size() * nr, std::numeric_limits<double>::infinity());
  parallel_for(bnd.size(), [&](std::size_t n) {
    for (int k = 0; k < plan.directions; ++k) {
      const HorizontalDirection dir{direction_angle(k, plan.directions)};
      for (std::size_t i = 0; i < nr; ++i) {
        const double r = plan.radii[i];
        const double m = std::max(minkowski_u0(E, horizontal_step(bnd[n], dir, r, 1), cfg),
                                  minkowski_u0(E, horizontal_step(bnd[n], dir, r, -1), cfg));
        per[n * nr + i] = std::min(per[n * nr + i], m - 1.0 - sigma * r * r);
      }
    }
  });
  S2Report rep;
  rep.margins.assign(nr, std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < bnd.size(); ++n) {
    for (std::size_t i = 0; i < nr; ++i) {
      const double m = per[n * nr + i];
      rep.margins[i] = std::min(rep.margins[i], m);
      if (m < rep.worst_margin) {
        rep.worst_margin = m;
        rep.worst_point = bnd[n];
        rep.worst_radius = plan.radii[i];
      }
    }
  }
  return rep;
}

/// Uniformly h-quasiconvex defining function of E0 and its truncation.
struct InitialData
{
  ScalarField u_hat;  ///< max{U0, psi_c} - 1
  ScalarField u0;     ///< min{u_hat, C}
  double C{0.0};
  double c{0.0};
  double rho{0.0};
};

struct InitialConfig
{
  MinkowskiConfig minkowski{};
  int n_alpha{17};
  int n_theta{24};
  int ball_samples{512};
  int max_halvings{60};
};

/**
 * @brief Builds u_hat = max{U0, psi_c} - 1 with psi_c = c (x^2 + y^2 + |z|) + 1/2.
 *
 * rho is 0.9 of the largest radius with U0 < 1/2 on sampled B_rho; c is halved
 * from 1 until psi_c < 1 on sampled boundary points and psi_c > U0 on sampled B_rho.
 * A non-finite C selects 2 sup of sampled u_hat on B_2R.
 */
inline InitialData build_initial(const StarShapedSet &E, double C = std::numeric_limits<double>::quiet_NaN(),
                                 const InitialConfig &cfg = {})
{
  E.validate();
  const auto sphere = gauge_sphere_points(cfg.n_alpha, cfg.n_theta);
  double m = 0.0;
  for (const Point &u : sphere) { m = std::max(m, minkowski_u0(E, u, cfg.minkowski)); }
  const double rho = 0.9 * std::sqrt(0.5 / m);

  std::vector<Point> ball = gauge_ball_samples(cfg.ball_samples);
  for (Point &q : ball) { q = dilation(rho, q); }
  std::vector<double> u_ball(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) { u_ball[i] = minkowski_u0(E, ball[i], cfg.minkowski); }
  const auto bnd = boundary_points(E, cfg.n_alpha, cfg.n_theta, cfg.minkowski);

  auto psi_base = [](const Point &p) { return p.x * p.x + p.y * p.y + std::abs(p.z); };
  double c = 1.0;
  bool ok = false;
  std::string binding;
  for (int h = 0; h <= cfg.max_halvings; ++h, c *= 0.5) {
    bool boundary_ok = true, ball_ok = true;
    for (const Point &p : bnd) { boundary_ok = boundary_ok && c * psi_base(p) + 0.5 < 1.0; }
    for (std::size_t i = 0; i < ball.size(); ++i) { ball_ok = ball_ok && c * psi_base(ball[i]) + 0.5 > u_ball[i]; }
    if (boundary_ok && ball_ok) {
      ok = true;
      break;
    }
    binding = boundary_ok ? "psi_c <= U0 on B_rho" : "psi_c >= 1 on the boundary";
  }
  if (!ok) { throw std::runtime_error("build_initial: no admissible c (" + binding + ")"); }

  InitialData out;
  out.c = c;
  out.rho = rho;
  const MinkowskiConfig mc = cfg.minkowski;
  out.u_hat.eval = [E, mc, c, psi_base](const Point &p) {
    return std::max(minkowski_u0(E, p, mc), c * psi_base(p) + 0.5) - 1.0;
  };
  if (!std::isfinite(C)) {
    double sup = -std::numeric_limits<double>::infinity();
    for (const Point &u : sphere) { sup = std::max(sup, out.u_hat(dilation(2.0 * E.R, u))); }
    C = 2.0 * sup;
  }
  out.C = C;
  out.u0.eval = [uh = out.u_hat, C](const Point &p) { return std::min(uh(p), C); };
  return out;
}

// ---------------------------------------------------------------------------
// Rotationally symmetric sets x^2 + y^2 < g(z)

/**
 * @brief E0 = {x^2 + y^2 < g(z), a < z < b} for a profile with finite a < 0 < b and g(a) = g(b) = 0.
 *
 * R is the gauge of the bounding corner times 1.01; r is 0.99 of the largest
 * radius whose cylinder {x^2 + y^2 < r^2, |z| < r^2 / 4} lies inside E0.
 */
inline StarShapedSet profile_set(const ProfileFunction &g, int samples = 4001)
{
  if (!std::isfinite(g.a) || !std::isfinite(g.b) || !(g.a < 0.0 && 0.0 < g.b)) {
    throw std::invalid_argument("profile_set needs finite a < 0 < b");
  }
  double gmax = 0.0;
  for (int i = 1; i + 1 < samples; ++i) {
    const double z = g.a + (g.b - g.a) * i / (samples - 1);
    const double v = g.value(z);
    if (!(v > 0.0)) { throw std::invalid_argument("profile must be positive inside (a, b)"); }
    gmax = std::max(gmax, v);
  }
  const double tol = 1e-9 * gmax;
  if (std::abs(g.value(g.a)) > tol || std::abs(g.value(g.b)) > tol) {
    throw std::invalid_argument("profile must vanish at both endpoints");
  }
  const double zmax = std::max(-g.a, g.b);
  const double R = 1.01 * std::pow(gmax * gmax + 16.0 * zmax * zmax, 0.25);

  auto cylinder_inside = [&](double r) {
    const double h = 0.25 * r * r;
    if (!(-h > g.a && h < g.b)) { return false; }
    for (int i = 0; i < samples; ++i) {
      if (!(r * r < g.value(-h + 2.0 * h * i / (samples - 1)))) { return false; }
    }
    return true;
  };
  double lo = 0.0, hi = R;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cylinder_inside(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) { throw std::invalid_argument("profile set has no inner ball"); }

  StarShapedSet E;
  E.member = [g](const Point &p) { return p.z > g.a && p.z < g.b && p.x * p.x + p.y * p.y < g.value(p.z); };
  E.r = 0.99 * lo;
  E.R = R;
  return E;
}

/// Closure of a profile set: x^2 + y^2 <= g(z), a <= z <= b.
inline Membership profile_closure(const ProfileFunction &g)
{
  return [g](const Point &p) { return p.z >= g.a && p.z <= g.b && p.x * p.x + p.y * p.y <= g.value(p.z); };
}

/// A pair (mu, z) with mu g(z) >= g(mu z).
struct ProfileS1Violation
{
  double mu;
  double z;
  double margin;  ///< g(mu z) - mu g(z)
};

/// Checks mu g(z) < g(mu z) on the product of samples with z in [a, b].
inline std::optional<ProfileS1Violation> check_profile_S1(const ProfileFunction &g, const std::vector<double> &mus,
                                                          const std::vector<double> &zs)
{
  std::optional<ProfileS1Violation> worst;
  for (double mu : mus) {
    for (double z : zs) {
      if (!g.in_domain(z)) { continue; }
      const double m = g.value(mu * z) - mu * g.value(z);
      if (!(m > 0.0) && (!worst || m < worst->margin)) { worst = ProfileS1Violation{mu, z, m}; }
    }
  }
  return worst;
}

/// min over zs of 1 - 2 g g'' / (16 + g'^2) - sigma.
inline double check_profile_S2cond(const ProfileFunction &g, double sigma, const std::vector<double> &zs)
{
  if (!g.has_derivatives()) { throw std::invalid_argument("check_profile_S2cond needs g' and g''"); }
  double worst = std::numeric_limits<double>::infinity();
  for (double z : zs) {
    const double g1 = g.d1(z);
    worst = std::min(worst, 1.0 - 2.0 * g.value(z) * g.d2(z) / (16.0 + g1 * g1) - sigma);
  }
  return worst;
}

/**
 * @brief Approximations of the gauge-ball profile: sqrt(1 - 16 z^2) on |z| <= m_j,
 * m_j = 1/4 - 1/j, continued by its second-order Taylor polynomial at +-m_j
 * up to the roots a_j = -b_j.
 */
inline ProfileFunction gauge_ball_gj(int j)
{
  if (j < 5) { throw std::invalid_argument("gauge_ball_gj needs j >= 5"); }
  const ProfileFunction base = gauge_ball_profile();
  const double m = 0.25 - 1.0 / j;
  const double g0 = base.value(m), g1 = base.d1(m), g2 = base.d2(m);
  const double A = 0.5 * g2, B = g1;
  const double b = m + (-B - std::sqrt(B * B - 4.0 * A * g0)) / (2.0 * A);

  ProfileFunction out;
  auto piece = [base, m, g0, g1, g2](double z, int order) {
    const double az = std::abs(z);
    if (az <= m) {
      return order == 0 ? base.value(z) : order == 1 ? base.d1(z) : base.d2(z);
    }
    const double t = az - m;
    const double s = z < 0.0 ? -1.0 : 1.0;
    if (order == 0) { return g0 + g1 * t + 0.5 * g2 * t * t; }
    if (order == 1) { return s * (g1 + g2 * t); }
    return g2;
  };
  out.g = [piece](double z) { return piece(z, 0); };
  out.dg = [piece](double z) { return piece(z, 1); };
  out.d2g = [piece](double z) { return piece(z, 2); };
  out.a = -b;
  out.b = b;
  out.extension = ProfileExtension::quadratic_taylor;
  return out;
}

/// The unit gauge ball {gauge < 1} as a star-shaped set (r = R = 1).
inline StarShapedSet gauge_ball_set()
{
  return StarShapedSet{[](const Point &p) { return gauge(p) < 1.0; }, 1.0, 1.0};
}

/**
 * @brief Smallest sampled lambda >= 1 with delta_{1/lambda}(F) inside E inside delta_lambda(F),
 * from boundary scales of both sets along sampled rays.
 */
inline double dilation_sandwich_scale(const StarShapedSet &E, const StarShapedSet &F, int n_alpha = 17,
                                      int n_theta = 24)
{
  double lam = 1.0;
  for (const Point &u : gauge_sphere_points(n_alpha, n_theta)) {
    const double ratio = boundary_scale(E, u) / boundary_scale(F, u);
    lam = std::max({lam, ratio, 1.0 / ratio});
  }
  return lam;
}

}  // namespace hflow

#endif  // HFLOW_HULL_INIT_HPP_
