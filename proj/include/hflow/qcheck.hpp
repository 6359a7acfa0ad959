#ifndef HFLOW_QCHECK_HPP_
#define HFLOW_QCHECK_HPP_

/**
 * @file
 * @brief Sampling-based checks of h-quasiconvexity, uniform h-quasiconvexity
 * and h-convexity of sets.
 *
 * Absence of a witness means none was found on the plan, not a proof.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hflow/fields.hpp"
#include "hflow/hcalc.hpp"
#include "hflow/hgroup.hpp"
#include "hflow/parallel.hpp"

namespace hflow {

using Membership = std::function<bool(const Point &)>;

/// nx * ny * nz lattice of [lo, hi] (x-fastest), end nodes included.
inline std::vector<Point> lattice_points(std::array<double, 3> lo, std::array<double, 3> hi,
                                         std::array<std::size_t, 3> n)
{
  for (int a = 0; a < 3; ++a) {
    if (n[a] == 0) { throw std::invalid_argument("lattice needs at least one node per axis"); }
  }
  auto c = [&](int a, std::size_t i) {
    if (n[a] == 1) { return 0.5 * (lo[a] + hi[a]); }
    return i + 1 == n[a] ? hi[a] : lo[a] + (hi[a] - lo[a]) * static_cast<double>(i) / static_cast<double>(n[a] - 1);
  };
  std::vector<Point> pts;
  pts.reserve(n[0] * n[1] * n[2]);
  for (std::size_t k = 0; k < n[2]; ++k) {
    for (std::size_t j = 0; j < n[1]; ++j) {
      for (std::size_t i = 0; i < n[0]; ++i) { pts.push_back({c(0, i), c(1, j), c(2, k)}); }
    }
  }
  return pts;
}

inline std::vector<Point> filter_points(const std::vector<Point> &pts, const Membership &keep)
{
  std::vector<Point> out;
  std::copy_if(pts.begin(), pts.end(), std::back_inserter(out), keep);
  return out;
}

/// Base points, M directions theta_k = pi k / M (with b = +-1), radii, and points per segment.
struct SamplingPlan
{
  std::vector<Point> base_points;
  int directions{36};
  std::vector<double> radii{0.05, 0.1, 0.2, 0.4};
  int segment_samples{33};

  void validate() const
  {
    if (directions < 4) { throw std::invalid_argument("plan needs at least 4 directions"); }
    if (segment_samples < 2) { throw std::invalid_argument("plan needs at least 2 segment samples"); }
    if (radii.empty()) { throw std::invalid_argument("plan has no radii"); }
    for (double r : radii) {
      if (!(r > 0.0)) { throw std::invalid_argument("plan radii must be positive"); }
    }
  }

  /// 21^3 lattice of the box, M = 36, radii {0.05, 0.1, 0.2, 0.4}.
  static SamplingPlan desk(std::array<double, 3> lo, std::array<double, 3> hi)
  {
    SamplingPlan p;
    p.base_points = lattice_points(lo, hi, {21, 21, 21});
    return p;
  }

  HorizontalDirection direction(int k) const { return {direction_angle(k, directions)}; }

  /// Segment parameter of sample j: j / (n - 1), endpoints included.
  double segment_param(int j) const
  {
    return j + 1 == segment_samples ? 1.0 : static_cast<double>(j) / static_cast<double>(segment_samples - 1);
  }
};

/// A sampled violation of f(w) <= max{f(p), f(q)} on a horizontal segment.
struct HqcWitness
{
  Point p;
  Point q;
  Point w;
  double gap{0.0};
};

/// Constants of the symmetric-step inequality f(p) <= max{f(p.rv), f(p.rv^-1)} - lambda r^2, r < r0.
struct UniformHqcParams
{
  double lambda{1.0};
  double r0{1.0};

  void validate() const
  {
    if (!(lambda > 0.0) || !(r0 > 0.0)) { throw std::invalid_argument("uniform params need lambda > 0 and r0 > 0"); }
  }
};

inline Point segment_point(const Point &p, const Point &q, double t)
{
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y), p.z + t * (q.z - p.z)};
}

namespace detail {
struct SegmentMax
{
  double gap{-std::numeric_limits<double>::infinity()};
  Point w;
};

template<typename Field>
SegmentMax segment_gap(const Field &f, const Point &p, const Point &q, const SamplingPlan &plan)
{
  const double top = std::max(f(p), f(q));
  SegmentMax best;
  for (int j = 0; j < plan.segment_samples; ++j) {
    const Point w = segment_point(p, q, plan.segment_param(j));
    const double g = f(w) - top;
    if (g > best.gap) {
      best.gap = g;
      best.w = w;
    }
  }
  return best;
}
}  // namespace detail

/// max over sampled w in [p, q] of f(w) - max{f(p), f(q)}; q must lie in the horizontal plane of p.
template<typename Field>
double check_triple(const Field &f, const Point &p, const Point &q, const SamplingPlan &plan = {})
{
  if (!is_horizontal(p, q)) { throw std::invalid_argument("check_triple: q is not in the horizontal plane of p"); }
  return detail::segment_gap(f, p, q, plan).gap;
}

/// Largest-gap witness over all (base, direction, sign, radius) segments, if its gap exceeds tol.
template<typename Field>
std::optional<HqcWitness> search_violation(const Field &f, const SamplingPlan &plan, double tol = 1e-9)
{
  plan.validate();
  std::vector<HqcWitness> best(plan.base_points.size());
  parallel_for(plan.base_points.size(), [&](std::size_t n) {
    const Point &p = plan.base_points[n];
    HqcWitness b{p, p, p, -std::numeric_limits<double>::infinity()};
    for (int k = 0; k < plan.directions; ++k) {
      const HorizontalDirection dir = plan.direction(k);
      for (int sign : {1, -1}) {
        for (double r : plan.radii) {
          const Point q = horizontal_step(p, dir, r, sign);
          const auto s = detail::segment_gap(f, p, q, plan);
          if (s.gap > b.gap) { b = {p, q, s.w, s.gap}; }
        }
      }
    }
    best[n] = b;
  });
  std::optional<HqcWitness> out;
  for (const auto &b : best) {
    if (b.gap > tol && (!out || b.gap > out->gap)) { out = b; }
  }
  return out;
}

/// Largest sampled gap (may be <= 0); the quantity search_violation thresholds.
template<typename Field>
double worst_gap(const Field &f, const SamplingPlan &plan)
{
  const auto w = search_violation(f, plan, -std::numeric_limits<double>::infinity());
  return w ? w->gap : -std::numeric_limits<double>::infinity();
}

namespace detail {
/// min over plan of max{f(p.rv), f(p.rv^-1)} - f(p) - lambda r^2, per radius.
template<typename Field>
std::vector<double> uniform_margins(const Field &f, double lambda, const SamplingPlan &plan,
                                    const std::vector<Point> &bases)
{
  const std::size_t nr = plan.radii.size();
  std::vector<double> per(bases.size() * nr, std::numeric_limits<double>::infinity());
  parallel_for(bases.size(), [&](std::size_t n) {
    const Point &p = bases[n];
    const double fp = f(p);
    for (int k = 0; k < plan.directions; ++k) {
      const HorizontalDirection dir = plan.direction(k);
      for (std::size_t i = 0; i < nr; ++i) {
        const double r = plan.radii[i];
        const double m = std::max(f(horizontal_step(p, dir, r, 1)), f(horizontal_step(p, dir, r, -1)));
        per[n * nr + i] = std::min(per[n * nr + i], m - fp - lambda * r * r);
      }
    }
  });
  std::vector<double> out(nr, std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < bases.size(); ++n) {
    for (std::size_t i = 0; i < nr; ++i) { out[i] = std::min(out[i], per[n * nr + i]); }
  }
  return out;
}
}  // namespace detail

/**
 * @brief Worst margin of the uniform inequality over the plan.
 *
 * Base points outside domain (when given) are skipped. Returns +inf if no
 * base point remains.
 */
template<typename Field>
double check_uniform(const Field &f, const UniformHqcParams &params, const SamplingPlan &plan,
                     const Membership &domain = {})
{
  params.validate();
  plan.validate();
  for (double r : plan.radii) {
    if (!(r < params.r0)) { throw std::invalid_argument("check_uniform: plan radius not below r0"); }
  }
  const auto bases = domain ? filter_points(plan.base_points, domain) : plan.base_points;
  const auto m = detail::uniform_margins(f, params.lambda, plan, bases);
  return *std::min_element(m.begin(), m.end());
}

/// Largest lambda for which the uniform inequality holds on every sample.
template<typename Field>
double measure_uniform_lambda(const Field &f, const SamplingPlan &plan, const Membership &domain = {})
{
  plan.validate();
  const auto bases = domain ? filter_points(plan.base_points, domain) : plan.base_points;
  double lam = std::numeric_limits<double>::infinity();
  for (double r : plan.radii) {
    SamplingPlan one = plan;
    one.radii = {r};
    const auto m = detail::uniform_margins(f, 0.0, one, bases);
    lam = std::min(lam, m[0] / (r * r));
  }
  return lam;
}

/// Thrown by check_c2_uniform when L[f] >= 2 lambda fails at a sampled point.
class PreconditionFailure : public std::runtime_error
{
public:
  PreconditionFailure(const Point &p, double value, double bound)
      : std::runtime_error("L[f] = " + std::to_string(value) + " < " + std::to_string(bound) + " at ("
                           + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")"),
        point(p), value(value)
  {}

  Point point;
  double value;
};

struct C2UniformReport
{
  double worst_margin{0.0};
  std::vector<double> radii;    ///< descending
  std::vector<double> margins;  ///< per radius
  /// Largest sampled r with non-negative margin at r and every smaller sampled radius; 0 if none.
  double empirical_r0{0.0};
};

/**
 * @brief Symmetric-step margin max{f(p.rv), f(p.rv^-1)} - f(p) - sigma lambda r^2 over base points in K.
 *
 * First verifies op_L >= 2 lambda (analytic derivatives) at every base point in K.
 */
inline C2UniformReport check_c2_uniform(const ScalarField &f, const Membership &K, double sigma, double lambda,
                                        const SamplingPlan &plan, const OperatorConfig &cfg = {})
{
  if (!f.has_analytic_derivatives()) { throw std::invalid_argument("check_c2_uniform needs analytic derivatives"); }
  if (!(sigma > 0.0 && sigma < 1.0)) { throw std::invalid_argument("sigma must lie in (0, 1)"); }
  plan.validate();
  const auto bases = filter_points(plan.base_points, K);
  if (bases.empty()) { throw std::invalid_argument("no plan base point lies in K"); }
  for (const Point &p : bases) {
    const double l = op_L(f, p, cfg);
    if (l < 2.0 * lambda) { throw PreconditionFailure(p, l, 2.0 * lambda); }
  }
  C2UniformReport rep;
  rep.radii = plan.radii;
  std::sort(rep.radii.begin(), rep.radii.end(), std::greater<>());
  SamplingPlan sorted = plan;
  sorted.radii = rep.radii;
  rep.margins = detail::uniform_margins(f, sigma * lambda, sorted, bases);
  rep.worst_margin = *std::min_element(rep.margins.begin(), rep.margins.end());
  for (std::size_t i = rep.radii.size(); i-- > 0;) {
    if (rep.margins[i] < 0.0) { break; }
    rep.empirical_r0 = rep.radii[i];
  }
  return rep;
}

/// A horizontal segment with both ends in the set and a sampled point outside.
struct SetWitness
{
  Point p;
  Point q;
  Point w;
};

/// First violation of h-convexity in plan order (base, direction, sign, radius, segment sample).
inline std::optional<SetWitness> check_set_hconvex(const Membership &member, const SamplingPlan &plan)
{
  plan.validate();
  std::vector<std::optional<SetWitness>> found(plan.base_points.size());
  parallel_for(plan.base_points.size(), [&](std::size_t n) {
    const Point &p = plan.base_points[n];
    if (!member(p)) { return; }
    for (int k = 0; k < plan.directions; ++k) {
      const HorizontalDirection dir = plan.direction(k);
      for (int sign : {1, -1}) {
        for (double r : plan.radii) {
          const Point q = horizontal_step(p, dir, r, sign);
          if (!member(q)) { continue; }
          for (int j = 1; j + 1 < plan.segment_samples; ++j) {
            const Point w = segment_point(p, q, plan.segment_param(j));
            if (!member(w)) {
              found[n] = SetWitness{p, q, w};
              return;
            }
          }
        }
      }
    }
  });
  for (const auto &w : found) {
    if (w) { return w; }
  }
  return std::nullopt;
}

/// Settings for the hill-climbing search of local maxima.
struct LocalMaxProbe
{
  std::array<double, 3> lo{-1.0, -1.0, -1.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  int starts{100};
  std::uint64_t seed{1};
  double initial_step{0.1};
  double min_step{1e-7};
  int max_iterations{100000};
};

/**
 * @brief Coordinate hill climbing from random starts in the box.
 *
 * A run that stalls at min_step strictly inside the box is reported as a
 * candidate local maximum; runs that leave the box are unbounded ascents.
 */
template<typename Field>
std::vector<Point> probe_local_maxima(const Field &f, const LocalMaxProbe &probe)
{
  std::mt19937_64 rng(probe.seed);
  std::vector<Point> starts;
  for (int s = 0; s < probe.starts; ++s) {
    Point p;
    std::uniform_real_distribution<double> ux(probe.lo[0], probe.hi[0]), uy(probe.lo[1], probe.hi[1]),
      uz(probe.lo[2], probe.hi[2]);
    p.x = ux(rng);
    p.y = uy(rng);
    p.z = uz(rng);
    starts.push_back(p);
  }
  auto inside = [&](const Point &p) {
    return p.x > probe.lo[0] && p.x < probe.hi[0] && p.y > probe.lo[1] && p.y < probe.hi[1] && p.z > probe.lo[2]
           && p.z < probe.hi[2];
  };
  std::vector<Point> maxima;
  for (Point p : starts) {
    double fp = f(p);
    double h = probe.initial_step;
    bool escaped = false;
    for (int it = 0; it < probe.max_iterations && h >= probe.min_step; ++it) {
      bool moved = false;
      for (const Point d : {Point{1, 0, 0}, Point{-1, 0, 0}, Point{0, 1, 0}, Point{0, -1, 0}, Point{0, 0, 1},
                            Point{0, 0, -1}}) {
        const Point q{p.x + h * d.x, p.y + h * d.y, p.z + h * d.z};
        const double fq = f(q);
        if (fq > fp) {
          p = q;
          fp = fq;
          moved = true;
          break;
        }
      }
      if (!inside(p)) {
        escaped = true;
        break;
      }
      if (!moved) { h *= 0.5; }
    }
    if (!escaped && h < probe.min_step) { maxima.push_back(p); }
  }
  return maxima;
}

}  // namespace hflow

#endif  // HFLOW_QCHECK_HPP_
