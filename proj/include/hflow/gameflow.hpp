#ifndef HFLOW_GAMEFLOW_HPP_
#define HFLOW_GAMEFLOW_HPP_

/**
 * @file
 * @brief Min-max game scheme for horizontal curvature flow of level sets:
 * grid iteration, exact recursive oracle, and observables of the flow.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hflow/grid.hpp"
#include "hflow/hgroup.hpp"
#include "hflow/parallel.hpp"
#include "hflow/qcheck.hpp"

namespace hflow {

struct GameParams
{
  double epsilon{0.1};  ///< one step advances time by epsilon^2 and moves by sqrt(2) epsilon
  int directions{36};
  double horizon{0.0};
  double C{1.0};  ///< truncation level, also the value outside the grid
  GridSpec grid{};

  void validate() const
  {
    if (!(epsilon > 0.0)) { throw std::invalid_argument("epsilon must be positive"); }
    if (directions < 4) { throw std::invalid_argument("game needs at least 4 directions"); }
    if (!(horizon >= 0.0)) { throw std::invalid_argument("horizon must be >= 0"); }
    if (!std::isfinite(C)) { throw std::invalid_argument("truncation level must be finite"); }
    grid.validate();
  }

  /// floor(T / epsilon^2), guarded against T / epsilon^2 rounding just below an integer.
  std::size_t steps() const
  {
    return static_cast<std::size_t>(std::floor(horizon / (epsilon * epsilon) * (1.0 + 1e-12)));
  }

  double move_length() const { return std::numbers::sqrt2 * epsilon; }
  double move_to_cell_ratio() const { return move_length() / grid.max_cell(); }
};

struct StepDiagnostics
{
  double min{0.0};
  double max{0.0};
};

/// slices[k] approximates u_epsilon(., k epsilon^2).
struct FlowResult
{
  std::vector<GridSlice> slices;
  GameParams params;
  std::vector<StepDiagnostics> diagnostics;  ///< one per slice
};

namespace detail {
struct DirectionTable
{
  std::vector<double> c, s;

  explicit DirectionTable(int m)
  {
    for (int k = 0; k < m; ++k) {
      const double t = direction_angle(k, m);
      c.push_back(std::cos(t));
      s.push_back(std::sin(t));
    }
  }
};

inline StepDiagnostics diagnose(const GridSlice &s) { return {s.min_value(), s.max_value()}; }
}  // namespace detail

/// One step: min over directions of max over b = +-1 of the interpolated previous slice at p . (b sqrt(2) eps v).
inline GridSlice dpp_step(const GridSlice &prev, const GameParams &params)
{
  const GridSpec &spec = prev.spec();
  const detail::DirectionTable dirs(params.directions);
  const double len = params.move_length();
  std::vector<double> next(spec.size());
  parallel_for(spec.dims[2], [&](std::size_t k) {
    for (std::size_t j = 0; j < spec.dims[1]; ++j) {
      for (std::size_t i = 0; i < spec.dims[0]; ++i) {
        const Point p = spec.node(i, j, k);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < dirs.c.size(); ++d) {
          const double a = prev.eval(horizontal_step(p, dirs.c[d], dirs.s[d], len, 1));
          const double b = prev.eval(horizontal_step(p, dirs.c[d], dirs.s[d], len, -1));
          best = std::min(best, std::max(a, b));
        }
        if (!std::isfinite(best)) { throw NonFiniteSample(i, j, k, p); }
        next[spec.index(i, j, k)] = best;
      }
    }
  });
  return GridSlice(spec, std::move(next), prev.outside_value());
}

/// Iterates dpp_step params.steps() times; slices[0] is u0 itself.
inline FlowResult solve(const GridSlice &u0, const GameParams &params)
{
  params.validate();
  if (!(u0.spec() == params.grid)) { throw std::invalid_argument("initial slice grid does not match params"); }
  FlowResult res;
  res.params = params;
  res.slices.push_back(u0);
  res.diagnostics.push_back(detail::diagnose(u0));
  for (std::size_t n = 0; n < params.steps(); ++n) {
    res.slices.push_back(dpp_step(res.slices.back(), params));
    res.diagnostics.push_back(detail::diagnose(res.slices.back()));
  }
  return res;
}

/// Samples f on params.grid with outside value C and truncates at C.
template<typename Field>
GridSlice initial_slice(const Field &f, const GameParams &params)
{
  const double C = params.C;
  return grid_sample([&](const Point &p) { return std::min(f(p), C); }, params.grid, C);
}

/**
 * @brief Exact min-max tree of depth N evaluated at group points (no grid).
 *
 * Costs (2M)^N evaluations of u0; larger trees than max_evaluations are refused.
 */
inline double dpp_oracle(const std::function<double(const Point &)> &u0, const Point &p, int N,
                         const GameParams &params, double max_evaluations = 5e7)
{
  if (N < 0) { throw std::invalid_argument("dpp_oracle needs N >= 0"); }
  if (std::pow(2.0 * params.directions, N) > max_evaluations) {
    throw std::invalid_argument("dpp_oracle tree too large: (2M)^N = " + std::to_string(std::pow(2.0 * params.directions, N)));
  }
  const detail::DirectionTable dirs(params.directions);
  const double len = params.move_length();
  std::function<double(const Point &, int)> rec = [&](const Point &q, int n) -> double {
    if (n == 0) { return u0(q); }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < dirs.c.size(); ++d) {
      const double a = rec(horizontal_step(q, dirs.c[d], dirs.s[d], len, 1), n - 1);
      const double b = rec(horizontal_step(q, dirs.c[d], dirs.s[d], len, -1), n - 1);
      best = std::min(best, std::max(a, b));
    }
    return best;
  };
  return rec(p, N);
}

/// |oracle(min{u_hat, C}) - min{oracle(u_hat), C}| at p.
inline double check_truncation_commute(const std::function<double(const Point &)> &u_hat, double C, const Point &p,
                                       int N, const GameParams &params)
{
  const double lhs = dpp_oracle([&](const Point &q) { return std::min(u_hat(q), C); }, p, N, params);
  const double rhs = std::min(dpp_oracle(u_hat, p, N, params), C);
  return std::abs(lhs - rhs);
}

struct MonotonicityReport
{
  /// min over nodes, k < l of slices[l] - min{slices[k] + 2 lambda eps^2 (l - k), C}
  double raw_margin{std::numeric_limits<double>::infinity()};
  /// min of raw margin + allowance_per_step (l - k); >= 0 means held
  double margin{std::numeric_limits<double>::infinity()};
  double allowance_per_step{0.0};
  std::size_t k{0}, l{0}, node{0};
};

/**
 * @brief Discrete time monotonicity u(l) >= u(k) + 2 lambda eps^2 (l - k).
 *
 * The increment is capped at the truncation level C, which the scheme never
 * exceeds. A negative allowance selects 4 (max cell) per step.
 */
inline MonotonicityReport check_time_monotonicity(const FlowResult &res, double lambda, double allowance_per_step = -1.0)
{
  MonotonicityReport rep;
  rep.allowance_per_step = allowance_per_step < 0.0 ? 4.0 * res.params.grid.max_cell() : allowance_per_step;
  const double eps2 = res.params.epsilon * res.params.epsilon;
  const double C = res.params.C;
  const std::size_t n = res.slices.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const auto &a = res.slices[k].values();
      const auto &b = res.slices[l].values();
      const double inc = 2.0 * lambda * eps2 * static_cast<double>(l - k);
      const double allow = rep.allowance_per_step * static_cast<double>(l - k);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double m = b[i] - std::min(a[i] + inc, C);
        if (m + allow < rep.margin) {
          rep.margin = m + allow;
          rep.k = k;
          rep.l = l;
          rep.node = i;
        }
        rep.raw_margin = std::min(rep.raw_margin, m);
      }
    }
  }
  return rep;
}

/// Largest sampled h-quasiconvexity gap of each slice.
inline std::vector<double> check_slice_hqc(const FlowResult &res, const SamplingPlan &plan)
{
  std::vector<double> gaps;
  for (const auto &s : res.slices) { gaps.push_back(worst_gap(s, plan)); }
  return gaps;
}

/// Node mask of {u < 0}.
inline std::vector<bool> sublevel_nodes(const GridSlice &s)
{
  std::vector<bool> m(s.values().size());
  for (std::size_t i = 0; i < m.size(); ++i) { m[i] = s.values()[i] < 0.0; }
  return m;
}

/// True when each slice's {u < 0} node set is contained in the previous one.
inline bool sublevel_sets_nested(const FlowResult &res)
{
  for (std::size_t n = 1; n < res.slices.size(); ++n) {
    const auto prev = sublevel_nodes(res.slices[n - 1]);
    const auto cur = sublevel_nodes(res.slices[n]);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] && !prev[i]) { return false; }
    }
  }
  return true;
}

/// Linear-interpolated sign changes of u along grid edges.
inline std::vector<Point> zero_level_points(const GridSlice &s)
{
  const GridSpec &g = s.spec();
  std::vector<Point> pts;
  auto edge = [&](std::size_t a, std::size_t b) {
    const double va = s.values()[a], vb = s.values()[b];
    if ((va < 0.0) == (vb < 0.0)) { return; }
    const double t = va / (va - vb);
    const Point pa = g.node(a), pb = g.node(b);
    pts.push_back(segment_point(pa, pb, t));
  };
  for (std::size_t k = 0; k < g.dims[2]; ++k) {
    for (std::size_t j = 0; j < g.dims[1]; ++j) {
      for (std::size_t i = 0; i < g.dims[0]; ++i) {
        const std::size_t n = g.index(i, j, k);
        if (i + 1 < g.dims[0]) { edge(n, g.index(i + 1, j, k)); }
        if (j + 1 < g.dims[1]) { edge(n, g.index(i, j + 1, k)); }
        if (k + 1 < g.dims[2]) { edge(n, g.index(i, j, k + 1)); }
      }
    }
  }
  return pts;
}

/// max |s(r, 0, z) - s(0, r, z)| over the sample products.
inline double rotational_drift(const GridSlice &s, const std::vector<double> &rs, const std::vector<double> &zs)
{
  double d = 0.0;
  for (double r : rs) {
    for (double z : zs) { d = std::max(d, std::abs(s.eval({r, 0.0, z}) - s.eval({0.0, r, z}))); }
  }
  return d;
}

/// max |b(a . p) - a_slice(p)| over sample points.
inline double translation_drift(const GridSlice &a_slice, const GridSlice &b, const Point &a,
                                const std::vector<Point> &pts)
{
  double d = 0.0;
  for (const Point &p : pts) { d = std::max(d, std::abs(b.eval(a * p) - a_slice.eval(p))); }
  return d;
}

}  // namespace hflow

#endif  // HFLOW_GAMEFLOW_HPP_
