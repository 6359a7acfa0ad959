#ifndef HFLOW_ACCEPTANCE_HPP_
#define HFLOW_ACCEPTANCE_HPP_

/**
 * @file
 * @brief End-to-end acceptance suite: 13 criteria, each measured against a
 * fixed tolerance and reported as one PASS / FAIL row.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hflow/fields.hpp"
#include "hflow/gameflow.hpp"
#include "hflow/grid.hpp"
#include "hflow/hcalc.hpp"
#include "hflow/hgroup.hpp"
#include "hflow/hull_init.hpp"
#include "hflow/qcheck.hpp"

namespace hflow::acceptance {

struct CriterionResult
{
  int id{0};
  std::string title;
  bool pass{false};
  std::string detail;  ///< measured values against tolerances
  double seconds{0.0};
};

namespace detail {

inline std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Accumulates named comparisons into a pass flag and a detail line.
class Recorder
{
public:
  void at_most(const std::string &name, double measured, double bound) { add(name, measured, "<=", bound, measured <= bound); }
  void at_least(const std::string &name, double measured, double bound) { add(name, measured, ">=", bound, measured >= bound); }
  void above(const std::string &name, double measured, double bound) { add(name, measured, ">", bound, measured > bound); }
  void require(const std::string &name, bool ok)
  {
    sep();
    detail_ += name + (ok ? " ok" : " FAILED");
    pass_ = pass_ && ok;
  }
  void note(const std::string &name, double v)
  {
    sep();
    detail_ += name + "=" + fmt(v);
  }

  bool pass() const { return pass_; }
  const std::string &detail() const { return detail_; }

private:
  void sep()
  {
    if (!detail_.empty()) { detail_ += "; "; }
  }
  void add(const std::string &name, double m, const char *rel, double b, bool ok)
  {
    sep();
    detail_ += name + "=" + fmt(m) + " (" + rel + " " + fmt(b) + ")";
    pass_ = pass_ && ok && !std::isnan(m);
  }

  bool pass_{true};
  std::string detail_;
};

inline Point random_point(std::mt19937_64 &rng, std::array<double, 3> lo, std::array<double, 3> hi)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p;
  p.x = lo[0] + (hi[0] - lo[0]) * u(rng);
  p.y = lo[1] + (hi[1] - lo[1]) * u(rng);
  p.z = lo[2] + (hi[2] - lo[2]) * u(rng);
  return p;
}

inline double dist_inf(const Point &a, const Point &b)
{
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

inline std::vector<double> linspace(double a, double b, int n)
{
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) { v[static_cast<std::size_t>(i)] = i + 1 == n ? b : a + (b - a) * i / (n - 1); }
  return v;
}

}  // namespace detail

using detail::Recorder;

inline void criterion_group_calculus(Recorder &rec)
{
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> us(0.1, 3.0);
  double assoc = 0, inv = 0, dil = 0, hom = 0, metric = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point p = detail::random_point(rng, {-2, -2, -2}, {2, 2, 2});
    const Point q = detail::random_point(rng, {-2, -2, -2}, {2, 2, 2});
    const Point r = detail::random_point(rng, {-2, -2, -2}, {2, 2, 2});
    const double s = us(rng);
    assoc = std::max(assoc, detail::dist_inf((p * q) * r, p * (q * r)));
    inv = std::max({inv, detail::dist_inf(p * group_inverse(p), Point{}), detail::dist_inf(group_inverse(p) * p, Point{})});
    dil = std::max(dil, detail::dist_inf(dilation(s, p * q), dilation(s, p) * dilation(s, q)) / (s * s));
    hom = std::max(hom, std::abs(gauge(dilation(s, p)) - s * gauge(p)) / (s * gauge(p)));
    metric = std::max(metric, std::abs(left_metric(r * p, r * q) - left_metric(p, q)) / (1.0 + left_metric(p, q)));
  }
  rec.at_most("associativity", assoc, 1e-12);
  rec.at_most("inverse", inv, 0.0);
  rec.at_most("dilation_homomorphism", dil, 1e-12);
  rec.at_most("gauge_homogeneity_rel", hom, 1e-12);
  rec.at_most("left_invariance_rel", metric, 1e-9);
}

inline void criterion_neg_z4(Recorder &rec)
{
  const ScalarField f = field_neg_z4();
  const Point p{1, 2, 1}, q{1, -2, -1}, w{1, 0, 0};
  rec.at_least("triple_gap", check_triple(f, p, q), 1.0);
  rec.at_least("gap_at_w", f(w) - std::max(f(p), f(q)), 1.0);
  rec.require("w_on_segment", segment_point(p, q, 0.5) == w);
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto v = evaluate_operators(f, detail::random_point(rng, {-2, -2, -2}, {2, 2, 2}));
    worst = std::max({worst, std::abs(v.L), std::abs(v.L_star)});
  }
  rec.at_most("max|L|,|L*|", worst, 1e-9);
}

inline void criterion_positive_example(Recorder &rec)
{
  const ScalarField f = field_positive_example();
  std::mt19937_64 rng(303);
  double min_star = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    Point p = detail::random_point(rng, {-2, -2, -2}, {2, 2, 2});
    if (i % 2 == 0) { p.x = 0.0; }
    min_star = std::min(min_star, op_L_star(f, p));
  }
  rec.above("min_L*", min_star, 0.0);
  double min_bar = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    Point p = detail::random_point(rng, {-2, -2, -2}, {2, 2, 2});
    p.x = 0.0;
    min_bar = std::min(min_bar, op_L_bar(f, p).value);
  }
  rec.at_least("min_Lbar_on_x=0", min_bar, 0.0);
  const double gap = check_triple(f, {-0.1, 1, 1}, {0.1, -1, 1});
  rec.at_most("|gap-0.0875|", std::abs(gap - 0.0875), 1e-12);
  LocalMaxProbe probe;
  probe.lo = {-2, -2, -2};
  probe.hi = {2, 2, 2};
  probe.starts = 100;
  probe.seed = 304;
  rec.at_most("local_maxima_found", static_cast<double>(probe_local_maxima(f, probe).size()), 0.0);
}

inline void criterion_rotsym_closed_form(Recorder &rec)
{
  const ProfileFunction g = quartic_profile();
  const ScalarField f = field_rot_profile(g);
  std::mt19937_64 rng(404);
  double rel = 0.0;
  int used = 0;
  while (used < 1000) {
    const Point p = detail::random_point(rng, {-1, -1, -1}, {1, 1, 1});
    const auto v = evaluate_operators(f, p);
    if (v.characteristic) { continue; }
    const double ref = op_L_rotsym(g, std::hypot(p.x, p.y), p.z);
    rel = std::max(rel, std::abs(v.L - ref) / std::abs(ref));
    ++used;
  }
  rec.at_most("max_rel_err", rel, 1e-6);
  bool axis = true;
  for (double z : detail::linspace(-1.0, 1.0, 101)) {
    axis = axis && op_L(f, {0.0, 0.0, z}) == 2.0 && op_L_rotsym(g, 0.0, z) == 2.0;
  }
  rec.require("on_axis_exactly_2", axis);
  RhoZFunction F;
  F.F = [g](double rho, double z) { return rho - g.value(z); };
  F.F_rho = [](double, double) { return 1.0; };
  F.F_z = [g](double, double z) { return -g.d1(z); };
  F.F_rhorho = [](double, double) { return 0.0; };
  F.F_rhoz = [](double, double) { return 0.0; };
  F.F_zz = [g](double, double z) { return -g.d2(z); };
  double diff = 0.0;
  for (double r : detail::linspace(0.0, 1.0, 41)) {
    for (double z : detail::linspace(-1.0, 1.0, 41)) {
      diff = std::max(diff, std::abs(op_L_Frhoz(F, r * r, z) - op_L_rotsym(g, r, z)));
    }
  }
  rec.at_most("Frhoz_vs_rotsym", diff, 1e-10);
}

inline void criterion_quartic_conditions(Recorder &rec)
{
  const ProfileFunction g = quartic_profile();
  rec.above("S2cond_margin(sigma=1/2)", check_profile_S2cond(g, 0.5, detail::linspace(-1.0, 1.0, 10000)), 0.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const double mu = (i + 0.5) / 200.0;
    for (double z : detail::linspace(-1.0, 1.0, 200)) {
      worst = std::min(worst, g.value(mu * z) - mu * g.value(z) - (1.0 - mu) * (1.0 - mu));
    }
  }
  rec.at_least("min g(mu z)-mu g(z)-(1-mu)^2", worst, -1e-12);
}

inline void criterion_uniform_concave(Recorder &rec)
{
  const SamplingPlan lin = SamplingPlan::desk({-1, -1, -1}, {1, 1, 1});
  rec.at_least("margin(g=z, lambda=1)", check_uniform(field_rot_profile(linear_profile()), {1.0, 1.0}, lin), -1e-9);
  for (auto [c1, c2] : {std::pair{2.0, 2.0}, std::pair{4.0, 1.0}, std::pair{1.0, 6.0}}) {
    const double lambda = 1.0 - c1 * c2 / 8.0;
    const double h = std::sqrt(c2);
    const SamplingPlan plan = SamplingPlan::desk({-h, -h, -1}, {h, h, 1});
    const Membership dom = [c2](const Point &p) { return p.x * p.x + p.y * p.y < c2; };
    rec.at_least("margin(C1=" + detail::fmt(c1) + ",C2=" + detail::fmt(c2) + ")",
                 check_uniform(field_rot_profile(semiconcave_profile(c1)), {lambda, 1.0}, plan, dom), -1e-9);
  }
}

inline void criterion_minkowski(Recorder &rec)
{
  const StarShapedSet ball = gauge_ball_set();
  std::mt19937_64 rng(707);
  double err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point p = detail::random_point(rng, {-2, -2, -1}, {2, 2, 1});
    const double g = gauge(p);
    err = std::max(err, std::abs(minkowski_u0(ball, p, 1e-10) - g * g));
  }
  rec.at_most("ball |U0-gauge^2|", err, 1e-8);

  const double tol = 1e-10;
  const StarShapedSet E = profile_set(quartic_profile());
  double hom = 0.0, lower = std::numeric_limits<double>::infinity(), upper = lower;
  for (int i = 0; i < 300; ++i) {
    const Point p = detail::random_point(rng, {-2, -2, -1.5}, {2, 2, 1.5});
    const double u = minkowski_u0(E, p, tol);
    for (double s : {0.5, 2.0, 3.0}) {
      hom = std::max(hom, std::abs(minkowski_u0(E, dilation(s, p), tol) - s * s * u) / (s * s * u));
    }
    const double g2 = gauge(p) * gauge(p);
    lower = std::min(lower, u - (g2 / (E.R * E.R) - tol));
    upper = std::min(upper, g2 / (E.r * E.r) + tol - u);
  }
  rec.at_most("homogeneity_rel", hom, 2.0 * tol);
  rec.at_least("sandwich_lower", lower, 0.0);
  rec.at_least("sandwich_upper", upper, 0.0);
  MinkowskiConfig mc;
  mc.tol = tol;
  double bnd = 0.0;
  for (const Point &p : boundary_points(E, 9, 12, mc)) { bnd = std::max(bnd, std::abs(minkowski_u0(E, p, mc) - 1.0)); }
  rec.at_most("boundary |U0-1|", bnd, 2.0 * tol);
}

inline void criterion_build_initial(Recorder &rec)
{
  const ProfileFunction g = quartic_profile();
  const StarShapedSet E = profile_set(g);
  const InitialData init = build_initial(E);
  rec.note("rho", init.rho);
  rec.note("c", init.c);
  rec.note("C", init.C);

  const GridSpec spec{{-1.2, -1.2, -1.1}, {1.2, 1.2, 1.1}, {33, 33, 33}};
  const GridSlice uh = grid_sample(init.u_hat, spec, init.C);
  std::size_t mismatch = 0;
  bool near_boundary = true;
  for (std::size_t k = 0; k < 33; ++k) {
    for (std::size_t j = 0; j < 33; ++j) {
      for (std::size_t i = 0; i < 33; ++i) {
        const Point p = spec.node(i, j, k);
        const bool in = E.member(p);
        if ((uh.at(i, j, k) < 0.0) == in) { continue; }
        ++mismatch;
        bool flips = false;
        for (int dk = -1; dk <= 1; ++dk) {
          for (int dj = -1; dj <= 1; ++dj) {
            for (int di = -1; di <= 1; ++di) {
              const Point q{p.x + di * spec.spacing(0), p.y + dj * spec.spacing(1), p.z + dk * spec.spacing(2)};
              flips = flips || E.member(q) != in;
            }
          }
        }
        near_boundary = near_boundary && flips;
      }
    }
  }
  rec.at_least("membership_match", 1.0 - static_cast<double>(mismatch) / static_cast<double>(spec.size()), 0.999);
  rec.require("mismatches_within_one_cell", near_boundary);

  SamplingPlan plan;
  plan.base_points = lattice_points({-1.5, -1.5, -1.5}, {1.5, 1.5, 1.5}, {15, 15, 15});
  plan.radii = {0.02, 0.05, 0.1};
  rec.above("measured_lambda", measure_uniform_lambda(init.u_hat, plan), 0.0);

  const auto sphere = gauge_sphere_points(17, 24);
  std::vector<double> mins;
  for (double R : {2.0, 4.0, 8.0}) {
    double m = std::numeric_limits<double>::infinity();
    for (const Point &u : sphere) { m = std::min(m, init.u_hat(dilation(R, u))); }
    mins.push_back(m);
    rec.note("min_uhat(|p|=" + detail::fmt(R) + ")", m);
  }
  rec.require("coercive", mins[0] < mins[1] && mins[1] < mins[2]);
}

inline void criterion_oracle_vs_grid(Recorder &rec)
{
  const ScalarField f = field_rot_profile(quartic_profile());
  GameParams gp;
  gp.epsilon = 0.1;
  gp.directions = 36;
  gp.C = 3.0;
  gp.grid = GridSpec::with_spacing({-1, -1, -1}, {1, 1, 1}, 0.02);
  gp.horizon = 3 * gp.epsilon * gp.epsilon;
  rec.note("steps", static_cast<double>(gp.steps()));
  const FlowResult res = solve(initial_slice(f, gp), gp);
  const auto u0 = [&](const Point &p) { return std::min(f(p), gp.C); };
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Point p = detail::random_point(rng, {-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5});
    worst = std::max(worst, std::abs(res.slices.back().eval(p) - dpp_oracle(u0, p, 3, gp)));
  }
  rec.at_most("max|grid-oracle|", worst, 0.05);
}

inline void criterion_exact_invariants(Recorder &rec)
{
  GameParams gp;
  gp.epsilon = 0.1;
  gp.C = 1.0;
  gp.grid = GridSpec{{-1, -1, -1}, {1, 1, 1}, {32, 32, 32}};
  gp.horizon = 10 * gp.epsilon * gp.epsilon;
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> base(-1.0, 1.0), bump(0.0, 0.5);
  bool ordered = true, plateau = true;
  for (int pair = 0; pair < 10; ++pair) {
    std::vector<double> u(gp.grid.size()), v(gp.grid.size());
    for (std::size_t n = 0; n < u.size(); ++n) {
      u[n] = base(rng);
      v[n] = std::min(u[n] + bump(rng), gp.C);
    }
    const FlowResult a = solve(GridSlice(gp.grid, u, gp.C), gp);
    const FlowResult b = solve(GridSlice(gp.grid, v, gp.C), gp);
    for (std::size_t s = 0; s < a.slices.size(); ++s) {
      const auto &av = a.slices[s].values();
      const auto &bv = b.slices[s].values();
      for (std::size_t n = 0; n < av.size(); ++n) {
        ordered = ordered && av[n] <= bv[n];
        plateau = plateau && av[n] <= gp.C && bv[n] <= gp.C;
      }
    }
  }
  rec.require("comparison_bit_exact", ordered);
  rec.require("plateau_preserved", plateau);
}

inline void criterion_time_monotonicity(Recorder &rec)
{
  const ScalarField f = field_rot_profile(linear_profile());
  GameParams gp;
  gp.epsilon = 0.1;
  gp.C = 3.0;
  gp.grid = GridSpec{{-1.2, -1.2, -1.2}, {1.2, 1.2, 1.2}, {48, 48, 48}};
  gp.horizon = 20 * gp.epsilon * gp.epsilon;
  const FlowResult res = solve(initial_slice(f, gp), gp);
  const MonotonicityReport m = check_time_monotonicity(res, 1.0);
  rec.note("interp_allowance_per_step", m.allowance_per_step);
  rec.note("raw_margin", m.raw_margin);
  rec.at_least("margin_with_allowance", m.margin, 0.0);

  std::mt19937_64 rng(1111);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Point p = detail::random_point(rng, {-1, -1, -1}, {1, 1, 1});
    worst = std::max(worst, check_truncation_commute(f.eval, 0.5, p, 2, gp));
  }
  rec.at_most("truncation_commute", worst, 0.0);
}

/// Control field: two wells at (-+0.2, 0, 0); its sublevel set {f < 0} is two disjoint balls.
inline ScalarField two_well_field()
{
  return ScalarField{[](const Point &p) {
                       const double a = (p.x + 0.2) * (p.x + 0.2) + p.y * p.y + p.z * p.z;
                       const double b = (p.x - 0.2) * (p.x - 0.2) + p.y * p.y + p.z * p.z;
                       return std::min(a, b) - 0.01;
                     },
                     {},
                     {}};
}

/// Flow of the initial data of E on the box [lo, hi] widened by margin, with default C.
inline FlowResult set_flow(const StarShapedSet &E, std::array<double, 3> lo, std::array<double, 3> hi, double margin,
                           double h, int steps, int directions)
{
  const InitialData init = build_initial(E);
  GameParams gp;
  gp.epsilon = 0.1;
  gp.directions = directions;
  gp.C = init.C;
  for (int a = 0; a < 3; ++a) {
    lo[a] -= margin;
    hi[a] += margin;
  }
  gp.grid = GridSpec::with_spacing(lo, hi, h);
  gp.horizon = steps * gp.epsilon * gp.epsilon;
  return solve(initial_slice(init.u0, gp), gp);
}

inline void criterion_hqc_preservation(Recorder &rec)
{
  const double tol = 5e-3;
  const int M = 144;
  const double margin = 8.0 * std::numbers::sqrt2 * 0.1;
  auto run = [&](const std::string &name, const StarShapedSet &E, std::array<double, 3> lo,
                 std::array<double, 3> hi) {
    const FlowResult res = set_flow(E, lo, hi, margin, 0.04, 20, M);
    const auto gaps = check_slice_hqc(res, SamplingPlan::desk(lo, hi));
    rec.at_most(name + "_max_gap", *std::max_element(gaps.begin(), gaps.end()), tol);
    rec.require(name + "_nested", sublevel_sets_nested(res));
  };
  const ProfileFunction g16 = gauge_ball_gj(16);
  run("gauge_ball_g16", profile_set(g16), {-1.0, -1.0, g16.a}, {1.0, 1.0, g16.b});
  const double xq = std::sqrt(1.125);  // max of the quartic profile is 9/8
  run("quartic", profile_set(quartic_profile()), {-xq, -xq, -1.0}, {xq, xq, 1.0});
  rec.note("directions", M);

  GameParams gp;
  gp.epsilon = 0.1;
  gp.C = 1.0;
  gp.grid = GridSpec::with_spacing({-1, -1, -1}, {1, 1, 1}, 0.05);
  const GridSlice control = initial_slice(two_well_field(), gp);
  rec.above("control_gap_step0", worst_gap(control, SamplingPlan::desk(gp.grid.lo, gp.grid.hi)), tol);
}

inline void criterion_symmetry(Recorder &rec)
{
  const double tol_interp = 0.05;
  const ScalarField f = field_rot_profile(quartic_profile());
  GameParams gp;
  gp.epsilon = 0.1;
  gp.C = 3.0;
  gp.grid = GridSpec::with_spacing({-1.2, -1.2, -1.2}, {1.2, 1.2, 1.2}, 0.04);
  gp.horizon = 10 * gp.epsilon * gp.epsilon;
  const FlowResult a = solve(initial_slice(f, gp), gp);
  const auto rs = detail::linspace(0.0, 0.8, 9);
  const auto zs = detail::linspace(-0.8, 0.8, 9);
  double rot = 0.0;
  for (const auto &s : a.slices) { rot = std::max(rot, rotational_drift(s, rs, zs)); }
  rec.at_most("rotational_drift", rot, 2.0 * tol_interp);

  const Point shift{0.2, 0.1, 0.05};
  GameParams gb = gp;
  gb.grid = GridSpec::with_spacing({-1.0, -1.1, -1.4}, {1.4, 1.3, 1.4}, 0.04);
  const ScalarField fb{[&](const Point &p) { return f(group_inverse(shift) * p); }, {}, {}};
  const FlowResult b = solve(initial_slice(fb, gb), gb);
  std::mt19937_64 rng(1313);
  std::vector<Point> pts;
  for (int i = 0; i < 200; ++i) { pts.push_back(detail::random_point(rng, {-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5})); }
  double tr = 0.0;
  for (std::size_t s = 0; s < a.slices.size(); ++s) {
    tr = std::max(tr, translation_drift(a.slices[s], b.slices[s], shift, pts));
  }
  rec.at_most("translation_drift", tr, 2.0 * tol_interp);
}

struct Criterion
{
  int id;
  const char *title;
  std::function<void(Recorder &)> run;
};

inline std::vector<Criterion> criteria()
{
  return {
    {1, "group calculus invariants", criterion_group_calculus},
    {2, "-z^4 witness and vanishing L, L*", criterion_neg_z4},
    {3, "positive example: L* > 0, gap 0.0875, no local maxima", criterion_positive_example},
    {4, "rotationally symmetric closed forms", criterion_rotsym_closed_form},
    {5, "quartic profile conditions", criterion_quartic_conditions},
    {6, "uniform h-quasiconvexity of concave profiles", criterion_uniform_concave},
    {7, "Minkowski functional", criterion_minkowski},
    {8, "initial data for the quartic set", criterion_build_initial},
    {9, "game oracle vs grid", criterion_oracle_vs_grid},
    {10, "exact solver invariants", criterion_exact_invariants},
    {11, "time monotonicity and truncation commute", criterion_time_monotonicity},
    {12, "h-quasiconvexity preservation", criterion_hqc_preservation},
    {13, "rotational symmetry and left-translation equivariance", criterion_symmetry},
  };
}

/// Runs one criterion; an exception marks it failed with the message.
inline CriterionResult run_criterion(const Criterion &c)
{
  CriterionResult out;
  out.id = c.id;
  out.title = c.title;
  const auto t0 = std::chrono::steady_clock::now();
  Recorder rec;
  try {
    c.run(rec);
    out.pass = rec.pass();
    out.detail = rec.detail();
  } catch (const std::exception &e) {
    out.pass = false;
    out.detail = rec.detail() + (rec.detail().empty() ? "" : "; ") + "error: " + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Runs the selected criteria (all when ids is empty), calling on_result after each.
inline std::vector<CriterionResult> run_all(const std::vector<int> &ids = {},
                                            const std::function<void(const CriterionResult &)> &on_result = {})
{
  std::vector<CriterionResult> out;
  for (const auto &c : criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) { continue; }
    out.push_back(run_criterion(c));
    if (on_result) { on_result(out.back()); }
  }
  return out;
}

inline std::string format_row(const CriterionResult &r)
{
  char head[64];
  std::snprintf(head, sizeof head, "%s [%2d] ", r.pass ? "PASS" : "FAIL", r.id);
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.1f s)", r.seconds);
  return head + r.title + ": " + r.detail + tail;
}

}  // namespace hflow::acceptance

#endif  // HFLOW_ACCEPTANCE_HPP_
