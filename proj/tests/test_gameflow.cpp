#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hflow/fields.hpp"
#include "hflow/gameflow.hpp"

using namespace hflow;
using Catch::Matchers::WithinAbs;

namespace {
GameParams params(double eps, std::size_t n, double C, double half = 1.0, double hz = 1.0)
{
  GameParams g;
  g.epsilon = eps;
  g.C = C;
  g.grid = GridSpec{{-half, -half, -hz}, {half, half, hz}, {n, n, n}};
  return g;
}

double sq(const Point &p) { return p.x * p.x + p.y * p.y; }
}  // namespace

TEST_CASE("step count is robust to rounding", "[gameflow]")
{
  GameParams g = params(0.1, 5, 1.0);
  g.horizon = 0.3;
  CHECK(g.steps() == 30);
  g.horizon = 0.0;
  CHECK(g.steps() == 0);
  g.horizon = 0.0299;
  CHECK(g.steps() == 2);
  CHECK_THAT(g.move_length(), WithinAbs(0.1 * std::sqrt(2.0), 1e-16));
  g.epsilon = 0.0;
  CHECK_THROWS(g.validate());
}

TEST_CASE("one step on |h|^2 adds 2 eps^2 where the orthogonal direction is sampled", "[gameflow]")
{
  // max over b of |h + b r v|^2 = |h|^2 + r^2 + 2 r |<h, v>|, minimised by v orthogonal to h
  const GameParams g = params(0.1, 41, 100.0);
  auto f = [](const Point &p) { return sq(p); };
  for (const Point &p : {Point{1.0, 0.0, 0.0}, Point{0.0, -0.5, 0.3}, Point{0.0, 0.0, 0.0}}) {
    CHECK_THAT(dpp_oracle(f, p, 1, g), WithinAbs(sq(p) + 0.02, 1e-14));
  }
  const GridSlice s1 = dpp_step(initial_slice(f, g), g);
  CHECK_THAT(s1({0.5, 0.0, 0.0}), WithinAbs(0.25 + 0.02, 1e-3));
  CHECK_THAT(s1({0.0, 0.0, 0.0}), WithinAbs(0.02, 1e-3));
}

TEST_CASE("grid scheme tracks the exact tree", "[gameflow]")
{
  const GameParams g = params(0.1, 41, 10.0);
  auto f = [](const Point &p) { return sq(p) - 0.5 * p.z; };
  GameParams g2 = g;
  g2.horizon = 0.02;
  const FlowResult res = solve(initial_slice(f, g2), g2);
  REQUIRE(res.slices.size() == 3);
  REQUIRE(res.diagnostics.size() == 3);
  for (const Point &p : {Point{0.2, 0.1, 0.0}, Point{-0.3, 0.2, 0.1}, Point{0.0, 0.4, -0.2}}) {
    CHECK_THAT(res.slices[2](p), WithinAbs(dpp_oracle(f, p, 2, g), 5e-3));
  }
  CHECK_THROWS(dpp_oracle(f, {}, 6, g));
}

TEST_CASE("scheme properties", "[gameflow][property]")
{
  GameParams g = params(0.1, 17, 2.0);
  g.horizon = 0.05;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0), nonneg(0.0, 0.5);

  SECTION("constants are preserved exactly")
  {
    g.C = 0.7;
    const FlowResult res = solve(initial_slice([](const Point &) { return 0.7; }, g), g);
    for (const auto &s : res.slices) {
      for (double v : s.values()) { CHECK(v == 0.7); }
    }
  }

  SECTION("comparison")
  {
    std::vector<double> a(g.grid.size()), b(g.grid.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = u(rng);
      b[i] = std::min(a[i] + nonneg(rng), g.C);
    }
    const FlowResult ra = solve(GridSlice(g.grid, a, g.C), g), rb = solve(GridSlice(g.grid, b, g.C), g);
    for (std::size_t n = 0; n < ra.slices.size(); ++n) {
      for (std::size_t i = 0; i < a.size(); ++i) { CHECK(ra.slices[n].values()[i] <= rb.slices[n].values()[i]); }
    }
  }

  SECTION("values stay below the truncation level")
  {
    const FlowResult res = solve(initial_slice([](const Point &p) { return 5.0 * sq(p); }, g), g);
    for (const auto &d : res.diagnostics) { CHECK(d.max <= g.C); }
  }

  SECTION("truncation commutes with the exact tree")
  {
    auto f = [](const Point &p) { return sq(p) + p.z * p.z; };
    for (int n = 0; n < 10; ++n) {
      const Point p{u(rng), u(rng), u(rng)};
      CHECK(check_truncation_commute(f, 0.5, p, 2, g) == 0.0);
    }
  }
}

TEST_CASE("time monotonicity of a uniformly quasiconvex field", "[gameflow]")
{
  GameParams g = params(0.1, 21, 3.0);
  g.horizon = 0.05;
  const ScalarField f = field_rot_profile(linear_profile());
  const FlowResult res = solve(initial_slice(f, g), g);
  const auto rep = check_time_monotonicity(res, 1.0);
  CHECK(rep.allowance_per_step == 4.0 * g.grid.max_cell());
  CHECK(rep.margin >= 0.0);
  CHECK(rep.raw_margin <= rep.margin);
  // an absurd rate is detected
  CHECK(check_time_monotonicity(res, 100.0, 0.0).margin < 0.0);
}

TEST_CASE("sublevel sets and level points", "[gameflow]")
{
  GameParams g = params(0.1, 21, 2.0, 1.5, 1.5);
  g.horizon = 0.04;
  auto f = [](const Point &p) { return sq(p) + 4.0 * std::abs(p.z) - 0.5; };
  const FlowResult res = solve(initial_slice(f, g), g);
  CHECK(sublevel_sets_nested(res));
  const auto mask = sublevel_nodes(res.slices[0]);
  CHECK(mask[g.grid.index(10, 10, 10)]);
  CHECK_FALSE(mask[0]);

  std::vector<GridSlice> grow = {res.slices[1], res.slices[0]};
  CHECK_FALSE(sublevel_sets_nested(FlowResult{grow, g, {}}));

  const GridSlice lin = grid_sample([](const Point &p) { return p.x - 0.3; }, g.grid, 0.0);
  const auto pts = zero_level_points(lin);
  REQUIRE_FALSE(pts.empty());
  for (const Point &p : pts) { CHECK_THAT(p.x, WithinAbs(0.3, 1e-12)); }
}

TEST_CASE("symmetry drifts", "[gameflow]")
{
  const GameParams g = params(0.1, 21, 2.0);
  const GridSlice s = initial_slice([](const Point &p) { return sq(p) + p.z; }, g);
  CHECK(rotational_drift(s, {0.2, 0.5}, {-0.5, 0.0, 0.5}) < 1e-12);
  const GridSlice t = initial_slice([](const Point &p) { return p.x; }, g);
  CHECK_THAT(rotational_drift(t, {0.5}, {0.0}), WithinAbs(0.5, 1e-12));
  CHECK(translation_drift(s, s, Point{}, {{0.1, 0.2, 0.3}, {-0.4, 0.0, 0.1}}) == 0.0);
}

TEST_CASE("solve validates its inputs", "[gameflow]")
{
  GameParams g = params(0.1, 9, 1.0);
  const GridSlice s = initial_slice([](const Point &) { return 0.0; }, params(0.1, 11, 1.0));
  CHECK_THROWS(solve(s, g));
  g.directions = 2;
  CHECK_THROWS(solve(initial_slice([](const Point &) { return 0.0; }, g), g));
}
