#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hflow/fields.hpp"
#include "hflow/hull_init.hpp"

using namespace hflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
StarShapedSet scaled_ball(double s)
{
  return StarShapedSet{[s](const Point &p) { return gauge(p) < s; }, s, s};
}

// gauge ball with a spherical shell removed: not star-shaped
StarShapedSet shell_set()
{
  return StarShapedSet{[](const Point &p) {
                         const double g = gauge(p);
                         return g < 0.3 || (g > 0.5 && g < 1.0);
                       },
                       0.25, 1.0};
}

Point random_point(std::mt19937_64 &rng, double s)
{
  std::uniform_real_distribution<double> u(-s, s);
  return {u(rng), u(rng), 0.5 * u(rng)};
}
}  // namespace

TEST_CASE("Minkowski functional of gauge balls is the squared gauge", "[hull_init]")
{
  std::mt19937_64 rng(21);
  for (double s : {1.0, 0.7}) {
    const auto E = scaled_ball(s);
    for (int n = 0; n < 200; ++n) {
      const Point p = random_point(rng, 1.5);
      CHECK_THAT(minkowski_u0(E, p), WithinRel(gauge(p) * gauge(p) / (s * s), 1e-9));
    }
  }
  CHECK(minkowski_u0(gauge_ball_set(), Point{}) == 0.0);
}

TEST_CASE("Minkowski functional is 2-homogeneous and below 1 exactly on the set", "[hull_init][property]")
{
  const auto g = quartic_profile();
  const auto E = profile_set(g);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> us(0.2, 3.0);
  for (int n = 0; n < 200; ++n) {
    const Point p = random_point(rng, 1.3);
    const double s = us(rng);
    const double u = minkowski_u0(E, p);
    CHECK_THAT(minkowski_u0(E, dilation(s, p)), WithinRel(s * s * u, 1e-8));
    if (std::abs(u - 1.0) > 1e-6) { CHECK((u < 1.0) == E(p)); }
  }
}

TEST_CASE("profile sets", "[hull_init]")
{
  const auto E = profile_set(quartic_profile());
  CHECK(E.r > 0.0);
  CHECK(E.R >= E.r);
  CHECK(E({0.0, 0.0, 0.0}));
  CHECK(E({0.99, 0.0, 0.0}));
  CHECK_FALSE(E({1.1, 0.0, 0.0}));
  CHECK_FALSE(E({0.0, 0.0, 1.0}));
  CHECK(profile_closure(quartic_profile())({0.0, 0.0, 1.0}));
  // every point of the inner ball is a member, no member lies beyond the outer ball
  for (const Point &u : gauge_sphere_points(9, 12)) {
    CHECK(E(dilation(E.r, u)));
    CHECK_FALSE(E(dilation(E.R, u)));
  }
  ProfileFunction open = linear_profile(1.0, 1.0);
  open.a = -0.5;
  open.b = 0.5;
  CHECK_THROWS(profile_set(open));
}

TEST_CASE("star-shapedness checks", "[hull_init]")
{
  CHECK_FALSE(check_S1(gauge_ball_set()));
  CHECK_FALSE(check_S1(profile_set(quartic_profile())));
  const auto v = check_S1(shell_set());
  REQUIRE(v);
  CHECK_FALSE(shell_set()(dilation(v->mu, v->point)));
  CHECK_THROWS_AS(minkowski_u0(shell_set(), Point{0.9, 0.0, 0.0}), S1Violation);

  const auto q = quartic_profile();
  std::vector<double> zs;
  for (int i = -20; i <= 20; ++i) { zs.push_back(i / 20.0); }
  CHECK_FALSE(check_profile_S1(q, {0.1, 0.5, 0.9}, zs));
  // a narrow dip at z = 0.5 breaks star-shapedness
  ProfileFunction dip;
  dip.g = [](double z) { return (1 - z * z) * (1.0 - 0.9 * std::exp(-200 * (z - 0.5) * (z - 0.5))); };
  dip.a = -1;
  dip.b = 1;
  const auto w = check_profile_S1(dip, {0.5, 0.9}, {0.6, 0.9});
  REQUIRE(w);
  CHECK(w->margin <= 0.0);
}

TEST_CASE("curvature condition of profiles", "[hull_init]")
{
  // at z = 0: g = 1, g' = 0, g'' = 2
  CHECK_THAT(check_profile_S2cond(quartic_profile(), 0.1, {0.0}), WithinAbs(0.75 - 0.1, 1e-15));
  // linear profile: g'' = 0
  CHECK_THAT(check_profile_S2cond(linear_profile(1.0, 1.0), 0.2, {-0.5, 0.5}), WithinAbs(0.8, 1e-15));
}

TEST_CASE("boundary curvature sampling of the gauge ball", "[hull_init]")
{
  S2Sampling plan;
  plan.n_alpha = 9;
  plan.n_theta = 12;
  plan.directions = 12;
  const auto rep = check_S2(gauge_ball_set(), 1.0, 1e-3, plan);
  CHECK(rep.margins.size() == 3);
  CHECK(rep.worst_margin > -1e-6);
  CHECK(rep.worst_margin == *std::min_element(rep.margins.begin(), rep.margins.end()));
  plan.radii = {0.5, 1.5};
  CHECK_THROWS(check_S2(gauge_ball_set(), 1.0, 1e-3, plan));
}

TEST_CASE("initial data", "[hull_init]")
{
  const auto E = gauge_ball_set();
  const auto init = build_initial(E);
  CHECK(init.c > 0.0);
  CHECK(init.rho > 0.0);
  CHECK(std::isfinite(init.C));
  std::mt19937_64 rng(23);
  for (int n = 0; n < 300; ++n) {
    const Point p = random_point(rng, 1.5);
    const double u = init.u_hat(p);
    if (std::abs(gauge(p) - 1.0) > 1e-6) { CHECK((u < 0.0) == E(p)); }
    CHECK(init.u0(p) == std::min(u, init.C));
    // coercive: at least U0 - 1
    CHECK(u >= gauge(p) * gauge(p) - 1.0 - 1e-9);
  }
  CHECK(init.u_hat(Point{}) == -0.5);
  CHECK(build_initial(E, 0.5).C == 0.5);
  CHECK_THROWS(build_initial(StarShapedSet{[](const Point &) { return false; }, 1.0, 1.0}));
}

TEST_CASE("sphere sampling and dilation sandwich", "[hull_init]")
{
  const auto pts = gauge_sphere_points(7, 10);
  CHECK(pts.size() == 5 * 10 + 2);
  for (const Point &p : pts) { CHECK_THAT(gauge(p), WithinAbs(1.0, 1e-14)); }
  CHECK_THAT(dilation_sandwich_scale(gauge_ball_set(), scaled_ball(1.1)), WithinRel(1.1, 1e-8));
  CHECK(dilation_sandwich_scale(profile_set(gauge_ball_gj(40)), gauge_ball_set()) < 1.1);
}
