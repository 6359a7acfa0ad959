#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hflow/fields.hpp"
#include "hflow/hull_init.hpp"

using namespace hflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
// X1 f, X2 f by central differences in Euclidean coordinates
Vec2 fd_grad(const ScalarField &f, const Point &p, double h = 1e-5)
{
  auto d = [&](double dx, double dy, double dz) {
    return (f({p.x + h * dx, p.y + h * dy, p.z + h * dz}) - f({p.x - h * dx, p.y - h * dy, p.z - h * dz})) / (2 * h);
  };
  const double fx = d(1, 0, 0), fy = d(0, 1, 0), fz = d(0, 0, 1);
  return {fx - 0.5 * p.y * fz, fy + 0.5 * p.x * fz};
}
}  // namespace

TEST_CASE("analytic horizontal gradients agree with Euclidean differences", "[fields][property]")
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ScalarField fields[] = {field_neg_z4(), field_positive_example(), field_rot_profile(quartic_profile()),
                                field_rot_profile(semiconcave_profile(2.0, 0.5))};
  for (const auto &f : fields) {
    REQUIRE(f.has_analytic_derivatives());
    for (int n = 0; n < 100; ++n) {
      const Point p{u(rng), u(rng), 0.9 * u(rng)};
      const Vec2 a = f.hgrad(p), b = fd_grad(f, p);
      CHECK_THAT(a.x, WithinAbs(b.x, 1e-7));
      CHECK_THAT(a.y, WithinAbs(b.y, 1e-7));
    }
  }
}

TEST_CASE("named field values", "[fields]")
{
  CHECK(field_neg_z4()({0.3, 0.2, 2.0}) == -16.0);
  CHECK(field_positive_example()({0.0, 0.0, 0.0}) == 0.0);
  CHECK_THAT(field_positive_example()({-0.1, 1.0, 1.0}), WithinAbs(0.01 + 0.95 * 0.95, 1e-15));
  CHECK_THAT(field_rot_profile(linear_profile(2.0, 1.0))({1.0, 1.0, 0.5}), WithinAbs(0.0, 1e-15));
}

TEST_CASE("profile functions and extensions", "[fields]")
{
  const auto q = quartic_profile();
  CHECK(q.value(1.0) == 0.0);
  CHECK(q.value(-1.0) == 0.0);
  CHECK(q.value(0.0) == 1.0);
  // g(1) + g'(1) t + g''(1) t^2 / 2 with t = 1/2
  CHECK_THAT(q.value(1.5), WithinAbs(0.0 - 6.0 * 0.5 - 11.0 * 0.25, 1e-14));
  CHECK_THROWS_AS(gauge_ball_profile().value(0.3), std::domain_error);

  ProfileFunction e = linear_profile(1.0, 0.0);
  e.a = -1.0;
  e.b = 1.0;
  e.extension = ProfileExtension::quadratic_taylor;
  CHECK(e.value(2.0) == 2.0);

  ProfileFunction s = semiconcave_profile(2.0);
  s.a = -1.0;
  s.b = 1.0;
  s.extension = ProfileExtension::quadratic_taylor;
  CHECK_THAT(s.value(3.0), WithinAbs(9.0, 1e-14));
  CHECK_THAT(s.d1(3.0), WithinAbs(6.0, 1e-14));
}

TEST_CASE("gauge ball approximations meet the gauge ball profile", "[fields]")
{
  const auto g = gauge_ball_gj(16);
  const auto base = gauge_ball_profile();
  const double m = 0.25 - 1.0 / 16;
  CHECK_THAT(g.value(0.1), WithinAbs(base.value(0.1), 1e-15));
  CHECK_THAT(g.value(m + 1e-9), WithinAbs(base.value(m), 1e-8));
  CHECK_THAT(g.value(g.b), WithinAbs(0.0, 1e-12));
  CHECK(g.a == -g.b);
  CHECK(g.b > m);
  CHECK(g.b < 0.5);
  CHECK_THROWS(gauge_ball_gj(4));
}
