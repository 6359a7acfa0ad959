#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hflow/hgroup.hpp"

using namespace hflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
Point random_point(std::mt19937_64 &rng, double s = 2.0)
{
  std::uniform_real_distribution<double> u(-s, s);
  return {u(rng), u(rng), u(rng)};
}

double dist(const Point &a, const Point &b) { return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)}); }
}  // namespace

TEST_CASE("product matches the coordinate formula", "[hgroup]")
{
  const Point p{1.0, 2.0, 3.0}, q{-0.5, 4.0, 1.5};
  const Point r = p * q;
  CHECK(r.x == 0.5);
  CHECK(r.y == 6.0);
  // 3 + 1.5 + 0.5 (1 * 4 - 2 * (-0.5))
  CHECK_THAT(r.z, WithinAbs(7.0, 1e-15));
}

TEST_CASE("group axioms on random points", "[hgroup][property]")
{
  std::mt19937_64 rng(7);
  for (int n = 0; n < 500; ++n) {
    const Point p = random_point(rng), q = random_point(rng), w = random_point(rng);
    CHECK(dist((p * q) * w, p * (q * w)) < 1e-13);
    CHECK(dist(p * group_inverse(p), Point{}) < 1e-15);
    CHECK(dist(group_inverse(p) * p, Point{}) < 1e-15);
    CHECK(dist(p * Point{}, p) == 0.0);
  }
}

TEST_CASE("dilations are automorphisms and the gauge is homogeneous", "[hgroup][property]")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ul(0.1, 3.0);
  for (int n = 0; n < 300; ++n) {
    const Point p = random_point(rng), q = random_point(rng);
    const double l = ul(rng);
    CHECK(dist(dilation(l, p * q), dilation(l, p) * dilation(l, q)) < 1e-12);
    CHECK_THAT(gauge(dilation(l, p)), WithinRel(l * gauge(p), 1e-13));
    CHECK_THAT(gauge(group_inverse(p)), WithinRel(gauge(p), 1e-15));
  }
}

TEST_CASE("gauge values", "[hgroup]")
{
  CHECK(gauge({}) == 0.0);
  CHECK_THAT(gauge({1.0, 0.0, 0.0}), WithinAbs(1.0, 1e-15));
  CHECK_THAT(gauge({0.0, 0.0, 0.25}), WithinAbs(1.0, 1e-15));
  // (3^2 + 4^2)^2 + 16 * 0 -> 5
  CHECK_THAT(gauge({3.0, 4.0, 0.0}), WithinAbs(5.0, 1e-14));
}

TEST_CASE("left metric is left invariant", "[hgroup][property]")
{
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const Point a = random_point(rng), p = random_point(rng), q = random_point(rng);
    CHECK_THAT(left_metric(a * p, a * q), WithinRel(left_metric(p, q), 1e-10));
  }
}

TEST_CASE("horizontal steps stay on the horizontal plane", "[hgroup]")
{
  std::mt19937_64 rng(5);
  for (int n = 0; n < 200; ++n) {
    const Point p = random_point(rng);
    const double th = std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
    const HorizontalDirection d{th};
    for (int sign : {1, -1}) {
      const Point q = horizontal_step(p, d, 0.3, sign);
      const Point expect = p * Point{sign * 0.3 * std::cos(th), sign * 0.3 * std::sin(th), 0.0};
      CHECK(dist(q, expect) < 1e-14);
      CHECK(is_horizontal(p, q));
      CHECK_THAT(left_metric(p, q), WithinAbs(0.3, 1e-12));
    }
  }
  CHECK_FALSE(is_horizontal({}, {0.0, 0.0, 0.1}));
}

TEST_CASE("direction angles cover a half turn", "[hgroup]")
{
  CHECK(direction_angle(0, 36) == 0.0);
  CHECK_THAT(direction_angle(18, 36), WithinAbs(std::numbers::pi / 2, 1e-15));
  CHECK(direction_angle(35, 36) < std::numbers::pi);
}
