#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hflow/fields.hpp"
#include "hflow/hcalc.hpp"

using namespace hflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("finite differences agree with analytic derivatives", "[hcalc]")
{
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const ScalarField &f : {field_positive_example(), field_rot_profile(quartic_profile()), field_neg_z4()}) {
    const ScalarField nf = f.numeric_only();
    for (int n = 0; n < 100; ++n) {
      const Point p{u(rng), u(rng), 0.9 * u(rng)};
      const Vec2 ga = hgrad(f, p), gn = hgrad(nf, p);
      CHECK_THAT(gn.x, WithinAbs(ga.x, 1e-5));
      CHECK_THAT(gn.y, WithinAbs(ga.y, 1e-5));
      const HessianSym2 ha = hhess(f, p), hn = hhess(nf, p);
      CHECK_THAT(hn.a11, WithinAbs(ha.a11, 2e-3));
      CHECK_THAT(hn.a12, WithinAbs(ha.a12, 2e-3));
      CHECK_THAT(hn.a22, WithinAbs(ha.a22, 2e-3));
    }
  }
}

TEST_CASE("a field of z alone has vanishing level-set operator", "[hcalc]")
{
  const ScalarField f = field_neg_z4();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 200; ++n) {
    const Point p{u(rng), u(rng), u(rng)};
    const auto v = evaluate_operators(f, p);
    CHECK_THAT(v.L, WithinAbs(0.0, 1e-12));
    CHECK_THAT(v.L_star, WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("characteristic points use the Hessian eigenvalues", "[hcalc]")
{
  const ScalarField f = field_positive_example();
  const auto v = evaluate_operators(f, {0.0, 0.0, 0.0});
  CHECK(v.characteristic);
  CHECK(v.L == 0.0);
  CHECK(v.L_star == 2.0);
  // x = 0, z = 1: grad = (0, 0), H = [[2, 1], [1, 0]]
  const auto w = evaluate_operators(f, {0.0, 1.0, 1.0});
  CHECK(w.characteristic);
  CHECK_THAT(w.L, WithinAbs(1.0 - std::sqrt(2.0), 1e-15));
  CHECK_THAT(w.L_star, WithinAbs(1.0 + std::sqrt(2.0), 1e-15));
  CHECK_FALSE(evaluate_operators(f, {0.5, 0.0, 0.0}).characteristic);
}

TEST_CASE("numeric characteristic threshold scales with the Hessian", "[hcalc]")
{
  OperatorConfig cfg;
  CHECK(is_characteristic({1e-9, 0.0}, {1.0, 0.0, 1.0}, false, cfg));
  CHECK_FALSE(is_characteristic({1e-7, 0.0}, {1.0, 0.0, 1.0}, false, cfg));
  CHECK(is_characteristic({5e-7, 0.0}, {100.0, 0.0, 1.0}, false, cfg));
  CHECK_FALSE(is_characteristic({1e-300, 0.0}, {1.0, 0.0, 1.0}, true, cfg));
  CHECK(is_characteristic({0.0, 0.0}, {1.0, 0.0, 1.0}, true, cfg));
}

TEST_CASE("L at a non-characteristic point is the tangential second derivative", "[hcalc]")
{
  // f = x^2 + 3 y^2 + y: grad (2x, 6y + 1), H = diag(2, 6); at the origin eta = (-1, 0)
  ScalarField f;
  f.eval = [](const Point &p) { return p.x * p.x + 3 * p.y * p.y + p.y; };
  CHECK_THAT(op_L(f, {}), WithinAbs(2.0, 1e-4));
  CHECK_THAT(op_L_star(f, {}), WithinAbs(2.0, 1e-4));
}

TEST_CASE("closed forms for surfaces of revolution match the general operator", "[hcalc][property]")
{
  const auto g = quartic_profile();
  const ScalarField f = field_rot_profile(g);
  RhoZFunction F;
  F.F = [g](double rho, double z) { return rho - g.value(z); };
  F.F_rho = [](double, double) { return 1.0; };
  F.F_z = [g](double, double z) { return -g.d1(z); };
  F.F_rhorho = [](double, double) { return 0.0; };
  F.F_rhoz = [](double, double) { return 0.0; };
  F.F_zz = [g](double, double z) { return -g.d2(z); };
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ur(0.05, 1.2), ut(0.0, 6.28), uz(-0.95, 0.95);
  for (int n = 0; n < 200; ++n) {
    const double r = ur(rng), t = ut(rng), z = uz(rng);
    const Point p{r * std::cos(t), r * std::sin(t), z};
    const double l = op_L(f, p);
    CHECK_THAT(op_L_rotsym(g, r, z), WithinAbs(l, 1e-12));
    CHECK_THAT(op_L_Frhoz(F, r * r, z), WithinAbs(l, 1e-12));
    CHECK_THAT(op_L(f.numeric_only(), p), WithinAbs(l, 1e-3));
  }
  CHECK(op_L_rotsym(g, 0.0, 0.3) == 2.0);
  RhoZFunction flat = F;
  flat.F_rho = [](double, double) { return 0.0; };
  flat.F_z = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(op_L_Frhoz(flat, 1.0, 0.0), std::domain_error);
}

TEST_CASE("horizontal curvature operator", "[hcalc]")
{
  CHECK(op_F({1.0, 0.0}, {3.0, 0.0, 5.0}) == -5.0);
  CHECK(op_F({0.0, 2.0}, {3.0, 0.0, 5.0}) == -3.0);
  CHECK_THAT(op_F({1.0, 1.0}, {1.0, 1.0, 1.0}), WithinAbs(0.0, 1e-15));
  CHECK_THROWS(op_F({0.0, 0.0}, {1.0, 0.0, 1.0}));
}

TEST_CASE("limsup estimate", "[hcalc]")
{
  const auto pts = gauge_ball_samples(64);
  REQUIRE(pts.size() == 64);
  for (const Point &q : pts) { CHECK(gauge(q) < 1.0); }
  CHECK(gauge_ball_samples(64)[10].x == pts[10].x);

  const ScalarField f = field_rot_profile(quartic_profile());
  const Point p{0.4, 0.3, 0.2};
  const auto est = op_L_bar(f, p);
  REQUIRE(est.per_radius.size() == 3);
  CHECK(est.value >= op_L(f, p));
  CHECK_THAT(est.value, WithinAbs(op_L(f, p), 1e-2));

  // upper limit at a characteristic point picks up nearby non-characteristic values
  const ScalarField pe = field_positive_example();
  CHECK(op_L_bar(pe, {}).value > op_L(pe, {}));

  OperatorConfig bad;
  bad.limsup_radii = {1e-2, 1e-1};
  CHECK_THROWS(op_L_bar(f, p, bad));
}

TEST_CASE("non-finite values are reported", "[hcalc]")
{
  ScalarField f;
  f.eval = [](const Point &p) { return std::log(p.x); };
  CHECK_THROWS_AS(hgrad(f, {-1.0, 0.0, 0.0}), std::domain_error);
}
