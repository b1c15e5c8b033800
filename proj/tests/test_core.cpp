// Copyright 2026 The marketcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"
#include "marketcomp/config.hpp"
#include "marketcomp/cost.hpp"
#include "marketcomp/numerics.hpp"
#include "marketcomp/piecewise.hpp"
#include "marketcomp/quantile.hpp"

using namespace marketcomp;

TEST_CASE("make_cost instantiates the built-in technologies") {
  CostModel quad = make_cost(CostKind::kQuadratic);
  CHECK(quad.qbar() == 1.0);
  CHECK(quad.c(1.0) == doctest::Approx(0.5));
  CHECK(quad.cp(quad.qbar()) == doctest::Approx(1.0).epsilon(1e-10));

  CostModel el = make_cost(CostKind::kElasticity, {3.0});
  CHECK(el.qbar() == 1.0);
  CHECK(el.c(0.5) == doctest::Approx(0.125 / 3.0));
  CHECK(el.cp_inverse(0.25) == doctest::Approx(0.5));

  CHECK_THROWS_AS(make_cost(CostKind::kElasticity, {1.0}), ValidationError);
  CHECK_THROWS_AS(make_cost(CostKind::kElasticity, {0.5}), ValidationError);
  CHECK_THROWS_AS(make_cost(CostKind::kLinear, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(make_cost(CostKind::kLinear, {0.5, 0.0}), ValidationError);
  CHECK_THROWS_AS(make_cost(CostKind::kQuadratic, {1.0}), ValidationError);
}

TEST_CASE("generic polynomial costs are validated on a grid") {
  // c = q^2 / 4 + q^3 / 6: c' = q / 2 + q^2 / 2 reaches 1 at q = 1.
  CostModel g = make_cost(CostKind::kGeneric, {0, 0, 0.25, 1.0 / 6.0});
  CHECK(g.qbar() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.cp(g.qbar()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(g.cp_inverse(g.cp(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
  // c'' < 0 near the top.
  CHECK_THROWS_AS(make_cost(CostKind::kGeneric, {0, 0, 1.0, -0.4}), ValidationError);
  // c'(0) != 0.
  CHECK_THROWS_AS(make_cost(CostKind::kGeneric, {0, 0.1, 0.5}), ValidationError);
  // -q c'''/c'' = 2 at every q: curvature bound fails.
  CHECK_THROWS_AS(make_cost(CostKind::kGeneric, {0, 0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("parse_cost round-trips describe()") {
  for (const char* spec : {"quadratic", "elasticity:3", "linear:0.5,2", "generic:0.25,0.16666666666666666"}) {
    CostModel c = parse_cost(spec);
    CHECK(parse_cost(c.describe()).describe() == c.describe());
  }
  CHECK_THROWS_AS(parse_cost("cubic"), ValidationError);
  CHECK_THROWS_AS(parse_cost("elasticity:x"), ValidationError);
}

TEST_CASE("curvature bound holds on the log grid") {
  for (const CostModel& c : {make_cost(CostKind::kQuadratic),
                             make_cost(CostKind::kElasticity, {1.5}),
                             make_cost(CostKind::kElasticity, {5.0}),
                             make_cost(CostKind::kGeneric, {0, 0, 0.25, 1.0 / 6.0})}) {
    CHECK(max_curvature_ratio(c, 1000) < 2.0);
    double prev = -1.0;
    for (int i = 1; i <= 1000; ++i) {
      double q = c.qbar() * i / 1000.0;
      CHECK(c.cpp(q) > 0.0);
      CHECK(c.cp(q) > prev);
      prev = c.cp(q);
    }
  }
}

TEST_CASE("integrate_piecewise examples") {
  Piecewise one({constant_segment(0, 1, 1.0)});
  CHECK(integrate_piecewise(one, 0, 1) == doctest::Approx(1.0));
  Piecewise lin({linear_segment(0, 1, 0.0, 1.0)});
  CHECK(integrate_piecewise(lin, 0, 1) == doctest::Approx(0.5));
  Piecewise er({analytic_segment(0, 0.5, equal_revenue_form(0.5)),
                constant_segment(0.5, 1, 1.0)});
  CHECK(integrate_piecewise(er, 0, 0.5) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(integrate_piecewise(er, 0, 0.5) == doctest::Approx(0.346574).epsilon(1e-6));
  CHECK_THROWS_AS(integrate_piecewise(er, -0.1, 0.5), ValidationError);
}

TEST_CASE("integration is additive and agrees with quadrature") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  LaurentForm f{1.3, -2, {0.02, -0.1, 0.4, 0.3}};
  Piecewise pw({linear_segment(0, 0.3, 0.1, 0.2), analytic_segment(0.3, 0.8, f),
                constant_segment(0.8, 1, 0.9)});
  for (int i = 0; i < 200; ++i) {
    double a = unif(rng), b = unif(rng), m = unif(rng);
    if (a > b) std::swap(a, b);
    m = a + (b - a) * m;
    CHECK(pw.integrate(a, b) ==
          doctest::Approx(pw.integrate(a, m) + pw.integrate(m, b)).epsilon(1e-12));
  }
  double oracle = quad([&](double u) { return f.eval(u); }, 0.3, 0.8, 1e-14);
  CHECK(pw.integrate(0.3, 0.8) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("Laurent virtual value and affine maps match direct evaluation") {
  LaurentForm f{1.2, -1, {0.05, 0.3, 0.2}};
  LaurentForm phi = f.virtual_value();
  for (double u : {0.0, 0.2, 0.55, 0.9}) {
    double h = 1e-6;
    double deriv = (f.eval(u + h) - f.eval(u - h)) / (2 * h);
    CHECK(phi.eval(u) == doctest::Approx(f.eval(u) - (1 - u) * deriv).epsilon(1e-8));
    CHECK(f.derivative(u) == doctest::Approx(deriv).epsilon(1e-8));
  }
  // Equal-revenue: virtual value is the shift.
  LaurentForm er = equal_revenue_form(0.3, 0.2);
  LaurentForm er_phi = er.virtual_value();
  CHECK(er_phi.eval(0.4) == doctest::Approx(0.2));
  LaurentForm g = f.affine(0.25, 0.5);
  for (double u : {0.0, 0.3, 0.7}) {
    CHECK(g.eval(0.25 + 0.5 * u) == doctest::Approx(f.eval(u)).epsilon(1e-13));
  }
}

TEST_CASE("QuantileFn validation and evaluation conventions") {
  QuantileFn two = QuantileFn::steps({0, 0.5, 1}, {0.3, 1.0});
  CHECK(two(0.5) == 0.3);  // left-continuous
  CHECK(two.right_limit(0.5) == 1.0);
  CHECK(two(0.0) == 0.3);
  CHECK(two.lowest() == 0.3);
  CHECK(two.top_mass() == doctest::Approx(0.5));
  CHECK(two.rank_of(0.5) == 0.5);
  CHECK(two.rank_of(0.3) == 0.0);
  CHECK(two.mean() == doctest::Approx(0.65));

  CHECK_THROWS_AS(QuantileFn::steps({0, 0.5, 1}, {0.8, 0.3}), ValidationError);
  CHECK_THROWS_AS(QuantileFn::steps({0, 0.5, 1}, {0.3, 1.2}), ValidationError);
  CHECK_THROWS_AS(QuantileFn(std::vector<Segment>{constant_segment(0, 0.6, 0.3)}),
                  ValidationError);
  CHECK_THROWS_AS(QuantileFn(std::vector<Segment>{constant_segment(0, 0.5, 0.3),
                                                  constant_segment(0.6, 1, 0.4)}),
                  ValidationError);
  // A pole inside the range.
  CHECK_THROWS_AS(QuantileFn(std::vector<Segment>{
                      analytic_segment(0, 1, equal_revenue_form(0.1, 0.0, 0.9))}),
                  ValidationError);
}

TEST_CASE("QuantileFn is nondecreasing on a dense grid") {
  QuantileFn q(std::vector<Segment>{
      analytic_segment(0, 0.6, equal_revenue_form(0.2, 0.1)),
      linear_segment(0.6, 0.8, 0.7, 0.9), constant_segment(0.8, 1, 1.0)});
  double prev = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    double v = q(i / 10000.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("bands and radial mixtures") {
  QuantileFn u = QuantileFn::uniform(0, 1);
  QuantileFn b = u.band(0.2, 0.6);
  CHECK(b(0.0) == doctest::Approx(0.2));
  CHECK(b(1.0) == doctest::Approx(0.6));
  CHECK(b.mean() == doctest::Approx(0.4));

  QuantileFn er(std::vector<Segment>{
      analytic_segment(0, 0.5, equal_revenue_form(0.5)), constant_segment(0.5, 1, 1.0)});
  QuantileFn eb = er.band(0.1, 0.4);
  CHECK(eb(0.5) == doctest::Approx(er(0.25)).epsilon(1e-13));
  CHECK(eb.mean() == doctest::Approx(er.integral(0.1, 0.4) / 0.3).epsilon(1e-12));

  QuantileFn mix = QuantileFn::radial(er, 0.25);
  CHECK(mix(0.7) == 0.0);
  CHECK(mix(0.75 + 0.25 * 0.3) == doctest::Approx(er(0.3)).epsilon(1e-13));
  CHECK(mix.mean() == doctest::Approx(0.25 * er.mean()).epsilon(1e-12));
}

TEST_CASE("tolerance overrides") {
  Tolerances t;
  t.apply("abs", "1e-12");
  t.apply("menu_grid", "64");
  CHECK(t.abs == 1e-12);
  CHECK(t.menu_grid == 64);
  CHECK_THROWS_AS(t.apply("nope", "1"), ValidationError);
  CHECK_THROWS_AS(t.apply("abs", "-1"), ValidationError);
  CHECK_THROWS_AS(t.apply("menu_grid", "1.5"), ValidationError);
}
