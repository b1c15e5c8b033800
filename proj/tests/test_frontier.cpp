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
#include <vector>

#include "doctest.h"
#include "marketcomp/closedform.hpp"
#include "marketcomp/frontier.hpp"
#include "marketcomp/screening.hpp"

using namespace marketcomp;

namespace {

const CostModel kQuad = make_cost(CostKind::kQuadratic);

QuantileFn quadratic_market(double k) { return quadratic_optimal(WelfareWeight(k)).market(); }

}  // namespace

TEST_CASE("frontier endpoints") {
  FrontierCurve c = trace_frontier(kQuad, {1.0, 0.5}, FrontierEngine::kClosedForm);
  REQUIRE(c.rows.size() == 2);
  CHECK(c.rows[0].k == 0.5);
  CHECK(c.rows[0].cs == 0.0);
  CHECK(c.rows[0].pi == doctest::Approx(0.5));
  double m = std::exp(-M_PI / 2);
  CHECK(c.rows[1].cs == doctest::Approx(0.103940).epsilon(1e-5));
  CHECK(c.rows[1].pi == doctest::Approx(m * (0.75 + M_PI / 8)).epsilon(1e-12));

  CostModel lin = make_cost(CostKind::kLinear, {0.0, 1.0});
  FrontierCurve l = trace_frontier(lin, {0.5, 1.0}, FrontierEngine::kLinear);
  CHECK(l.rows[0].cs == doctest::Approx(0.0));
  CHECK(l.rows[0].pi == doctest::Approx(1.0));
  CHECK(l.rows[1].cs == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(l.rows[1].pi == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("engine and grid validation") {
  CostModel lin = make_cost(CostKind::kLinear, {0.0, 1.0});
  CHECK_THROWS_AS(trace_frontier(lin, {0.7}, FrontierEngine::kFbvp), ValidationError);
  CHECK_THROWS_AS(trace_frontier(kQuad, {0.7}, FrontierEngine::kLinear), ValidationError);
  CHECK_THROWS_AS(trace_frontier(parse_cost("generic:0.5"), {0.7}, FrontierEngine::kClosedForm),
                  ValidationError);
  CHECK_THROWS_AS(trace_frontier(kQuad, {0.4}, FrontierEngine::kClosedForm), ValidationError);
  CHECK_THROWS_AS(parse_engine("spline"), ValidationError);

  std::vector<double> g = parse_k_grid("0.5:1.0:0.1");
  REQUIRE(g.size() == 6);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(parse_k_grid("0.5:1.0:0.005").size() == 101);
  CHECK(parse_k_grid("0.6,0.9").size() == 2);
  CHECK_THROWS_AS(parse_k_grid("0.5:x:0.1"), ValidationError);
  CHECK_THROWS_AS(parse_k_grid("0.5:1:0"), ValidationError);
}

TEST_CASE("frontier rows are monotone in k") {
  std::vector<double> ks;
  for (int i = 0; i <= 20; ++i) ks.push_back(0.5 + 0.025 * i);
  for (const CostModel& cost : {kQuad, make_cost(CostKind::kElasticity, {3.0})}) {
    FrontierCurve c = trace_frontier(cost, ks, FrontierEngine::kClosedForm);
    for (std::size_t i = 2; i < c.rows.size(); ++i) {
      const FrontierRow& a = c.rows[i - 1];
      const FrontierRow& r = c.rows[i];
      CHECK(r.b > a.b);
      CHECK(r.cs > a.cs);
      CHECK(r.pi < a.pi);
      CHECK(r.ts < a.ts);
    }
  }
  FrontierCurve f = trace_frontier(kQuad, {0.8, 0.6}, FrontierEngine::kFbvp);
  CHECK(f.rows[0].k == 0.6);
  CHECK(f.rows[1].b > f.rows[0].b);
  CHECK(f.rows[1].cs > f.rows[0].cs);
  CHECK(f.rows[1].pi < f.rows[0].pi);
  CHECK(f.rows[1].ts < f.rows[0].ts);
}

TEST_CASE("fbvp and closed-form engines agree") {
  std::vector<double> ks{0.55, 0.7, 0.85, 1.0};
  FrontierCurve a = trace_frontier(kQuad, ks, FrontierEngine::kClosedForm);
  FrontierCurve b = trace_frontier(kQuad, ks, FrontierEngine::kFbvp);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(b.rows[i].b == doctest::Approx(a.rows[i].b).epsilon(1e-8));
    CHECK(b.rows[i].cs == doctest::Approx(a.rows[i].cs).epsilon(1e-7));
    CHECK(b.rows[i].pi == doctest::Approx(a.rows[i].pi).epsilon(1e-7));
    CHECK(b.rows[i].vlow == doctest::Approx(a.rows[i].vlow).epsilon(1e-8));
  }
}

TEST_CASE("radial hull") {
  FrontierCurve c = trace_frontier(kQuad, {0.5, 0.75, 1.0}, FrontierEngine::kClosedForm);
  std::vector<PayoffPoint> pts = radial_hull(c, {0.0, 0.5, 1.0});
  REQUIRE(pts.size() == 9);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(pts[3 * r].cs == 0.0);
    CHECK(pts[3 * r].pi == 0.0);
    CHECK(pts[3 * r + 2].cs == c.rows[r].cs);
    CHECK(pts[3 * r + 2].pi == c.rows[r].pi);
  }
  CHECK(pts[7].cs == doctest::Approx(0.051970).epsilon(1e-5));
  CHECK(pts[7].pi == doctest::Approx(0.118772).epsilon(1e-5));
  CHECK_THROWS_AS(radial_hull(c, {1.5}), ValidationError);

  QuantileFn g = quadratic_market(1.0);
  PayoffPoint full = evaluate_market(g, kQuad);
  for (double theta : {0.25, 0.5, 0.9}) {
    PayoffPoint p = evaluate_market(QuantileFn::radial(g, theta), kQuad);
    CHECK(std::fabs(p.cs - theta * full.cs) <= 1e-8);
    CHECK(std::fabs(p.pi - theta * full.pi) <= 1e-8);
  }
}

TEST_CASE("segmentation examples") {
  QuantileFn g = quadratic_market(1.0);
  PayoffPoint whole = evaluate_market(g, kQuad);
  Segmentation none = segment_and_evaluate(g, {}, kQuad);
  CHECK(none.average.cs == doctest::Approx(whole.cs).epsilon(1e-14));
  CHECK(none.average.pi == doctest::Approx(whole.pi).epsilon(1e-14));

  Segmentation d = segment_and_evaluate(QuantileFn::point_mass(1.0), {0.3, 0.7}, kQuad);
  CHECK(d.average.cs == doctest::Approx(0.0));
  CHECK(d.average.pi == doctest::Approx(0.5));

  double b = quadratic_optimal(WelfareWeight(1.0)).b;
  Segmentation s = segment_and_evaluate(g, {b}, kQuad);
  REQUIRE(s.per_segment.size() == 2);
  CHECK(s.mass[0] == doctest::Approx(b));
  CHECK(s.average.pi >= whole.pi - 1e-9);
  CHECK(s.average.cs < whole.cs - 1e-4);

  CHECK_THROWS_AS(segment_and_evaluate(g, {0.5, 0.5}, kQuad), ValidationError);
  CHECK_THROWS_AS(segment_and_evaluate(g, {0.0}, kQuad), ValidationError);
}

TEST_CASE("segmenting an optimal market never helps buyers") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  for (double k : {0.6, 0.8, 1.0}) {
    QuantileFn g = quadratic_market(k);
    PayoffPoint whole = evaluate_market(g, kQuad);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<double> cuts{unif(rng), unif(rng), unif(rng)};
      std::sort(cuts.begin(), cuts.end());
      Segmentation s = segment_and_evaluate(g, cuts, kQuad);
      CHECK(s.average.pi >= whole.pi - 1e-9);
      CHECK(s.average.cs <= whole.cs + 1e-9);
    }
  }
}

TEST_CASE("convex order examples") {
  QuantileFn u = QuantileFn::uniform(0, 1);
  QuantileFn half = QuantileFn::point_mass(0.5);
  CHECK(convex_order_check(u, u));
  CHECK_FALSE(convex_order_check(half, u));
  CHECK(convex_order_check(u, half));
  CHECK_FALSE(convex_order_check(u, QuantileFn::point_mass(0.6)));
}

TEST_CASE("finite-support spreads") {
  QuadraticSolution sol = quadratic_optimal(WelfareWeight(1.0));
  QuantileFn g = sol.market();
  QuantileFn f2 = mps_finite(g, 2, 0.1);
  REQUIRE(f2.segments().size() == 2);
  CHECK(f2.lowest() == 0.1);
  CHECK(f2.segments()[1].v0 == 1.0);
  CHECK(std::fabs(f2.mean() - g.mean()) <= 1e-10);

  QuantileFn f3 = mps_finite(g, 3, 0.1);
  REQUIRE(f3.segments().size() == 3);
  CHECK(f3.segments()[1].v0 == doctest::Approx(g(sol.b / 2)).epsilon(1e-15));

  PayoffPoint pg = evaluate_market(g, kQuad);
  for (int n : {2, 3, 5, 12, 40}) {
    QuantileFn f = mps_finite(g, n, 0.1);
    CHECK(f.segments().size() == static_cast<std::size_t>(n));
    CHECK(f.top_mass() >= 1.0 - sol.b);
    CHECK(std::fabs(f.mean() - g.mean()) <= 1e-10);
    CHECK(convex_order_check(f, g));
    for (double k : {0.75, 0.9}) {
      QuantileFn gk = quadratic_market(k);
      PayoffPoint pk = evaluate_market(gk, kQuad);
      CHECK(evaluate_market(mps_finite(gk, n, 0.05), kQuad).weighted(k) <= pk.weighted(k) + 1e-9);
    }
    // Spreading helps the seller, but the optimum stays weakly better for
    // its own weight.
    PayoffPoint pf = evaluate_market(f, kQuad);
    CHECK(pf.pi >= pg.pi - 1e-9);
    CHECK(pf.cs <= pg.cs + 1e-9);
  }
  CHECK_THROWS_AS(mps_finite(g, 3, sol.Q(0.0)), ValidationError);
  CHECK_THROWS_AS(mps_finite(g, 1, 0.1), ValidationError);
  CHECK_THROWS_AS(mps_finite(QuantileFn::uniform(0.2, 1.0), 3, 0.1), ValidationError);
}

TEST_CASE("smooth spreads") {
  QuadraticSolution sol = quadratic_optimal(WelfareWeight(0.8));
  QuantileFn g = sol.market();
  PayoffPoint pg = evaluate_market(g, kQuad);
  QuantileFn f = mps_smooth(g, 0.05, 4096);
  CHECK(f.lowest() == 0.05);
  CHECK(f.top_mass() == doctest::Approx(1.0 - sol.b).epsilon(1e-12));
  CHECK(std::fabs(f.mean() - g.mean()) <= 1e-6);
  CHECK(convex_order_check(f, g));
  PayoffPoint pf = evaluate_market(f, kQuad);
  CHECK(pf.weighted(0.8) <= pg.weighted(0.8) + 1e-9);
  CHECK_THROWS_AS(mps_smooth(g, 0.9, 64), ValidationError);
}
