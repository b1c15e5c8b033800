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
#include <vector>

#include "doctest.h"
#include "marketcomp/closedform.hpp"
#include "marketcomp/numerics.hpp"
#include "marketcomp/screening.hpp"

using namespace marketcomp;

TEST_CASE("quadratic solution at k = 1") {
  QuadraticSolution s = quadratic_optimal(WelfareWeight(1.0));
  CHECK(s.theta == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(s.omega == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.T == doctest::Approx(M_PI / 2).epsilon(1e-14));
  double m = std::exp(-M_PI / 2);
  CHECK(s.b == doctest::Approx(1.0 - m).epsilon(1e-14));
  CHECK(s.m == doctest::Approx(m).epsilon(1e-14));
  CHECK(s.cs == doctest::Approx(m / 2).epsilon(1e-13));
  CHECK(s.pi == doctest::Approx(m * (0.75 + M_PI / 8)).epsilon(1e-13));
  CHECK(s.cs == doctest::Approx(0.10393978).epsilon(1e-7));
  CHECK(s.pi == doctest::Approx(0.23754380).epsilon(1e-7));
  CHECK(s.phi(s.b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.Q(s.b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.A(s.b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(s.A(0.0)) <= 1e-12);
}

TEST_CASE("quadratic solution at k = 0.75") {
  QuadraticSolution s = quadratic_optimal(WelfareWeight(0.75));
  double T = 2.0 * std::sqrt(1.25 / 1.75) * std::atan(0.5 * std::sqrt(1.75 / 1.25));
  CHECK(s.T == doctest::Approx(T).epsilon(1e-13));
  CHECK(s.T == doctest::Approx(0.9030068291).epsilon(1e-10));
  CHECK(s.b == doctest::Approx(0.5946509897).epsilon(1e-10));
}

TEST_CASE("quadratic solution near k = 1/2") {
  QuadraticSolution s = quadratic_optimal(WelfareWeight(0.5 + 1e-9));
  CHECK(s.b < 1e-6);
  CHECK(s.cs < 1e-6);
  CHECK(s.pi == doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS(quadratic_optimal(WelfareWeight(0.5)), ValidationError);
}

TEST_CASE("quadratic welfare is continuous across the series switch") {
  double prev_cs = 0.0;
  for (int i = 1; i <= 400; ++i) {
    double k = 0.5 + 0.5 * std::pow(10.0, -8.0 + 8.0 * i / 400.0);
    QuadraticSolution s = quadratic_optimal(WelfareWeight(k));
    CHECK(s.cs >= prev_cs);
    prev_cs = s.cs;
    // Welfare identities from the quantile: CS = int (Q - phi) phi over the
    // interior, Pi = int phi^2 / 2 plus the atom.
    if (i % 40 == 0 && s.b > 1e-6) {
      double cs = quad([&](double u) { return (s.Q(u) - s.phi(u)) * s.phi(u); }, 0.0, s.b);
      double pi = quad([&](double u) { return 0.5 * s.phi(u) * s.phi(u); }, 0.0, s.b) +
                  0.5 * s.m;
      CHECK(s.cs == doctest::Approx(cs).epsilon(1e-9));
      CHECK(s.pi == doctest::Approx(pi).epsilon(1e-9));
    }
  }
}

TEST_CASE("quadratic market evaluates to its own payoffs") {
  const CostModel quad_cost = make_cost(CostKind::kQuadratic);
  for (double k : {0.6, 0.9}) {
    QuadraticSolution s = quadratic_optimal(WelfareWeight(k));
    PayoffPoint p = evaluate_market(s.market(2048), quad_cost);
    CHECK(p.cs == doctest::Approx(s.cs).epsilon(1e-6));
    CHECK(p.pi == doctest::Approx(s.pi).epsilon(1e-6));
  }
}

TEST_CASE("linear cost optimum") {
  LinearSolution a = linear_optimal(WelfareWeight(1.0), 0.0, 1.0);
  double e1 = std::exp(-1.0);
  CHECK(a.r == doctest::Approx(e1).epsilon(1e-14));
  CHECK(a.payoff.pi == doctest::Approx(e1).epsilon(1e-14));
  CHECK(a.payoff.cs == doctest::Approx(e1).epsilon(1e-14));

  LinearSolution b = linear_optimal(WelfareWeight(0.75), 0.0, 1.0);
  double r = std::exp(-2.0 / 3.0);
  CHECK(b.r == doctest::Approx(r).epsilon(1e-14));
  CHECK(b.payoff.pi == doctest::Approx(r).epsilon(1e-14));
  CHECK(b.payoff.cs == doctest::Approx(r * 2.0 / 3.0).epsilon(1e-14));
  CHECK(b.payoff.cs == doctest::Approx(0.342278).epsilon(1e-6));

  LinearSolution c = linear_optimal(WelfareWeight(0.4), 0.5, 2.0);
  CHECK(c.r == 1.0);
  CHECK(c.market.lowest() == 1.0);
  CHECK(c.V == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(c.payoff.pi == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(linear_optimal(WelfareWeight(1.0), 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(linear_optimal(WelfareWeight(1.0), 0.0, 0.0), ValidationError);
}

TEST_CASE("linear market makes its price seller-optimal") {
  for (double k : {0.55, 0.75, 0.9, 1.0}) {
    for (auto [m, qbar] : std::vector<std::pair<double, double>>{{0.0, 1.0}, {0.5, 2.0}, {0.2, 0.7}}) {
      LinearSolution s = linear_optimal(WelfareWeight(k), m, qbar);
      PostedPrice p = posted_price_optimum(s.market, m, qbar);
      CHECK(p.r == doctest::Approx(s.r).epsilon(1e-9));
      CHECK(p.payoff.pi == doctest::Approx(s.payoff.pi).epsilon(1e-9));
      CHECK(p.payoff.cs == doctest::Approx(s.payoff.cs).epsilon(1e-9));
      CHECK(s.V == doctest::Approx(k * s.payoff.cs + (1 - k) * s.payoff.pi).epsilon(1e-12));
    }
  }
}

TEST_CASE("linear boundary") {
  CHECK(linear_boundary(std::exp(-1.0), 0.0, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(linear_boundary(1.0, 0.0, 1.0) == 0.0);
  CHECK(linear_boundary(0.5, 0.0, 1.0) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(linear_boundary(0.0, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(linear_boundary(1.5, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(linear_boundary(-0.1, 0.0, 1.0), ValidationError);

  // Concave on (0, A] with its peak at A / e.
  for (auto [m, qbar] : std::vector<std::pair<double, double>>{{0.0, 1.0}, {0.5, 2.0}}) {
    double A = qbar * (1.0 - m);
    const int n = 2000;
    double best = -1.0, arg = 0.0;
    for (int i = 1; i < n; ++i) {
      double h = A / n;
      double x = i * h;
      double f0 = linear_boundary(x - h, m, qbar), f1 = linear_boundary(x, m, qbar),
             f2 = linear_boundary(x + h, m, qbar);
      CHECK(f0 - 2 * f1 + f2 <= 1e-12);
      if (f1 > best) {
        best = f1;
        arg = x;
      }
    }
    CHECK(arg == doctest::Approx(A / std::exp(1.0)).epsilon(1.0 / n));
    CHECK(linear_boundary(A / std::exp(1.0), m, qbar) == doctest::Approx(A / std::exp(1.0)));
  }
}

TEST_CASE("elasticity solution at eta = 2 matches the quadratic case") {
  for (double k : {0.6, 0.75, 0.9, 1.0}) {
    ElasticitySolution e = elasticity_optimal(WelfareWeight(k), 2.0);
    QuadraticSolution q = quadratic_optimal(WelfareWeight(k));
    CHECK(e.T() == doctest::Approx(q.T).epsilon(1e-8));
    CHECK(e.b() == doctest::Approx(q.b).epsilon(1e-8));
    CHECK(e.vlow() == doctest::Approx(q.Q(0.0)).epsilon(1e-8));
    for (double u : {0.1, 0.3, 0.5}) {
      if (u < q.b) CHECK(e.Q(u) == doctest::Approx(q.Q(u)).epsilon(1e-7));
    }
  }
  ElasticitySolution e1 = elasticity_optimal(WelfareWeight(1.0), 2.0);
  CHECK(e1.T() == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK_THROWS_AS(elasticity_optimal(WelfareWeight(1.0), 1.0), ValidationError);
}

TEST_CASE("elasticity comparative statics in eta") {
  std::vector<double> etas{1.5, 2.0, 3.0, 5.0};
  std::vector<ElasticitySolution> sols;
  for (double eta : etas) sols.push_back(elasticity_optimal(WelfareWeight(1.0), eta));
  std::vector<double> values;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    CostModel cost = make_cost(CostKind::kElasticity, {etas[i]});
    values.push_back(evaluate_market(sols[i].market(1024), cost).cs);
  }
  for (std::size_t i = 1; i < etas.size(); ++i) {
    CHECK(sols[i].b() < sols[i - 1].b());
    CHECK(sols[i].vlow() < sols[i - 1].vlow());
    CHECK(values[i] > values[i - 1]);
  }
}

TEST_CASE("elasticity tables are self-consistent") {
  ElasticitySolution e = elasticity_optimal(WelfareWeight(0.8), 3.0);
  for (double z : {0.0, 0.1, 0.3, e.lambda()}) {
    double zz = e.z_of_u(-std::expm1(-e.t_of_z(z)));
    CHECK(zz == doctest::Approx(z).epsilon(1e-8));
  }
  CHECK(e.t_of_z(e.lambda()) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e.t_of_z(0.0) == doctest::Approx(e.T()).epsilon(1e-12));
  CHECK(e.Qhat(e.lambda()) == doctest::Approx(e.vlow()).epsilon(1e-12));
  CHECK(e.Q(e.b()) == doctest::Approx(1.0).epsilon(1e-9));
  QuantileFn q = e.market(256);
  CHECK(q.top_mass() == doctest::Approx(1.0 - e.b()).epsilon(1e-12));
}
