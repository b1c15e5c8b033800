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

#include "marketcomp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "marketcomp/closedform.hpp"
#include "marketcomp/config.hpp"
#include "marketcomp/corpus.hpp"
#include "marketcomp/fbvp.hpp"
#include "marketcomp/frontier.hpp"
#include "marketcomp/inventory.hpp"
#include "marketcomp/ironing.hpp"
#include "marketcomp/numerics.hpp"
#include "marketcomp/oracle.hpp"
#include "marketcomp/screening.hpp"

namespace marketcomp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects checks for one criterion; the first failure is kept as detail.
class Ledger {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      detail_ = what;
    }
  }
  // |got - want| <= tol, tracking the worst ratio.
  void near(double got, double want, double tol, const std::string& what) {
    double err = std::fabs(got - want);
    worst_ = std::max(worst_, err / tol);
    measured_ = true;
    if (!(err <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: got %.12g want %.12g", what.c_str(), got, want);
      check(false, buf);
    }
  }
  bool pass() const { return pass_; }
  std::string detail() const {
    if (!pass_) return detail_;
    if (!measured_) return "all checks held";
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst error %.2g of tolerance", worst_);
    return buf;
  }

 private:
  bool pass_ = true;
  bool measured_ = false;
  double worst_ = 0.0;
  std::string detail_;
};

const CostModel& quad() {
  static const CostModel c = make_cost(CostKind::kQuadratic);
  return c;
}

std::vector<double> k_grid_055() {
  std::vector<double> ks;
  for (int i = 11; i <= 20; ++i) ks.push_back(i / 20.0);
  return ks;
}

void golden_quadratic(Ledger& L) {
  const double m = std::exp(-M_PI / 2);
  QuadraticSolution cf = quadratic_optimal(WelfareWeight(1.0));
  L.near(cf.b, 1 - m, 1e-12, "closed-form b");
  L.near(cf.cs, m / 2, 1e-12, "closed-form CS");
  L.near(cf.pi, m * (0.75 + M_PI / 8), 1e-12, "closed-form profit");
  auto t0 = Clock::now();
  FbvpSolution s = solve_optimal_market(quad(), WelfareWeight(1.0));
  double dt = seconds_since(t0);
  L.check(dt < 1.0, "fbvp took longer than 1 s");
  L.near(s.b, 1 - m, 1e-6, "fbvp b");
  L.near(s.cs, m / 2, 1e-6, "fbvp CS");
  L.near(s.pi, m * (0.75 + M_PI / 8), 1e-6, "fbvp profit");
  for (double k : {0.5, 0.75}) {
    t0 = Clock::now();
    FbvpSolution h = solve_optimal_market(quad(), WelfareWeight(k));
    L.check(seconds_since(t0) < 1.0, "fbvp took longer than 1 s");
    FrontierRow c = frontier_point(quad(), k, FrontierEngine::kClosedForm);
    L.near(h.cs, c.cs, 1e-6, "fbvp CS vs closed form");
    L.near(h.pi, c.pi, 1e-6, "fbvp profit vs closed form");
  }
  FrontierRow half = frontier_point(quad(), 0.5, FrontierEngine::kClosedForm);
  L.near(half.cs, 0.0, 1e-15, "k = 1/2 endpoint CS");
  L.near(half.pi, 0.5, 1e-15, "k = 1/2 endpoint profit");
}

void golden_linear(Ledger& L) {
  LinearSolution s = linear_optimal(WelfareWeight(1.0), 0.0, 1.0);
  const double e1 = std::exp(-1.0);
  L.near(s.r, e1, 1e-12, "r");
  L.near(s.payoff.cs, e1, 1e-12, "CS");
  L.near(s.payoff.pi, e1, 1e-12, "profit");
  PostedPrice p = posted_price_optimum(s.market, 0.0, 1.0);
  L.near(p.r, s.r, 1e-9, "posted price on G_1");
  L.near(p.payoff.cs, s.payoff.cs, 1e-9, "posted-price CS");
  L.near(p.payoff.pi, s.payoff.pi, 1e-9, "posted-price profit");
  for (auto [mm, qb] : {std::pair{0.0, 1.0}, std::pair{0.5, 2.0}}) {
    CostModel lin = make_cost(CostKind::kLinear, {mm, qb});
    FrontierCurve c = trace_frontier(lin, {0.5, 1.0}, FrontierEngine::kLinear);
    double a = qb * (1 - mm);
    L.near(c.rows[0].cs, 0.0, 1e-12, "corner B CS");
    L.near(c.rows[0].pi, a, 1e-12, "corner B profit");
    L.near(c.rows[1].cs, a * e1, 1e-12, "corner C CS");
    L.near(c.rows[1].pi, a * e1, 1e-12, "corner C profit");
  }
}

void golden_elasticity(Ledger& L) {
  for (double k : {0.6, 0.75, 0.9, 1.0}) {
    L.near(elasticity_optimal(WelfareWeight(k), 2.0).T(), quadratic_optimal(WelfareWeight(k)).T,
           1e-8, "T at eta = 2");
  }
  std::vector<double> etas{1.5, 2.0, 3.0, 5.0};
  double pb = INFINITY, pv = INFINITY, pw = -INFINITY;
  for (double eta : etas) {
    ElasticitySolution e = elasticity_optimal(WelfareWeight(1.0), eta);
    double v = evaluate_market(e.market(1024), make_cost(CostKind::kElasticity, {eta})).cs;
    L.check(e.b() < pb, "b not decreasing in eta");
    L.check(e.vlow() < pv, "lowest value not decreasing in eta");
    L.check(v > pw, "value not increasing in eta");
    pb = e.b();
    pv = e.vlow();
    pw = v;
  }
}

void comparative_statics(Ledger& L) {
  std::vector<double> ks = k_grid_055();
  std::vector<FbvpSolution> sols(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    sols[i] = solve_optimal_market(quad(), WelfareWeight(ks[i]));
  });
  const double slack = 1e-9;
  for (std::size_t i = 1; i < sols.size(); ++i) {
    const FbvpSolution& lo = sols[i - 1];
    const FbvpSolution& hi = sols[i];
    L.check(hi.b > lo.b, "b not increasing");
    L.check(hi.cs > lo.cs, "CS not increasing");
    L.check(hi.pi < lo.pi, "profit not decreasing");
    L.check(hi.cs + hi.pi < lo.cs + lo.pi, "total surplus not decreasing");
    QuantileFn qlo = to_market(lo), qhi = to_market(hi);
    bool strict = false;
    for (int j = 0; j < 1024; ++j) {
      double u = (j + 0.5) / 1024.0;
      L.check(qhi(u) <= qlo(u) + slack, "quantiles not ordered");
      strict = strict || qhi(u) < qlo(u) - slack;
    }
    L.check(strict, "quantiles coincide");
  }
}

void euler_lagrange(Ledger& L) {
  std::vector<double> ks = k_grid_055();
  for (const CostModel& cost :
       {quad(), make_cost(CostKind::kElasticity, {3.0}), parse_cost("generic:0.4,0.1")}) {
    for (double k : ks) {
      FbvpSolution s = solve_optimal_market(cost, WelfareWeight(k));
      L.near(s.el_residual_max, 0.0, 1e-5, "Euler-Lagrange residual");
      L.near(k * s.samples.back().A, (2 * k - 1) * cost.qbar(), 1e-8, "terminal identity");
    }
  }
}

void oracle_sandwich(Ledger& L) {
  auto t0 = Clock::now();
  for (double k : {0.5, 0.75, 1.0}) {
    OracleResult r = oracle_maximize(quad(), WelfareWeight(k), 8, 20, OracleMode::kExhaustive);
    FbvpSolution s = solve_optimal_market(quad(), WelfareWeight(k));
    double j = k * s.cs + (1 - k) * s.pi;
    L.check(r.J <= j + 1e-9, "oracle beats the solver");
    L.check(r.J >= j - 0.02, "oracle too far below the solver");
    if (k == 0.5) {
      for (double l : r.levels) L.check(l == 1.0, "k = 1/2 maximizer is not all ones");
    }
    if (k == 1.0) {
      L.check(r.levels.back() == 1.0, "no terminal block of ones");
      for (std::size_t i = 1; i < r.levels.size(); ++i) {
        if (r.levels[i] < 1.0) L.check(r.levels[i] > r.levels[i - 1], "interior tie");
      }
    }
  }
  L.check(seconds_since(t0) < 60.0, "oracle took longer than 60 s");
}

void ironing_pipeline(Ledger& L, std::uint64_t seed) {
  QuantileFn two = QuantileFn::steps({0, 0.5, 1}, {0.3, 1.0});
  Ironing ir = concavified_revenue(two);
  L.near(ir.phi(0.25), -0.4, 1e-12, "phi on the low step");
  L.near(ir.phi(0.75), 1.0, 1e-12, "phi on the high step");
  PayoffPoint p = evaluate_market(two, quad());
  L.near(p.cs, 0.0, 1e-12, "two-step CS");
  L.near(p.pi, 0.25, 1e-12, "two-step profit");
  for (const QuantileFn& q : random_markets(seed, 50)) {
    QuantileFn reg = regularize(q);
    Truncation t = truncate_nonneg(concavified_revenue(reg).phi);
    PayoffPoint a = evaluate_market(q, quad());
    PayoffPoint b = evaluate_market(reg, quad());
    PayoffPoint c = evaluate_market(t.q_plus, quad());
    for (double k : {0.0, 0.5, 1.0}) {
      L.check(b.weighted(k) >= a.weighted(k) - 1e-9, "regularization lowered W_k");
      L.near(c.weighted(k), b.weighted(k), 1e-9, "truncation changed W_k");
    }
    L.near(b.pi, a.pi, 1e-9, "regularization changed profit");
  }
}

void radial_segmentation(Ledger& L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  std::uniform_int_distribution<int> count(1, 4);
  for (double k : {0.75, 1.0}) {
    QuantileFn g = quadratic_optimal(WelfareWeight(k)).market();
    PayoffPoint full = evaluate_market(g, quad());
    for (double theta : {0.25, 0.5, 0.75}) {
      PayoffPoint r = evaluate_market(QuantileFn::radial(g, theta), quad());
      L.near(r.cs, theta * full.cs, 1e-8, "radial CS");
      L.near(r.pi, theta * full.pi, 1e-8, "radial profit");
    }
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> cuts;
      for (int c = count(rng); c > 0; --c) cuts.push_back(unif(rng));
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      Segmentation s = segment_and_evaluate(g, cuts, quad());
      L.check(s.average.pi >= full.pi - 1e-9, "segmentation lowered profit");
      L.check(s.average.cs < full.cs, "segmentation did not lower CS");
    }
  }
}

void fixed_inventory(Ledger& L) {
  InventoryOptimum u = inventory_optimal(WelfareWeight(1.0), InventoryModel::uniform());
  L.near(2 * u.b + std::log1p(-u.b), 0.0, 1e-8, "uniform cutoff equation");
  InventoryOptimum t = inventory_optimal(WelfareWeight(1.0), InventoryModel::two_point());
  L.near(t.b, 1 - 1 / (std::exp(1.0) * std::sqrt(2.0)), 1e-10, "two-point cutoff");

  InventoryRegion tr = inventory_region(InventoryModel::two_point());
  auto fb = [](double pi) {
    if (pi <= 0.5) return pi * std::log(1 / (std::sqrt(2.0) * pi));
    return (pi - 0.25) * std::log(1 / (2 * pi - 0.5));
  };
  double h = 1e-7;
  double left = (fb(0.5) - fb(0.5 - h)) / h, right = (fb(0.5 + h) - fb(0.5)) / h;
  L.near(left, 0.5 * std::log(2.0) - 1, 1e-6, "left kink slope");
  L.near(right, std::log(2.0) - 1, 1e-6, "right kink slope");
  for (double pi : {0.46, 0.48, 0.5, 0.52, 0.54}) {
    L.check(tr.h(pi) > fb(pi) + 1e-9, "two-point hull does not exceed f");
  }
  InventoryRegion ur = inventory_region(InventoryModel::uniform());
  for (int i = 1; i <= 500; ++i) {
    double pi = 0.5 * i / 500.0;
    double s = std::sqrt(1 - 2 * pi);
    double f = i == 500 ? 0.0 : (1 - s) * (-s - std::log(1 - s));
    L.near(ur.h(pi), f, 1e-8, "uniform boundary");
  }
}

void mps_generators(Ledger& L) {
  QuantileFn g = quadratic_optimal(WelfareWeight(1.0)).market();
  double wg = evaluate_market(g, quad()).weighted(1.0);
  std::vector<QuantileFn> fs;
  for (int n : {2, 3, 5}) fs.push_back(mps_finite(g, n, 0.1));
  fs.push_back(mps_smooth(g, 0.1, 4096));
  for (const QuantileFn& f : fs) {
    L.check(convex_order_check(f, g), "spread fails the convex-order check");
    L.check(wg >= evaluate_market(f, quad()).weighted(1.0) - 1e-8, "spread beats G_1");
  }
}

struct Criterion {
  int id;
  const char* name;
  const char* suite;
  std::function<void(Ledger&, std::uint64_t)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& suite, std::uint64_t seed) {
  if (suite != "golden" && suite != "properties" && suite != "all") {
    throw ValidationError("unknown suite: " + suite);
  }
  const std::vector<Criterion> all = {
      {1, "quadratic golden values", "golden", [](Ledger& L, auto) { golden_quadratic(L); }},
      {2, "linear benchmark", "golden", [](Ledger& L, auto) { golden_linear(L); }},
      {3, "elasticity consistency", "golden", [](Ledger& L, auto) { golden_elasticity(L); }},
      {4, "comparative statics in k", "properties",
       [](Ledger& L, auto) { comparative_statics(L); }},
      {5, "Euler-Lagrange residual", "golden", [](Ledger& L, auto) { euler_lagrange(L); }},
      {6, "oracle sandwich", "properties", [](Ledger& L, auto) { oracle_sandwich(L); }},
      {7, "ironing pipeline", "properties",
       [](Ledger& L, std::uint64_t s) { ironing_pipeline(L, s); }},
      {8, "radial and segmentation", "properties",
       [](Ledger& L, std::uint64_t s) { radial_segmentation(L, s); }},
      {9, "fixed inventory", "golden", [](Ledger& L, auto) { fixed_inventory(L); }},
      {10, "mean-preserving spreads", "properties", [](Ledger& L, auto) { mps_generators(L); }},
  };
  std::vector<CriterionResult> out;
  for (const Criterion& c : all) {
    if (suite != "all" && suite != c.suite) continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    auto t0 = Clock::now();
    Ledger L;
    try {
      c.run(L, seed);
      r.pass = L.pass();
      r.detail = L.detail();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    out.push_back(r);
  }
  return out;
}

bool print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results) {
  bool ok = true;
  for (const CriterionResult& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%7.2fs", r.seconds);
    os << (r.pass ? "PASS " : "FAIL ") << std::to_string(r.id) << ". " << r.name << "  ["
       << buf << "]  " << r.detail << '\n';
    ok = ok && r.pass;
  }
  return ok;
}

}  // namespace marketcomp
