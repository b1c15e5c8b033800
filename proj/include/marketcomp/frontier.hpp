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

#ifndef MARKETCOMP_FRONTIER_HPP_
#define MARKETCOMP_FRONTIER_HPP_

#include <string>
#include <vector>

#include "marketcomp/config.hpp"
#include "marketcomp/cost.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

enum class FrontierEngine { kFbvp, kClosedForm, kLinear };

const char* engine_name(FrontierEngine engine);
FrontierEngine parse_engine(const std::string& name);

struct FrontierRow {
  double k = 0.5;
  double b = 0.0;
  double cs = 0.0;
  double pi = 0.0;
  double ts = 0.0;
  double vlow = 1.0;
};

struct FrontierCurve {
  std::vector<FrontierRow> rows;  // sorted by k
};

// Optimal market payoffs for one weight. The closedform engine covers the
// quadratic and elasticity kinds, the linear engine the linear kind.
FrontierRow frontier_point(const CostModel& cost, double k, FrontierEngine engine,
                           const Tolerances& tol = {});

// One row per k in [1/2, 1], computed in parallel.
FrontierCurve trace_frontier(const CostModel& cost, const std::vector<double>& k_grid,
                             FrontierEngine engine, const Tolerances& tol = {});

// Parses lo:hi:step (inclusive) or a comma list.
std::vector<double> parse_k_grid(const std::string& spec);

// (theta cs, theta pi) over every row and theta, rows outermost.
std::vector<PayoffPoint> radial_hull(const FrontierCurve& curve,
                                     const std::vector<double>& thetas);

struct Segmentation {
  PayoffPoint average;
  std::vector<PayoffPoint> per_segment;
  std::vector<double> mass;
};

// Splits Q into consecutive rank bands and screens each band separately.
Segmentation segment_and_evaluate(const QuantileFn& q, const std::vector<double>& split_ranks,
                                  const CostModel& cost, const Tolerances& tol = {});

// Finite-support spread of a market with strictly increasing body on (0, b)
// and an atom at 1: N support points including a and 1.
QuantileFn mps_finite(const QuantileFn& q, int n, double a);

// Absolutely continuous spread on [a, 1) keeping the top atom. The body is
// sampled at grid_size + 1 ranks; each cell carries a midpoint knot that
// makes its integral exact.
QuantileFn mps_smooth(const QuantileFn& q, double a, int grid_size = 4096);

// True iff F is a mean-preserving spread of G, judged on upper-tail
// integrals at grid_size + 1 ranks.
bool convex_order_check(const QuantileFn& f, const QuantileFn& g, int grid_size = 1000);

}  // namespace marketcomp

#endif  // MARKETCOMP_FRONTIER_HPP_
