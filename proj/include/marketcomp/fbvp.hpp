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

#ifndef MARKETCOMP_FBVP_HPP_
#define MARKETCOMP_FBVP_HPP_

#include <vector>

#include "marketcomp/config.hpp"
#include "marketcomp/cost.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

struct FbvpSample {
  double u = 0.0;
  double x = 0.0;    // quality
  double phi = 0.0;  // virtual value c'(x)
  double A = 0.0;    // cumulative spillover
  double Q = 0.0;    // induced quantile
};

struct FbvpSolution {
  double k = 1.0;
  bool degenerate = false;
  double b = 0.0;
  double T = 0.0;  // -ln(1 - b)
  std::vector<FbvpSample> samples;  // u ascending on [0, b]
  double el_residual_max = 0.0;
  // Welfare integrated along the interior branch plus the top atom.
  double cs = 0.0;
  double pi = 0.0;

  double lowest_value() const;  // Q(0)
};

// Optimal market for weight k. k <= 1/2 returns the degenerate answer (the
// point mass at 1).
FbvpSolution solve_optimal_market(const CostModel& cost, const WelfareWeight& k,
                                  const Tolerances& tol = {});

// Largest |k A + k (Q - phi) / c''(x) + (1 - 2k) x| over interior samples,
// with x = q(phi) recomputed from phi.
double el_residual(const FbvpSolution& sol, const CostModel& cost,
                   const WelfareWeight& k);

QuantileFn to_market(const FbvpSolution& sol);

}  // namespace marketcomp

#endif  // MARKETCOMP_FBVP_HPP_
