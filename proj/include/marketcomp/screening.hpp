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

#ifndef MARKETCOMP_SCREENING_HPP_
#define MARKETCOMP_SCREENING_HPP_

#include <optional>
#include <vector>

#include "marketcomp/config.hpp"
#include "marketcomp/cost.hpp"
#include "marketcomp/ironing.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

struct QualityProfit {
  double q = 0.0;
  double pi = 0.0;
};

// Seller's pointwise optimum at virtual value z. The linear kind serves the
// full capacity when z >= M (ties go to the buyer).
QualityProfit pointwise_quality_profit(double z, const CostModel& cost);

PayoffPoint evaluate_market(const QuantileFn& q, const CostModel& cost,
                            const Tolerances& tol = {});
// Same, reusing an ironing of q.
PayoffPoint evaluate_market(const QuantileFn& q, const Ironing& ironing,
                            const CostModel& cost, const Tolerances& tol = {});

struct MenuRow {
  double v = 0.0;
  double q = 0.0;
  double t = 0.0;
  double mass = 0.0;  // rank mass of buyers choosing this row
};

struct TopAtom {
  double mass = 0.0;
  double q = 0.0;
  double t = 0.0;
};

struct MenuSchedule {
  std::vector<MenuRow> rows;
  std::optional<TopAtom> top;

  // Row chosen by a buyer of value v (highest row with rows[i].v <= v).
  const MenuRow& row_for(double v) const;
  double profit(const CostModel& cost) const;
};

MenuSchedule seller_menu(const QuantileFn& q, const CostModel& cost,
                         int grid_size = 512, const Tolerances& tol = {});

struct PostedPrice {
  double r = 1.0;
  PayoffPoint payoff;
};

// Profit-maximizing posted price under linear cost M and capacity qbar. The
// smallest maximizer is returned.
PostedPrice posted_price_optimum(const QuantileFn& q, double m, double qbar);

// (r - M) * Pr(v >= r).
double posted_price_profit(const QuantileFn& q, double r, double m);

}  // namespace marketcomp

#endif  // MARKETCOMP_SCREENING_HPP_
