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

#ifndef MARKETCOMP_INVENTORY_HPP_
#define MARKETCOMP_INVENTORY_HPP_

#include <vector>

#include "marketcomp/config.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/piecewise.hpp"

namespace marketcomp {

enum class InventoryKind { kUniform, kTwoPoint, kCustom };

// Exogenous stock of qualities, given by its lower quantile qbar(u) >= 0.
class InventoryModel {
 public:
  InventoryModel(InventoryKind kind, Piecewise qbar);

  // qbar(u) = u.
  static InventoryModel uniform();
  // Half the stock at 1/2, half at 1.
  static InventoryModel two_point();
  static InventoryModel custom(Piecewise qbar);

  InventoryKind kind() const { return kind_; }
  const Piecewise& qbar() const { return qbar_; }
  double operator()(double u) const { return qbar_.eval(u, Side::kRight); }
  // int_0^b qbar(u) / (1 - u) du, exact on constant and linear pieces.
  double weighted_integral(double b) const;
  // No jumps, positive on (0, 1], Psi increasing on a grid.
  bool single_crossing() const;

 private:
  InventoryKind kind_;
  Piecewise qbar_;
};

const char* inventory_name(InventoryKind kind);

// Payoffs of the threshold profile phi = 1{u >= b}.
PayoffPoint inventory_threshold_payoffs(double b, const InventoryModel& inv);

// (1 / qbar(b)) int_0^b qbar / (1 - u); NaN where qbar(b) = 0.
double inventory_psi(double b, const InventoryModel& inv);

struct InventoryOptimum {
  double b = 0.0;
  PayoffPoint payoff;
  bool first_order = false;  // found from Psi(b) = (2k - 1) / k
};

InventoryOptimum inventory_optimal(const WelfareWeight& k, const InventoryModel& inv);

struct RegionPoint {
  double b = 0.0;
  double pi = 0.0;
  double cs = 0.0;
};

// Threshold curve and the concave upper boundary h(pi) of the implementable
// set.
class InventoryRegion {
 public:
  InventoryRegion(const InventoryModel& inv, int grid_size);

  const std::vector<RegionPoint>& curve() const { return curve_; }
  // Upper hull vertices in increasing pi.
  const std::vector<RegionPoint>& hull() const { return hull_; }
  // True when Pi(b) is strictly decreasing, so that f = CS o Pi^{-1} exists.
  bool decreasing_profit() const { return decreasing_; }
  double pi_top() const { return curve_.front().pi; }
  // Threshold curve as a function of profit; requires decreasing_profit().
  double f(double pi) const;
  // Largest consumer surplus implementable at profit pi.
  double h(double pi) const;
  // Profit at the consumer-surplus peak of h (largest maximizer).
  double pi_max() const;
  // Pareto frontier (h(pi), pi) for pi from pi_max() to Pi(0).
  std::vector<RegionPoint> frontier(int points) const;

 private:
  InventoryModel inv_;
  std::vector<RegionPoint> curve_;
  std::vector<RegionPoint> hull_;
  std::vector<int> hull_index_;  // position of each hull vertex in curve_
  bool decreasing_ = false;
};

InventoryRegion inventory_region(const InventoryModel& inv, int grid_size = 2000);

}  // namespace marketcomp

#endif  // MARKETCOMP_INVENTORY_HPP_
