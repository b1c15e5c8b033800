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

#include "marketcomp/inventory.hpp"

#include <algorithm>
#include <cmath>

#include "marketcomp/numerics.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

namespace {

double piece_weighted(const Segment& s, double a, double e) {
  if (!(e > a)) return 0.0;
  const double log_ratio = std::log1p(-a) - std::log1p(-e);
  switch (s.interp) {
    case Interp::kConstant:
      return s.v0 * log_ratio;
    case Interp::kLinear: {
      // v0 + beta (u - u0) = K - beta (1 - u).
      const double beta = s.slope();
      const double k = s.v0 + beta * (1.0 - s.u0);
      return k * log_ratio - beta * (e - a);
    }
    case Interp::kAnalytic:
      return quad([&](double u) { return s.eval(u) / (1.0 - u); }, a, e);
  }
  return 0.0;
}

double profit_at(double b, const InventoryModel& inv) {
  if (b >= 1.0) return 0.0;
  return integrate_piecewise(inv.qbar(), std::max(b, 0.0), 1.0);
}

double cs_at(double b, const InventoryModel& inv) {
  if (b >= 1.0) return 0.0;
  return (1.0 - b) * inv.weighted_integral(b);
}

double objective(double b, double k, const InventoryModel& inv) {
  return k * cs_at(b, inv) + (1.0 - k) * profit_at(b, inv);
}

// J_k'(b) = (2k - 1) qbar(b) - k int_0^b qbar / (1 - u).
double objective_slope(double b, double k, Side side, const InventoryModel& inv) {
  return (2.0 * k - 1.0) * inv.qbar().eval(b, side) - k * inv.weighted_integral(b);
}

}  // namespace

InventoryModel::InventoryModel(InventoryKind kind, Piecewise qbar)
    : kind_(kind), qbar_(std::move(qbar)) {
  if (qbar_.min_value() < -1e-12) {
    throw ValidationError("inventory quantile must be nonnegative");
  }
  double where = 0.0;
  if (!is_nondecreasing(qbar_, 1e-12, &where)) {
    throw ValidationError("inventory quantile must be nondecreasing (fails near u = " +
                          std::to_string(where) + ")");
  }
  for (const Segment& s : qbar_.segments()) {
    if (s.interp == Interp::kAnalytic && s.u1 >= 1.0 && s.form.has_negative_powers() &&
        s.form.pole <= 1.0) {
      throw ValidationError("inventory quantile must be integrable");
    }
  }
}

InventoryModel InventoryModel::uniform() {
  return InventoryModel(InventoryKind::kUniform,
                        Piecewise({linear_segment(0.0, 1.0, 0.0, 1.0)}));
}

InventoryModel InventoryModel::two_point() {
  return InventoryModel(InventoryKind::kTwoPoint,
                        Piecewise({constant_segment(0.0, 0.5, 0.5),
                                   constant_segment(0.5, 1.0, 1.0)}));
}

InventoryModel InventoryModel::custom(Piecewise qbar) {
  return InventoryModel(InventoryKind::kCustom, std::move(qbar));
}

const char* inventory_name(InventoryKind kind) {
  switch (kind) {
    case InventoryKind::kUniform:
      return "uniform";
    case InventoryKind::kTwoPoint:
      return "two-point";
    case InventoryKind::kCustom:
      return "custom";
  }
  return "custom";
}

double InventoryModel::weighted_integral(double b) const {
  if (b <= 0.0) return 0.0;
  if (b >= 1.0) return qbar_.eval(1.0, Side::kLeft) > 0.0 ? INFINITY : 0.0;
  double acc = 0.0;
  for (const Segment& s : qbar_.segments()) {
    if (s.u0 >= b) break;
    acc += piece_weighted(s, s.u0, std::min(s.u1, b));
  }
  return acc;
}

bool InventoryModel::single_crossing() const {
  const auto& segs = qbar_.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (i > 0 && std::fabs(segs[i - 1].v1 - s.v0) > 1e-12) return false;
    bool positive = s.interp == Interp::kConstant ? s.v0 > 0.0 : s.v1 > 0.0;
    if (!positive) return false;
  }
  const int n = 1000;
  double prev = -INFINITY;
  for (int i = 1; i < n; ++i) {
    double psi = inventory_psi(static_cast<double>(i) / n, *this);
    if (!(psi > prev)) return false;
    prev = psi;
  }
  return true;
}

PayoffPoint inventory_threshold_payoffs(double b, const InventoryModel& inv) {
  if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("cutoff must lie in [0, 1]");
  return PayoffPoint::of(cs_at(b, inv), profit_at(b, inv));
}

double inventory_psi(double b, const InventoryModel& inv) {
  double level = inv(b);
  if (!(level > 0.0)) return NAN;
  return inv.weighted_integral(b) / level;
}

InventoryOptimum inventory_optimal(const WelfareWeight& w, const InventoryModel& inv) {
  InventoryOptimum out;
  const double k = w.k();
  if (w.degenerate()) {
    out.payoff = inventory_threshold_payoffs(0.0, inv);
    return out;
  }
  if (inv.single_crossing()) {
    const double lambda = w.lambda();
    double lo = 1e-15, hi = 1.0 - 1e-15;
    out.b = find_root([&](double b) { return inventory_psi(b, inv) - lambda; }, lo, hi, 1e-16);
    out.first_order = true;
    out.payoff = inventory_threshold_payoffs(out.b, inv);
    return out;
  }

  // Grid search with breakpoints, refined by roots of J' inside each cell.
  std::vector<double> grid = linspace(0.0, 1.0, 10001);
  for (double u : inv.qbar().breakpoints()) grid.push_back(u);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double best_b = 0.0, best_j = objective(0.0, k, inv);
  auto consider = [&](double b) {
    double j = objective(b, k, inv);
    if (j > best_j + 1e-15 * std::max(1.0, std::fabs(best_j))) {
      best_j = j;
      best_b = b;
    }
  };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i], e = grid[i + 1];
    consider(e);
    double sa = objective_slope(a, k, Side::kRight, inv);
    double se = e < 1.0 ? objective_slope(e, k, Side::kLeft, inv) : -INFINITY;
    if (sa > 0.0 && se < 0.0) {
      auto slope = [&](double b) { return objective_slope(b, k, Side::kRight, inv); };
      consider(bisect(slope, a, e, 200));
    }
  }
  out.b = best_b;
  out.payoff = inventory_threshold_payoffs(best_b, inv);
  return out;
}

InventoryRegion::InventoryRegion(const InventoryModel& inv, int grid_size) : inv_(inv) {
  if (grid_size < 2) throw ValidationError("region grid needs at least 2 points");
  std::vector<double> bs = linspace(0.0, 1.0, static_cast<std::size_t>(grid_size) + 1);
  for (double u : inv.qbar().breakpoints()) bs.push_back(u);
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  for (double b : bs) curve_.push_back({b, profit_at(b, inv), cs_at(b, inv)});

  decreasing_ = true;
  for (std::size_t i = 1; i < curve_.size(); ++i) {
    decreasing_ = decreasing_ && curve_[i].pi < curve_[i - 1].pi;
  }

  // Upper hull in the (pi, cs) plane, scanning pi upward (b downward). The
  // cs = 0 floor joins (0, 0) to (Pi(0), 0), which are the curve endpoints.
  std::vector<int> order(curve_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<int>(curve_.size() - 1 - i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return curve_[a].pi < curve_[b].pi;
  });
  std::vector<int> h;
  for (int idx : order) {
    const RegionPoint& p = curve_[idx];
    if (!h.empty() && curve_[h.back()].pi == p.pi) {
      if (p.cs <= curve_[h.back()].cs) continue;
      h.pop_back();
    }
    while (h.size() >= 2) {
      const RegionPoint& a = curve_[h[h.size() - 2]];
      const RegionPoint& c = curve_[h.back()];
      double cross = (c.pi - a.pi) * (p.cs - a.cs) - (c.cs - a.cs) * (p.pi - a.pi);
      if (cross < 0.0) break;
      h.pop_back();
    }
    h.push_back(idx);
  }
  for (int idx : h) {
    hull_.push_back(curve_[idx]);
    hull_index_.push_back(idx);
  }
}

double InventoryRegion::f(double pi) const {
  if (!decreasing_) throw ValidationError("profit is not strictly decreasing in the cutoff");
  if (pi <= 0.0) return 0.0;
  if (pi >= pi_top()) return 0.0;
  double b = bisect([&](double x) { return profit_at(x, inv_) - pi; }, 0.0, 1.0, 200);
  return cs_at(b, inv_);
}

double InventoryRegion::h(double pi) const {
  if (pi < 0.0 || pi > pi_top() * (1.0 + 1e-15)) {
    throw ValidationError("profit outside the implementable range");
  }
  auto it = std::lower_bound(hull_.begin(), hull_.end(), pi,
                             [](const RegionPoint& p, double x) { return p.pi < x; });
  if (it == hull_.end()) return hull_.back().cs;
  if (it->pi == pi || it == hull_.begin()) return it->cs;
  std::size_t j = static_cast<std::size_t>(it - hull_.begin());
  const RegionPoint& a = hull_[j - 1];
  const RegionPoint& c = hull_[j];
  double chord = a.cs + (c.cs - a.cs) * (pi - a.pi) / (c.pi - a.pi);
  bool adjacent = std::abs(hull_index_[j] - hull_index_[j - 1]) == 1;
  if (adjacent && decreasing_) return std::max(chord, f(pi));
  return chord;
}

double InventoryRegion::pi_max() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < hull_.size(); ++i) {
    if (hull_[i].cs >= hull_[best].cs) best = i;
  }
  double lo = best > 0 ? hull_[best - 1].pi : hull_[best].pi;
  double hi = best + 1 < hull_.size() ? hull_[best + 1].pi : hull_[best].pi;
  if (!(hi > lo) || !decreasing_) return hull_[best].pi;
  double arg = golden_max([&](double p) { return h(p); }, lo, hi, 1e-14);
  return h(arg) >= hull_[best].cs ? arg : hull_[best].pi;
}

std::vector<RegionPoint> InventoryRegion::frontier(int points) const {
  std::vector<RegionPoint> out;
  double lo = pi_max(), hi = pi_top();
  for (int i = 0; i < std::max(points, 2); ++i) {
    double pi = lo + (hi - lo) * i / (std::max(points, 2) - 1);
    double b = decreasing_ ? bisect([&](double x) { return profit_at(x, inv_) - pi; },
                                    0.0, 1.0, 200)
                           : NAN;
    out.push_back({b, pi, h(std::min(pi, hi))});
  }
  return out;
}

InventoryRegion inventory_region(const InventoryModel& inv, int grid_size) {
  return InventoryRegion(inv, grid_size);
}

}  // namespace marketcomp
