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

#include "marketcomp/screening.hpp"

#include <algorithm>
#include <cmath>

#include "marketcomp/numerics.hpp"

namespace marketcomp {

QualityProfit pointwise_quality_profit(double z, const CostModel& cost) {
  if (cost.kind() == CostKind::kLinear) {
    if (z < cost.marginal() - 1e-12) return {0.0, 0.0};
    return {cost.capacity(), cost.capacity() * std::max(0.0, z - cost.marginal())};
  }
  if (z <= 0.0) return {0.0, 0.0};
  double q = z >= 1.0 ? cost.qbar() : cost.cp_inverse(z);
  return {q, z * q - cost.c(q)};
}

PayoffPoint evaluate_market(const QuantileFn& q, const CostModel& cost,
                            const Tolerances& tol) {
  return evaluate_market(q, concavified_revenue(q, tol), cost, tol);
}

PayoffPoint evaluate_market(const QuantileFn& q, const Ironing& ironing,
                            const CostModel& cost, const Tolerances& tol) {
  const Piecewise& phi = ironing.phi.pw();
  std::vector<double> cuts = q.pw().breakpoints();
  for (double u : phi.breakpoints()) cuts.push_back(u);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double cs = 0.0, pi = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    double mid = 0.5 * (a + b);
    const Segment& ps = phi.segments()[phi.locate(mid, Side::kRight)];
    const Segment& qs = q.segments()[q.pw().locate(mid, Side::kRight)];
    if (ps.interp == Interp::kConstant) {
      QualityProfit qp = pointwise_quality_profit(ps.v0, cost);
      pi += qp.pi * (b - a);
      if (qp.q != 0.0) cs += qp.q * (qs.integral(a, b) - ps.v0 * (b - a));
      continue;
    }
    pi += quad([&](double u) { return pointwise_quality_profit(ps.eval(u), cost).pi; },
               a, b, tol.quad);
    cs += quad(
        [&](double u) {
          double z = ps.eval(u);
          return (qs.eval(u) - z) * pointwise_quality_profit(z, cost).q;
        },
        a, b, tol.quad);
  }
  return PayoffPoint::of(cs, pi);
}

const MenuRow& MenuSchedule::row_for(double v) const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].v <= v) best = i;
  }
  return rows[best];
}

double MenuSchedule::profit(const CostModel& cost) const {
  double p = 0.0;
  for (const MenuRow& r : rows) p += r.mass * (r.t - cost.c(r.q));
  return p;
}

MenuSchedule seller_menu(const QuantileFn& q, const CostModel& cost,
                         int grid_size, const Tolerances& tol) {
  Ironing ir = concavified_revenue(q, tol);
  const VirtualValueProfile& phi = ir.phi;
  std::vector<double> ranks = q.pw().breakpoints();
  for (double u : phi.pw().breakpoints()) ranks.push_back(u);
  for (int i = 0; i <= grid_size; ++i) {
    ranks.push_back(static_cast<double>(i) / grid_size);
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

  MenuSchedule menu;
  double utility = 0.0;
  double prev_v = 0.0, prev_x = 0.0, prev_z = 0.0;
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) {
    double u = ranks[j];
    double mass = ranks[j + 1] - u;
    double v = q.right_limit(u);
    double z = phi(u);
    double x = pointwise_quality_profit(z, cost).q;
    if (j > 0) utility += prev_x * (v - prev_v);
    bool same_option = !menu.rows.empty() &&
                       (std::fabs(z - prev_z) <= tol.flat_phi || x == prev_x);
    if (same_option) {
      menu.rows.back().mass += mass;
    } else {
      menu.rows.push_back(MenuRow{v, x, v * x - utility, mass});
    }
    prev_v = v;
    prev_x = same_option ? prev_x : x;
    prev_z = same_option ? prev_z : z;
  }
  const MenuRow& last = menu.rows.back();
  double top = q.top_mass();
  if (top > 0.0 && q(1.0) >= 1.0 - 1e-12) {
    menu.top = TopAtom{top, last.q, last.t};
  }
  return menu;
}

double posted_price_profit(const QuantileFn& q, double r, double m) {
  return (r - m) * (1.0 - q.rank_of(r));
}

PostedPrice posted_price_optimum(const QuantileFn& q, double m, double qbar) {
  if (!(m >= 0.0 && m < 1.0)) throw ValidationError("posted price needs M in [0, 1)");
  if (!(qbar > 0.0)) throw ValidationError("posted price needs Qbar > 0");
  std::vector<double> cand{m, 1.0, q.lowest()};
  for (const Segment& s : q.segments()) {
    cand.push_back(s.v0);
    cand.push_back(s.v1);
    if (s.interp == Interp::kLinear && s.v1 > s.v0) {
      double beta = s.slope();
      cand.push_back(0.5 * (beta * (1.0 - s.u0) + s.v0 + m));
    } else if (s.interp == Interp::kAnalytic) {
      auto rev = [&](double u) { return (s.eval(u) - m) * (1.0 - u); };
      const int n = 64;
      int best = 0;
      double bv = -INFINITY;
      for (int j = 0; j <= n; ++j) {
        double v = rev(s.u0 + (s.u1 - s.u0) * j / n);
        if (v > bv) {
          bv = v;
          best = j;
        }
      }
      double lo = s.u0 + (s.u1 - s.u0) * std::max(0, best - 1) / n;
      double hi = s.u0 + (s.u1 - s.u0) * std::min(n, best + 1) / n;
      cand.push_back(s.eval(golden_max(rev, lo, hi, 1e-13)));
    }
  }
  std::vector<std::pair<double, double>> scored;
  double best = -INFINITY;
  for (double r : cand) {
    if (!(r >= m && r <= 1.0)) continue;
    double p = posted_price_profit(q, r, m);
    scored.emplace_back(r, p);
    best = std::max(best, p);
  }
  double r_star = 1.0;
  for (const auto& [r, p] : scored) {
    if (p >= best - 1e-12 * std::max(1.0, std::fabs(best))) r_star = std::min(r_star, r);
  }
  double u_star = q.rank_of(r_star);
  double pi = qbar * posted_price_profit(q, r_star, m);
  double cs = qbar * (q.integral(u_star, 1.0) - r_star * (1.0 - u_star));
  return PostedPrice{r_star, PayoffPoint::of(std::max(cs, 0.0), pi)};
}

}  // namespace marketcomp
