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

#include "marketcomp/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "marketcomp/closedform.hpp"
#include "marketcomp/fbvp.hpp"
#include "marketcomp/numerics.hpp"
#include "marketcomp/screening.hpp"

namespace marketcomp {

const char* engine_name(FrontierEngine engine) {
  switch (engine) {
    case FrontierEngine::kFbvp:
      return "fbvp";
    case FrontierEngine::kClosedForm:
      return "closedform";
    case FrontierEngine::kLinear:
      return "linear";
  }
  return "fbvp";
}

FrontierEngine parse_engine(const std::string& name) {
  if (name == "fbvp") return FrontierEngine::kFbvp;
  if (name == "closedform") return FrontierEngine::kClosedForm;
  if (name == "linear") return FrontierEngine::kLinear;
  throw ValidationError("unknown engine: " + name);
}

namespace {

FrontierRow row_of(double k, double b, const PayoffPoint& p, double vlow) {
  return {k, b, p.cs, p.pi, p.ts, vlow};
}

void check_engine(const CostModel& cost, FrontierEngine engine) {
  switch (engine) {
    case FrontierEngine::kFbvp:
      if (!cost.convex()) throw ValidationError("fbvp engine needs a convex cost");
      return;
    case FrontierEngine::kClosedForm:
      if (cost.kind() != CostKind::kQuadratic && cost.kind() != CostKind::kElasticity) {
        throw ValidationError("closedform engine needs quadratic or elasticity cost");
      }
      return;
    case FrontierEngine::kLinear:
      if (cost.kind() != CostKind::kLinear) {
        throw ValidationError("linear engine needs linear cost");
      }
      return;
  }
}

}  // namespace

FrontierRow frontier_point(const CostModel& cost, double k, FrontierEngine engine,
                           const Tolerances& tol) {
  check_engine(cost, engine);
  WelfareWeight w(k);
  if (engine == FrontierEngine::kLinear) {
    LinearSolution s = linear_optimal(w, cost.marginal(), cost.capacity());
    return row_of(k, s.b, s.payoff, s.market.lowest());
  }
  if (w.degenerate()) {
    double top = cost.qbar() - cost.c(cost.qbar());
    return row_of(k, 0.0, PayoffPoint::of(0.0, top), 1.0);
  }
  if (engine == FrontierEngine::kFbvp) {
    FbvpSolution s = solve_optimal_market(cost, w, tol);
    return row_of(k, s.b, PayoffPoint::of(s.cs, s.pi), s.lowest_value());
  }
  if (cost.kind() == CostKind::kQuadratic) {
    QuadraticSolution s = quadratic_optimal(w);
    return row_of(k, s.b, PayoffPoint::of(s.cs, s.pi), s.Q(0.0));
  }
  ElasticitySolution s = elasticity_optimal(w, cost.eta(), tol);
  PayoffPoint p = evaluate_market(s.market(tol.fbvp_samples), cost, tol);
  return row_of(k, s.b(), p, s.vlow());
}

FrontierCurve trace_frontier(const CostModel& cost, const std::vector<double>& k_grid,
                             FrontierEngine engine, const Tolerances& tol) {
  check_engine(cost, engine);
  std::vector<double> ks = k_grid;
  for (double& k : ks) {
    if (!(k >= 0.5 - 1e-12 && k <= 1.0 + 1e-12)) {
      throw ValidationError("frontier weights must lie in [1/2, 1]");
    }
    k = std::clamp(k, 0.5, 1.0);
  }
  std::sort(ks.begin(), ks.end());
  FrontierCurve out;
  out.rows = parallel_map<FrontierRow>(
      ks.size(), [&](std::size_t i) { return frontier_point(cost, ks[i], engine, tol); });
  return out;
}

std::vector<double> parse_k_grid(const std::string& spec) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw ValidationError("bad number in k grid: " + s);
      return v;
    } catch (const std::logic_error&) {
      throw ValidationError("bad number in k grid: " + s);
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ValidationError("k grid must be lo:hi:step");
    double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || hi < lo) throw ValidationError("k grid needs lo <= hi and step > 0");
    long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
    if (hi - out.back() > 1e-9 * step) out.push_back(hi);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw ValidationError("empty k grid");
  return out;
}

std::vector<PayoffPoint> radial_hull(const FrontierCurve& curve,
                                     const std::vector<double>& thetas) {
  std::vector<PayoffPoint> out;
  for (const FrontierRow& r : curve.rows) {
    for (double t : thetas) {
      if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("theta must lie in [0, 1]");
      out.push_back(PayoffPoint::of(t * r.cs, t * r.pi));
    }
  }
  return out;
}

Segmentation segment_and_evaluate(const QuantileFn& q, const std::vector<double>& split_ranks,
                                  const CostModel& cost, const Tolerances& tol) {
  std::vector<double> cuts{0.0};
  for (double s : split_ranks) {
    if (!(s > cuts.back() && s < 1.0)) {
      throw ValidationError("split ranks must increase strictly inside (0, 1)");
    }
    cuts.push_back(s);
  }
  cuts.push_back(1.0);
  Segmentation out;
  double cs = 0.0, pi = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double m = cuts[i + 1] - cuts[i];
    PayoffPoint p = evaluate_market(q.band(cuts[i], cuts[i + 1]), cost, tol);
    out.per_segment.push_back(p);
    out.mass.push_back(m);
    cs += m * p.cs;
    pi += m * p.pi;
  }
  out.average = PayoffPoint::of(cs, pi);
  return out;
}

namespace {

// Body rank b of a market whose top atom is the only mass at 1.
double body_rank(const QuantileFn& q, double a) {
  if (!(a > 0.0 && a < q.lowest())) {
    throw ValidationError("spread anchor must lie strictly between 0 and the lowest value");
  }
  double b = 1.0 - q.top_mass();
  if (!(b > 0.0 && b < 1.0)) {
    throw ValidationError("market needs a body and an atom at the top");
  }
  return b;
}

}  // namespace

QuantileFn mps_finite(const QuantileFn& q, int n, double a) {
  if (n < 2) throw ValidationError("support size must be at least 2");
  const double b = body_rank(q, a);
  // Atoms in increasing value order; block i spreads onto {lo_i, hi_i}.
  std::vector<double> values(static_cast<std::size_t>(n)), mass(values.size(), 0.0);
  values.front() = a;
  values.back() = 1.0;
  std::vector<double> cut(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cut[i] = b * i / (n - 1);
  for (int i = 1; i + 1 < n; ++i) values[i] = q(cut[i]);
  for (int i = 0; i + 1 < n; ++i) {
    double m = cut[i + 1] - cut[i];
    double avg = q.integral(cut[i], cut[i + 1]) / m;
    double lo = values[i], hi = values[i + 1];
    if (!(lo < avg && avg < hi)) {
      throw ValidationError("market body must be strictly increasing below the top atom");
    }
    mass[i] += m * (hi - avg) / (hi - lo);
    mass[i + 1] += m * (avg - lo) / (hi - lo);
  }
  mass.back() += 1.0 - b;
  std::vector<double> cuts{0.0};
  for (std::size_t i = 0; i + 1 < mass.size(); ++i) cuts.push_back(cuts.back() + mass[i]);
  cuts.push_back(1.0);
  return QuantileFn::steps(cuts, values);
}

QuantileFn mps_smooth(const QuantileFn& q, double a, int grid_size) {
  if (grid_size < 2) throw ValidationError("grid size must be at least 2");
  const double b = body_rank(q, a);

  // F(y) on [a, 1) is sum_j w_j s^alpha_j with s = (y - a) / (1 - a), the
  // kernel CDF mixed over Gauss nodes of the body ranks.
  using Gauss = boost::math::quadrature::gauss<double, 4>;
  const auto& xs = Gauss::abscissa();
  const auto& ws = Gauss::weights();
  std::vector<double> w, alpha;
  for (const Segment& s : q.pw().clipped(0.0, b)) {
    double mid = 0.5 * (s.u0 + s.u1), half = 0.5 * (s.u1 - s.u0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (double sign : {-1.0, 1.0}) {
        if (xs[i] == 0.0 && sign > 0.0) continue;
        double x = s.eval(mid + sign * half * xs[i]);
        w.push_back(half * ws[i]);
        alpha.push_back((x - a) / (1.0 - x));
      }
    }
  }
  auto cdf = [&](double y) {
    double s = (y - a) / (1.0 - a), acc = 0.0;
    if (s <= 0.0) return 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * std::pow(s, alpha[j]);
    return acc;
  };

  // Partial mean int_{[a, y]} t dF(t), closed form per kernel.
  auto partial_mean = [&](double y) {
    double s = (y - a) / (1.0 - a), acc = 0.0;
    if (s <= 0.0) return 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      double p = std::pow(s, alpha[j]);
      acc += w[j] * p * (a + (1.0 - a) * alpha[j] / (alpha[j] + 1.0) * s);
    }
    return acc;
  };

  const std::size_t n = static_cast<std::size_t>(grid_size);
  std::vector<double> u(n + 1), y(n + 1), mean(n + 1);
  for (std::size_t i = 0; i <= n; ++i) u[i] = b * static_cast<double>(i) / n;
  parallel_for(n + 1, [&](std::size_t i) {
    if (i == 0) {
      y[i] = a;
    } else if (i == n) {
      y[i] = 1.0;
    } else {
      y[i] = find_root([&](double v) { return cdf(v) - u[i]; }, a, 1.0, 1e-15);
    }
    mean[i] = i == n ? partial_mean(1.0 - 1e-300) : partial_mean(y[i]);
  });
  // Each cell gets a midpoint knot chosen so the cell integral is exact.
  // Cells too convex for that (next to the top) are halved.
  std::vector<Segment> segs;
  std::function<void(double, double, double, double, double, double, int)> cell =
      [&](double u0, double u1, double y0, double y1, double m0, double m1, int depth) {
        double um = 0.5 * (u0 + u1);
        double mid = 2.0 * (m1 - m0) / (u1 - u0) - 0.5 * (y0 + y1);
        if ((mid < y0 || mid > y1) && depth > 0) {
          double ym = find_root([&](double v) { return cdf(v) - um; }, y0, y1, 1e-15);
          double mm = partial_mean(ym);
          cell(u0, um, y0, ym, m0, mm, depth - 1);
          cell(um, u1, ym, y1, mm, m1, depth - 1);
          return;
        }
        mid = std::clamp(mid, y0, y1);
        segs.push_back(linear_segment(u0, um, y0, mid));
        segs.push_back(linear_segment(um, u1, mid, y1));
      };
  for (std::size_t i = 0; i < n; ++i) cell(u[i], u[i + 1], y[i], y[i + 1], mean[i], mean[i + 1], 40);
  segs.push_back(constant_segment(b, 1.0, 1.0));
  return QuantileFn(std::move(segs));
}

bool convex_order_check(const QuantileFn& f, const QuantileFn& g, int grid_size) {
  if (std::fabs(f.mean() - g.mean()) > 1e-8) return false;
  for (int i = 0; i <= grid_size; ++i) {
    double t = static_cast<double>(i) / grid_size;
    if (f.integral(t, 1.0) - g.integral(t, 1.0) < -1e-8) return false;
  }
  return true;
}

}  // namespace marketcomp
