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

#include "marketcomp/fbvp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "marketcomp/numerics.hpp"
#include "marketcomp/screening.hpp"

namespace marketcomp {

namespace {

namespace odeint = boost::numeric::odeint;

// (A, Q, consumer-surplus integral, profit integral), reverse log-time s.
using State = std::array<double, 4>;

class System {
 public:
  System(const CostModel& cost, double lambda) : cost_(cost), lambda_(lambda) {}

  // x solving Q = c'(x) + c''(x) (lambda x - A) on [max(A / lambda, eps), qbar].
  double quality(double a, double q) const {
    const double qbar = cost_.qbar();
    if (cost_.kind() == CostKind::kQuadratic) {
      return std::clamp((q + a) / (1.0 + lambda_), 0.0, qbar);
    }
    auto f = [&](double x) {
      return cost_.cp(x) + cost_.cpp(x) * (lambda_ * x - a) - q;
    };
    double lo = std::max(a / lambda_, 1e-14);
    if (lo >= qbar) return qbar;
    // Trial stages of a step that overshoots the event can leave the domain
    // (A < 0, Q outside [0, 1]); clamp there and let step control reject them.
    const bool inside = a > 0.0 && q >= 0.0 && q <= 1.0 + 1e-9;
    double fhi = f(qbar);
    if (fhi <= 0.0) {
      if (fhi > -1e-9 || !inside) return qbar;
      throw NumericalError("quality root above qbar; curvature bound violated?");
    }
    double flo = f(lo);
    if (flo >= 0.0) {
      if (a < 1e-6 || !inside) return lo;
      throw NumericalError("quality root not bracketed; curvature bound violated?");
    }
    return find_root(f, lo, qbar, 1e-15);
  }

  void operator()(const State& y, State& dy, double s) const {
    const double a = y[0], q = y[1];
    const double x = quality(a, q);
    const double es = std::exp(s);
    dy[0] = -x;
    dy[1] = -cost_.cpp(x) * (lambda_ * x - a);
    dy[2] = (q - cost_.cp(x)) * x * es;
    dy[3] = (cost_.cp(x) * x - cost_.c(x)) * es;
  }

 private:
  const CostModel& cost_;
  double lambda_;
};

auto make_stepper(const Tolerances& tol) {
  using Dopri = odeint::runge_kutta_dopri5<State>;
  return odeint::make_dense_output(tol.fbvp_rtol, tol.fbvp_rtol,
                                   tol.fbvp_max_step, Dopri());
}

}  // namespace

double FbvpSolution::lowest_value() const {
  return degenerate || samples.empty() ? 1.0 : samples.front().Q;
}

FbvpSolution solve_optimal_market(const CostModel& cost, const WelfareWeight& k,
                                  const Tolerances& tol) {
  if (!cost.convex()) {
    throw ValidationError("the free-boundary solver needs a convex cost");
  }
  FbvpSolution sol;
  sol.k = k.k();
  const double qbar = cost.qbar();
  const double top_pi = qbar - cost.c(qbar);
  if (k.degenerate()) {
    sol.degenerate = true;
    sol.pi = top_pi;
    return sol;
  }
  const double lambda = k.lambda();
  System sys(cost, lambda);
  const State start{lambda * qbar, 1.0, 0.0, 0.0};

  // Pass 1: locate the stopping time T where A first reaches 0.
  auto stepper = make_stepper(tol);
  stepper.initialize(start, 0.0, 1e-4);
  double T = 0.0;
  State at_T{};
  for (;;) {
    auto [s0, s1] = stepper.do_step(sys);
    if (stepper.current_state()[0] <= 0.0) {
      State tmp;
      auto a_at = [&](double s) {
        stepper.calc_state(s, tmp);
        return tmp[0];
      };
      double lo = s0, hi = s1;
      while (hi - lo > tol.fbvp_event_tol) {
        double mid = 0.5 * (lo + hi);
        if (a_at(mid) > 0.0) lo = mid; else hi = mid;
      }
      T = 0.5 * (lo + hi);
      stepper.calc_state(T, at_T);
      break;
    }
    if (s1 > tol.fbvp_max_time) {
      throw NumericalError("free-boundary event not found before s = " +
                           std::to_string(tol.fbvp_max_time));
    }
  }
  sol.T = T;
  sol.b = -std::expm1(-T);
  const double eT = std::exp(-T);
  sol.cs = eT * at_T[2];
  sol.pi = (1.0 - sol.b) * top_pi + eT * at_T[3];

  // Pass 2: replay the same steps and sample on a grid equispaced in u.
  const int n = std::max(2, tol.fbvp_samples) + 1;
  sol.samples.resize(static_cast<std::size_t>(n));
  auto replay = make_stepper(tol);
  replay.initialize(start, 0.0, 1e-4);
  State y;
  for (int i = n - 1; i >= 0; --i) {
    double u = sol.b * i / (n - 1);
    double s = i == 0 ? T : (i == n - 1 ? 0.0 : T + std::log1p(-u));
    while (replay.current_time() < s) replay.do_step(sys);
    if (s == 0.0) y = start; else replay.calc_state(s, y);
    FbvpSample& smp = sol.samples[static_cast<std::size_t>(i)];
    smp.u = u;
    smp.A = y[0];
    smp.Q = y[1];
    smp.x = sys.quality(y[0], y[1]);
    smp.phi = cost.cp(smp.x);
  }
  sol.samples.back().u = sol.b;
  sol.el_residual_max = el_residual(sol, cost, k);
  return sol;
}

double el_residual(const FbvpSolution& sol, const CostModel& cost,
                   const WelfareWeight& k) {
  double worst = 0.0;
  const double kk = k.k();
  for (std::size_t i = 1; i + 1 < sol.samples.size(); ++i) {
    const FbvpSample& s = sol.samples[i];
    double x = pointwise_quality_profit(s.phi, cost).q;
    double h = kk * s.A + kk * (s.Q - s.phi) / cost.cpp(x) + (1.0 - 2.0 * kk) * x;
    worst = std::max(worst, std::fabs(h));
  }
  return worst;
}

QuantileFn to_market(const FbvpSolution& sol) {
  if (sol.degenerate || sol.samples.size() < 2) return QuantileFn::point_mass(1.0);
  std::vector<double> u, v;
  for (const FbvpSample& s : sol.samples) {
    u.push_back(s.u);
    v.push_back(std::clamp(s.Q, 0.0, 1.0));
  }
  v.back() = 1.0;
  if (sol.b < 1.0) {
    u.push_back(1.0);
    v.push_back(1.0);
  }
  return QuantileFn::interpolate(u, v);
}

}  // namespace marketcomp
