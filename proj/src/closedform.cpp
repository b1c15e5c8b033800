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

#include "marketcomp/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "marketcomp/numerics.hpp"

namespace marketcomp {

namespace {

// theta / 2 - sin(2 theta) / 4, with a series near 0.
double half_minus_sin(double theta) {
  if (theta < 1e-2) {
    double t3 = theta * theta * theta;
    return t3 / 3.0 - t3 * theta * theta / 15.0 +
           2.0 * t3 * t3 * theta / 315.0;
  }
  return theta / 2.0 - std::sin(2.0 * theta) / 4.0;
}

}  // namespace

QuadraticSolution quadratic_optimal(const WelfareWeight& w) {
  if (w.degenerate()) {
    throw ValidationError("quadratic closed form needs k > 1/2");
  }
  const double k = w.k();
  QuadraticSolution s;
  s.k = k;
  s.lambda = w.lambda();
  const double p = k + 1.0, q = 3.0 * k - 1.0;
  s.omega = 0.5 * std::sqrt(p / q);
  s.eta = std::sqrt(q / p) / k;
  s.sigma = (1.0 - k) / std::sqrt(p * q);
  s.rho = std::sqrt(q / p);
  s.theta = std::atan((2.0 * k - 1.0) * std::sqrt(p / q));
  s.T = s.theta / s.omega;
  s.b = -std::expm1(-s.T);
  s.m = std::exp(-s.T);
  const double th = s.theta, sg = s.sigma;
  const double sin_th = std::sin(th);
  s.cs = s.m * (s.rho + sg) / s.omega *
         (0.5 * sin_th * sin_th - sg * half_minus_sin(th));
  // sin(2 th) / 4 is written as th / 2 - half_minus_sin(th).
  const double mix = (1.0 + sg * sg) * th / 2.0 +
                     (1.0 - sg * sg) * (th / 2.0 - half_minus_sin(th));
  s.pi = s.m / 2.0 + s.m / (2.0 * s.omega) * (mix - sg * sin_th * sin_th);
  return s;
}

double QuadraticSolution::phi(double u) const {
  if (u >= b) return 1.0;
  double tau = std::log((1.0 - u) / (1.0 - b));
  return std::sqrt((1.0 - b) / (1.0 - u)) *
         (std::cos(omega * tau) - sigma * std::sin(omega * tau));
}

double QuadraticSolution::Q(double u) const {
  if (u >= b) return 1.0;
  double tau = std::log((1.0 - u) / (1.0 - b));
  return std::sqrt((1.0 - b) / (1.0 - u)) *
         (std::cos(omega * tau) + rho * std::sin(omega * tau));
}

double QuadraticSolution::A(double u) const {
  if (u >= b) return lambda;
  double tau = std::log((1.0 - u) / (1.0 - b));
  return std::sqrt((1.0 - b) / (1.0 - u)) *
         (lambda * std::cos(omega * tau) - eta * std::sin(omega * tau));
}

QuantileFn QuadraticSolution::market(int n) const {
  if (!(b > 0.0)) return QuantileFn::point_mass(1.0);
  std::vector<double> u, v;
  for (int i = 0; i <= n; ++i) {
    double x = b * i / n;
    u.push_back(x);
    v.push_back(i == n ? 1.0 : std::min(1.0, Q(x)));
  }
  u.push_back(1.0);
  v.push_back(1.0);
  return QuantileFn::interpolate(u, v);
}

LinearSolution linear_optimal(const WelfareWeight& w, double m, double qbar) {
  if (!(m >= 0.0 && m < 1.0)) throw ValidationError("linear cost needs M in [0, 1)");
  if (!(qbar > 0.0)) throw ValidationError("linear cost needs Qbar > 0");
  const double k = w.k();
  const double a = qbar * (1.0 - m);
  LinearSolution s;
  if (w.degenerate()) {
    s.r = 1.0;
    s.payoff = PayoffPoint::of(0.0, a);
    s.V = (1.0 - k) * a;
    return s;
  }
  const double lambda = w.lambda();
  const double decay = std::exp(-lambda);
  s.r = m + (1.0 - m) * decay;
  s.b = -std::expm1(-lambda);
  s.market = QuantileFn(std::vector<Segment>{
      analytic_segment(0.0, s.b, equal_revenue_form(s.r - m, m)),
      constant_segment(s.b, 1.0, 1.0)});
  const double pi = a * decay;
  s.payoff = PayoffPoint::of(pi * lambda, pi);
  s.V = k * a * decay;
  return s;
}

double linear_boundary(double pi, double m, double qbar) {
  const double a = qbar * (1.0 - m);
  if (pi < -1e-12 || pi > a * (1.0 + 1e-12)) {
    throw ValidationError("profit outside [0, Qbar (1 - M)]");
  }
  if (pi <= 0.0) return 0.0;
  return pi * std::log(a / std::min(pi, a));
}

ElasticitySolution::ElasticitySolution(const WelfareWeight& w, double eta,
                                       const Tolerances& tol)
    : eta_(eta), lambda_(0.0) {
  if (!(eta > 1.0)) throw ValidationError("elasticity exponent must exceed 1");
  if (w.degenerate()) throw ValidationError("elasticity closed form needs k > 1/2");
  lambda_ = w.lambda();
  const double e = eta, l = lambda_;
  auto den = [=](double s) { return 1.0 + (e - 1.0 - l) * s + s * s; };
  auto f = [=](double s) { return (1.0 + l + (e - 2.0) * s) / den(s); };
  auto g = [=](double s) { return (1.0 + s) / den(s); };

  const int n = std::max(8, tol.elasticity_table);
  nodes_ = linspace(0.0, l, static_cast<std::size_t>(n));
  cum_f_.assign(nodes_.size(), 0.0);
  log_x_.assign(nodes_.size(), 0.0);
  f_.assign(nodes_.size(), 0.0);
  g_.assign(nodes_.size(), 0.0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    f_[i] = f(nodes_[i]);
    g_[i] = -g(nodes_[i]);
    if (i == 0) continue;
    cum_f_[i] = cum_f_[i - 1] + quad(f, nodes_[i - 1], nodes_[i], tol.quad);
    log_x_[i] = log_x_[i - 1] - quad(g, nodes_[i - 1], nodes_[i], tol.quad);
  }
  T_ = quad(f, 0.0, l, tol.quad);
  b_ = -std::expm1(-T_);
  vlow_ = Qhat(l);
}

double ElasticitySolution::hermite(const std::vector<double>& y,
                                   const std::vector<double>& dy,
                                   double z) const {
  if (z <= 0.0) return y.front();
  if (z >= lambda_) return y.back();
  std::size_t i = static_cast<std::size_t>(z / lambda_ * (nodes_.size() - 1));
  i = std::min(i, nodes_.size() - 2);
  double h = nodes_[i + 1] - nodes_[i];
  double t = (z - nodes_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * dy[i] +
         (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * dy[i + 1];
}

double ElasticitySolution::xhat(double z) const {
  return std::exp(hermite(log_x_, g_, z));
}

double ElasticitySolution::Qhat(double z) const {
  return std::pow(xhat(z), eta_ - 1.0) * (1.0 + (eta_ - 1.0) * z);
}

double ElasticitySolution::t_of_z(double z) const {
  return T_ - hermite(cum_f_, f_, z);
}

double ElasticitySolution::z_of_u(double u) const {
  if (u <= 0.0) return lambda_;
  if (u >= b_) return 0.0;
  double target = -std::log1p(-u);
  return find_root([&](double z) { return t_of_z(z) - target; }, 0.0, lambda_);
}

double ElasticitySolution::Q(double u) const {
  if (u >= b_) return 1.0;
  return Qhat(z_of_u(u));
}

QuantileFn ElasticitySolution::market(int n) const {
  std::vector<double> u, v;
  for (int i = 0; i <= n; ++i) {
    double x = b_ * i / n;
    u.push_back(x);
    v.push_back(i == n ? 1.0 : std::min(1.0, Q(x)));
  }
  u.push_back(1.0);
  v.push_back(1.0);
  return QuantileFn::interpolate(u, v);
}

ElasticitySolution elasticity_optimal(const WelfareWeight& k, double eta,
                                      const Tolerances& tol) {
  return ElasticitySolution(k, eta, tol);
}

}  // namespace marketcomp
