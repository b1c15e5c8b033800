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

#ifndef MARKETCOMP_CLOSEDFORM_HPP_
#define MARKETCOMP_CLOSEDFORM_HPP_

#include <vector>

#include "marketcomp/config.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

// Quadratic cost c(q) = q^2 / 2, k in (1/2, 1].
struct QuadraticSolution {
  double k = 1.0;
  double lambda = 1.0;
  double omega = 0.5;
  double eta = 1.0;
  double sigma = 0.0;
  double rho = 1.0;
  double theta = 0.0;
  double T = 0.0;
  double b = 0.0;
  double m = 1.0;  // top atom mass 1 - b
  double cs = 0.0;
  double pi = 0.5;

  double phi(double u) const;
  double Q(double u) const;
  double A(double u) const;
  // Interior sampled at n + 1 equispaced ranks on [0, b], then the top atom.
  QuantileFn market(int n = 1024) const;
};

QuadraticSolution quadratic_optimal(const WelfareWeight& k);

struct LinearSolution {
  double r = 1.0;
  double b = 0.0;
  QuantileFn market = QuantileFn::point_mass(1.0);
  PayoffPoint payoff;
  double V = 0.0;
};

LinearSolution linear_optimal(const WelfareWeight& k, double m, double qbar);

// f(pi) = pi ln(A / pi) with A = qbar (1 - M); f(0) = 0.
double linear_boundary(double pi, double m, double qbar);

// Constant-elasticity cost c(q) = q^eta / eta, k in (1/2, 1].
class ElasticitySolution {
 public:
  ElasticitySolution(const WelfareWeight& k, double eta, const Tolerances& tol);

  double eta() const { return eta_; }
  double lambda() const { return lambda_; }
  double T() const { return T_; }
  double b() const { return b_; }
  double vlow() const { return vlow_; }

  // x_hat(z) = exp(-int_0^z (1 + s) / (1 + (eta - 1 - lambda) s + s^2) ds).
  double xhat(double z) const;
  // x_hat(z)^(eta - 1) (1 + (eta - 1) z).
  double Qhat(double z) const;
  // int_z^lambda f_eta; equals -ln(1 - u) along the interior.
  double t_of_z(double z) const;
  double z_of_u(double u) const;
  double Q(double u) const;
  QuantileFn market(int n = 1024) const;

 private:
  double hermite(const std::vector<double>& y, const std::vector<double>& dy,
                 double z) const;

  double eta_, lambda_, T_ = 0.0, b_ = 0.0, vlow_ = 1.0;
  std::vector<double> nodes_, cum_f_, f_, log_x_, g_;
};

ElasticitySolution elasticity_optimal(const WelfareWeight& k, double eta,
                                      const Tolerances& tol = {});

}  // namespace marketcomp

#endif  // MARKETCOMP_CLOSEDFORM_HPP_
