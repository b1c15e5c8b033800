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

#ifndef MARKETCOMP_COST_HPP_
#define MARKETCOMP_COST_HPP_

#include <string>
#include <vector>

namespace marketcomp {

enum class CostKind { kGeneric, kQuadratic, kElasticity, kLinear };

// Quality-cost technology. Convex kinds expose c and its first three
// derivatives; the linear kind is described by marginal cost M and capacity
// Qbar instead.
class CostModel {
 public:
  CostKind kind() const { return kind_; }
  bool convex() const { return kind_ != CostKind::kLinear; }
  double qbar() const { return qbar_; }
  double eta() const { return eta_; }
  double marginal() const { return m_; }
  double capacity() const { return capacity_; }
  const std::vector<double>& poly() const { return poly_; }

  double c(double q) const;
  double cp(double q) const;
  double cpp(double q) const;
  double cppp(double q) const;
  // (c')^{-1}(z) for z in [0, 1].
  double cp_inverse(double z) const;

  // Round-trippable spec string, e.g. "elasticity:3".
  std::string describe() const;

  friend CostModel make_cost(CostKind kind, const std::vector<double>& params);

 private:
  CostKind kind_ = CostKind::kQuadratic;
  double qbar_ = 1.0;
  double eta_ = 2.0;
  double m_ = 0.0;
  double capacity_ = 1.0;
  std::vector<double> poly_;
};

// quadratic: no params. elasticity: {eta}, eta > 1. linear: {M, Qbar}.
// generic: polynomial coefficients {c0, c1, c2, ...} of c(q).
CostModel make_cost(CostKind kind, const std::vector<double>& params = {});

// Parses quadratic | elasticity:ETA | linear:M,QBAR | generic:FILE |
// generic:c2,c3,... (coefficients from q^2 upward).
CostModel parse_cost(const std::string& spec);

// Largest -q c'''(q) / c''(q) over a log-spaced grid in (1e-6 qbar, qbar].
double max_curvature_ratio(const CostModel& cost, int points = 1000);

}  // namespace marketcomp

#endif  // MARKETCOMP_COST_HPP_
