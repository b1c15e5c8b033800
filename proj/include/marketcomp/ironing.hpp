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

#ifndef MARKETCOMP_IRONING_HPP_
#define MARKETCOMP_IRONING_HPP_

#include <vector>

#include "marketcomp/config.hpp"
#include "marketcomp/piecewise.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

// One facet of the least concave majorant: either a chord or an arc on
// which the majorant coincides with the raw curve (1 - u) Q(u) of a single
// source segment.
struct RevenuePiece {
  double u0 = 0.0;
  double u1 = 0.0;
  bool chord = true;
  double r0 = 0.0;
  double r1 = 0.0;
  Segment source;  // arcs only

  double eval(double u) const;
};

struct ConcaveRevenue {
  std::vector<RevenuePiece> pieces;

  double operator()(double u) const;
  // Slopes of consecutive chords, for concavity checks.
  std::vector<double> chord_slopes() const;
};

struct Ironing {
  ConcaveRevenue revenue;
  VirtualValueProfile phi;
};

Ironing concavified_revenue(const QuantileFn& q, const Tolerances& tol = {});

struct Truncation {
  VirtualValueProfile phi_plus;
  QuantileFn q_plus;
};

Truncation truncate_nonneg(const VirtualValueProfile& phi);

QuantileFn regularize(const QuantileFn& q, const Tolerances& tol = {});

// Raw revenue (1 - u) Q(u) using the larger one-sided limit.
double raw_revenue(const QuantileFn& q, double u);

}  // namespace marketcomp

#endif  // MARKETCOMP_IRONING_HPP_
