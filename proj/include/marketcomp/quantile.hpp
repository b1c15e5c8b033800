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

#ifndef MARKETCOMP_QUANTILE_HPP_
#define MARKETCOMP_QUANTILE_HPP_

#include <vector>

#include "marketcomp/piecewise.hpp"

namespace marketcomp {

// Lower quantile of a market composition on [0, 1]. Left-continuous; Q(0) is
// the right limit. Values lie in [0, 1] and are nondecreasing.
class QuantileFn {
 public:
  explicit QuantileFn(Piecewise pw);
  explicit QuantileFn(std::vector<Segment> segments)
      : QuantileFn(Piecewise(std::move(segments))) {}

  double operator()(double u) const { return pw_.eval(u, Side::kLeft); }
  double right_limit(double u) const { return pw_.eval(u, Side::kRight); }
  const Piecewise& pw() const { return pw_; }
  const std::vector<Segment>& segments() const { return pw_.segments(); }

  double integral(double lo, double hi) const { return pw_.integrate(lo, hi); }
  double mean() const { return pw_.integrate(0.0, 1.0); }
  // Lower end of the support.
  double lowest() const { return pw_.eval(0.0, Side::kRight); }
  // inf{u : Q(u) >= v}; 1 when v exceeds the support.
  double rank_of(double v) const;
  // Mass of the atom at 1.
  double top_mass() const;

  // Conditional law on the rank band [lo, hi], rescaled to [0, 1].
  QuantileFn band(double lo, double hi) const;

  static QuantileFn point_mass(double v);
  // values[i] on (cuts[i], cuts[i+1]], cuts run from 0 to 1.
  static QuantileFn steps(const std::vector<double>& cuts,
                          const std::vector<double>& values);
  static QuantileFn uniform(double lo, double hi);
  // Linear interpolation through (u[i], v[i]); u runs from 0 to 1.
  static QuantileFn interpolate(const std::vector<double>& u,
                                const std::vector<double>& v);
  // (1 - theta) delta_0 + theta G.
  static QuantileFn radial(const QuantileFn& q, double theta);

 private:
  Piecewise pw_;
};

// Ironed virtual value: nondecreasing, right-continuous, at most 1.
class VirtualValueProfile {
 public:
  explicit VirtualValueProfile(Piecewise pw);
  explicit VirtualValueProfile(std::vector<Segment> segments)
      : VirtualValueProfile(Piecewise(std::move(segments))) {}

  double operator()(double u) const { return pw_.eval(u, Side::kRight); }
  const Piecewise& pw() const { return pw_; }
  const std::vector<Segment>& segments() const { return pw_.segments(); }

  static VirtualValueProfile steps(const std::vector<double>& cuts,
                                   const std::vector<double>& values);

 private:
  Piecewise pw_;
};

// Nondecreasing check shared by both wrappers; analytic pieces are sampled.
bool is_nondecreasing(const Piecewise& pw, double tol, double* where = nullptr);

}  // namespace marketcomp

#endif  // MARKETCOMP_QUANTILE_HPP_
