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

#ifndef MARKETCOMP_PIECEWISE_HPP_
#define MARKETCOMP_PIECEWISE_HPP_

#include <string>
#include <vector>

namespace marketcomp {

// v(u) = sum_n coefs[n - min_power] * (pole - u)^n.
//
// The family contains the equal-revenue laws shift + a / (1 - u) and is
// closed under affine changes of the rank variable and under the
// virtual-value map v -> v - (1 - u) v'. Integrals are exact.
struct LaurentForm {
  double pole = 1.0;
  int min_power = 0;
  std::vector<double> coefs;

  double eval(double u) const;
  double derivative(double u) const;
  // F with F' = v. Uses a log term for the power -1.
  double antiderivative(double u) const;
  // v - (1 - u) v'.
  LaurentForm virtual_value() const;
  // Form of v(u) expressed in u' = alpha + beta * u.
  LaurentForm affine(double alpha, double beta) const;
  bool has_negative_powers() const;
  void trim();
};

LaurentForm equal_revenue_form(double a, double shift = 0.0,
                               double pole = 1.0);

enum class Interp { kConstant, kLinear, kAnalytic };

const char* interp_name(Interp interp);
Interp parse_interp(const std::string& name);

// One piece on [u0, u1]. For analytic pieces v0 and v1 cache the endpoint
// limits of the form.
struct Segment {
  double u0 = 0.0;
  double u1 = 1.0;
  Interp interp = Interp::kConstant;
  double v0 = 0.0;
  double v1 = 0.0;
  LaurentForm form;

  double eval(double u) const;
  double integral(double a, double b) const;
  double slope() const { return (v1 - v0) / (u1 - u0); }
  double length() const { return u1 - u0; }
};

Segment constant_segment(double u0, double u1, double v);
Segment linear_segment(double u0, double u1, double v0, double v1);
Segment analytic_segment(double u0, double u1, LaurentForm form);

enum class Side { kLeft, kRight };

// Segments tile [0, 1] in order. Evaluation at a breakpoint takes the left or
// right limit as requested; at u = 0 and u = 1 the only available limit is
// used.
class Piecewise {
 public:
  Piecewise() = default;
  explicit Piecewise(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  double eval(double u, Side side) const;
  // Index of the segment that owns u under the given side convention.
  std::size_t locate(double u, Side side) const;
  double integrate(double lo, double hi) const;
  // All segment endpoints, including 0 and 1.
  std::vector<double> breakpoints() const;
  double min_value() const;
  double max_value() const;
  // Merges neighbours that are both constant at the same value.
  Piecewise simplified(double tol) const;
  // Same function carried to the image of u' = alpha + beta * u, beta > 0.
  std::vector<Segment> affine_segments(double alpha, double beta) const;
  // Pieces restricted to [lo, hi], lo < hi.
  std::vector<Segment> clipped(double lo, double hi) const;

 private:
  std::vector<Segment> segments_;
};

// Exact on constant, linear and analytic pieces.
double integrate_piecewise(const Piecewise& f, double lo, double hi);

}  // namespace marketcomp

#endif  // MARKETCOMP_PIECEWISE_HPP_
