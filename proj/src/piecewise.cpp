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

#include "marketcomp/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "marketcomp/config.hpp"

namespace marketcomp {

double LaurentForm::eval(double u) const {
  double w = pole - u;
  double s = 0.0;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    if (coefs[i] == 0.0) continue;
    s += coefs[i] * std::pow(w, min_power + static_cast<int>(i));
  }
  return s;
}

double LaurentForm::derivative(double u) const {
  double w = pole - u;
  double s = 0.0;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    int n = min_power + static_cast<int>(i);
    if (coefs[i] == 0.0 || n == 0) continue;
    s -= n * coefs[i] * std::pow(w, n - 1);
  }
  return s;
}

double LaurentForm::antiderivative(double u) const {
  double w = pole - u;
  double s = 0.0;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    int n = min_power + static_cast<int>(i);
    if (coefs[i] == 0.0) continue;
    if (n == -1) {
      s -= coefs[i] * std::log(w);
    } else {
      s -= coefs[i] * std::pow(w, n + 1) / (n + 1);
    }
  }
  return s;
}

LaurentForm LaurentForm::virtual_value() const {
  // Coefficient of w^p in v - (1 - u) v' is (1 + p) (a_p - d a_{p+1}) with
  // d = pole - 1; the w^-1 term always vanishes.
  const double d = pole - 1.0;
  LaurentForm out;
  out.pole = pole;
  out.min_power = min_power - 1;
  int max_power = min_power + static_cast<int>(coefs.size()) - 1;
  auto a = [&](int p) {
    if (p < min_power || p > max_power) return 0.0;
    return coefs[static_cast<std::size_t>(p - min_power)];
  };
  for (int p = out.min_power; p <= max_power; ++p) {
    out.coefs.push_back((1.0 + p) * (a(p) - d * a(p + 1)));
  }
  out.trim();
  return out;
}

LaurentForm LaurentForm::affine(double alpha, double beta) const {
  LaurentForm out = *this;
  out.pole = alpha + beta * pole;
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    out.coefs[i] = coefs[i] * std::pow(beta, -(min_power + static_cast<int>(i)));
  }
  return out;
}

bool LaurentForm::has_negative_powers() const {
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    if (min_power + static_cast<int>(i) < 0 && coefs[i] != 0.0) return true;
  }
  return false;
}

void LaurentForm::trim() {
  while (!coefs.empty() && coefs.front() == 0.0) {
    coefs.erase(coefs.begin());
    ++min_power;
  }
  while (!coefs.empty() && coefs.back() == 0.0) coefs.pop_back();
  if (coefs.empty()) {
    min_power = 0;
    coefs.push_back(0.0);
  }
}

LaurentForm equal_revenue_form(double a, double shift, double pole) {
  LaurentForm f;
  f.pole = pole;
  f.min_power = -1;
  f.coefs = {a, shift};
  f.trim();
  return f;
}

const char* interp_name(Interp interp) {
  switch (interp) {
    case Interp::kConstant:
      return "constant";
    case Interp::kLinear:
      return "linear";
    case Interp::kAnalytic:
      return "analytic";
  }
  return "constant";
}

Interp parse_interp(const std::string& name) {
  if (name == "constant") return Interp::kConstant;
  if (name == "linear") return Interp::kLinear;
  if (name == "analytic") return Interp::kAnalytic;
  throw ValidationError("unknown interpolation tag: " + name);
}

double Segment::eval(double u) const {
  switch (interp) {
    case Interp::kConstant:
      return v0;
    case Interp::kLinear:
      if (u1 <= u0) return v0;
      if (u >= u1) return v1;
      return v0 + (v1 - v0) * ((u - u0) / (u1 - u0));
    case Interp::kAnalytic:
      return form.eval(u);
  }
  return v0;
}

double Segment::integral(double a, double b) const {
  if (b <= a) return 0.0;
  switch (interp) {
    case Interp::kConstant:
      return v0 * (b - a);
    case Interp::kLinear:
      return 0.5 * (eval(a) + eval(b)) * (b - a);
    case Interp::kAnalytic:
      return form.antiderivative(b) - form.antiderivative(a);
  }
  return 0.0;
}

Segment constant_segment(double u0, double u1, double v) {
  Segment s;
  s.u0 = u0;
  s.u1 = u1;
  s.interp = Interp::kConstant;
  s.v0 = s.v1 = v;
  return s;
}

Segment linear_segment(double u0, double u1, double v0, double v1) {
  Segment s;
  s.u0 = u0;
  s.u1 = u1;
  s.interp = Interp::kLinear;
  s.v0 = v0;
  s.v1 = v1;
  return s;
}

Segment analytic_segment(double u0, double u1, LaurentForm form) {
  form.trim();
  if (form.min_power == 0 && form.coefs.size() == 1) {
    return constant_segment(u0, u1, form.coefs[0]);
  }
  Segment s;
  s.u0 = u0;
  s.u1 = u1;
  s.interp = Interp::kAnalytic;
  s.form = std::move(form);
  s.v0 = s.form.eval(u0);
  s.v1 = s.form.eval(u1);
  return s;
}

Piecewise::Piecewise(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw ValidationError("piecewise function is empty");
  constexpr double kSnap = 1e-12;
  if (std::fabs(segments_.front().u0) > kSnap ||
      std::fabs(segments_.back().u1 - 1.0) > kSnap) {
    throw ValidationError("segments must tile [0, 1]");
  }
  segments_.front().u0 = 0.0;
  segments_.back().u1 = 1.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    Segment& s = segments_[i];
    if (i > 0) {
      if (std::fabs(s.u0 - segments_[i - 1].u1) > kSnap) {
        throw ValidationError("segments must be contiguous");
      }
      s.u0 = segments_[i - 1].u1;
    }
    if (!(s.u1 > s.u0)) {
      throw ValidationError("segment ranks must be strictly increasing");
    }
    if (s.interp == Interp::kAnalytic) {
      const LaurentForm& f = s.form;
      if (f.has_negative_powers() && !(f.pole > s.u1)) {
        throw ValidationError("analytic segment has a pole inside its range");
      }
      s.v0 = f.eval(s.u0);
      s.v1 = f.eval(s.u1);
    }
    if (!std::isfinite(s.v0) || !std::isfinite(s.v1)) {
      throw ValidationError("segment values must be finite");
    }
  }
}

std::size_t Piecewise::locate(double u, Side side) const {
  const std::size_t n = segments_.size();
  if (side == Side::kLeft) {
    // First segment with u1 >= u.
    auto it = std::lower_bound(
        segments_.begin(), segments_.end(), u,
        [](const Segment& s, double x) { return s.u1 < x; });
    if (it == segments_.end()) return n - 1;
    return static_cast<std::size_t>(it - segments_.begin());
  }
  // First segment with u1 > u.
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), u,
      [](double x, const Segment& s) { return x < s.u1; });
  if (it == segments_.end()) return n - 1;
  return static_cast<std::size_t>(it - segments_.begin());
}

double Piecewise::eval(double u, Side side) const {
  return segments_[locate(u, side)].eval(u);
}

double Piecewise::integrate(double lo, double hi) const {
  if (lo < -1e-15 || hi > 1.0 + 1e-15 || lo > hi + 1e-15) {
    throw ValidationError("integration bounds outside [0, 1]");
  }
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (hi <= lo) return 0.0;
  double total = 0.0;
  for (std::size_t i = locate(lo, Side::kRight); i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (s.u0 >= hi) break;
    total += s.integral(std::max(lo, s.u0), std::min(hi, s.u1));
  }
  return total;
}

std::vector<double> Piecewise::breakpoints() const {
  std::vector<double> out;
  out.reserve(segments_.size() + 1);
  out.push_back(0.0);
  for (const auto& s : segments_) out.push_back(s.u1);
  return out;
}

double Piecewise::min_value() const {
  double m = segments_.front().v0;
  for (const auto& s : segments_) m = std::min({m, s.v0, s.v1});
  return m;
}

double Piecewise::max_value() const {
  double m = segments_.front().v0;
  for (const auto& s : segments_) m = std::max({m, s.v0, s.v1});
  return m;
}

Piecewise Piecewise::simplified(double tol) const {
  std::vector<Segment> out;
  for (const auto& s : segments_) {
    if (!out.empty() && out.back().interp == Interp::kConstant &&
        s.interp == Interp::kConstant && std::fabs(out.back().v0 - s.v0) <= tol) {
      out.back().u1 = s.u1;
      continue;
    }
    out.push_back(s);
  }
  return Piecewise(std::move(out));
}

std::vector<Segment> Piecewise::affine_segments(double alpha,
                                               double beta) const {
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) {
    Segment t = s;
    t.u0 = alpha + beta * s.u0;
    t.u1 = alpha + beta * s.u1;
    if (s.interp == Interp::kAnalytic) t.form = s.form.affine(alpha, beta);
    out.push_back(t);
  }
  return out;
}

std::vector<Segment> Piecewise::clipped(double lo, double hi) const {
  std::vector<Segment> out;
  for (const auto& s : segments_) {
    double a = std::max(lo, s.u0), b = std::min(hi, s.u1);
    if (b <= a) continue;
    Segment t = s;
    t.u0 = a;
    t.u1 = b;
    t.v0 = s.eval(a);
    t.v1 = s.eval(b);
    out.push_back(t);
  }
  return out;
}

double integrate_piecewise(const Piecewise& f, double lo, double hi) {
  return f.integrate(lo, hi);
}

}  // namespace marketcomp
