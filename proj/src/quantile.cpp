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

#include "marketcomp/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "marketcomp/config.hpp"
#include "marketcomp/numerics.hpp"

namespace marketcomp {

namespace {

constexpr double kValueSlack = 1e-9;

}  // namespace

bool is_nondecreasing(const Piecewise& pw, double tol, double* where) {
  const auto& segs = pw.segments();
  auto fail = [&](double u) {
    if (where) *where = u;
    return false;
  };
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (i > 0 && s.v0 < segs[i - 1].v1 - tol) return fail(s.u0);
    if (s.v1 < s.v0 - tol) return fail(s.u0);
    if (s.interp == Interp::kAnalytic) {
      double prev = s.v0;
      for (int j = 1; j <= 64; ++j) {
        double u = s.u0 + (s.u1 - s.u0) * j / 64.0;
        double v = s.eval(u);
        if (v < prev - tol) return fail(u);
        prev = v;
      }
    }
  }
  return true;
}

QuantileFn::QuantileFn(Piecewise pw) : pw_(std::move(pw)) {
  if (pw_.min_value() < -kValueSlack || pw_.max_value() > 1.0 + kValueSlack) {
    throw ValidationError("quantile values must lie in [0, 1]");
  }
  double where = 0.0;
  if (!is_nondecreasing(pw_, kValueSlack, &where)) {
    throw ValidationError("quantile must be nondecreasing (fails near u = " +
                          std::to_string(where) + ")");
  }
}

double QuantileFn::rank_of(double v) const {
  for (const Segment& s : pw_.segments()) {
    if (s.v1 < v) continue;
    if (s.v0 >= v) return s.u0;
    if (s.interp == Interp::kLinear) {
      return s.u0 + (v - s.v0) / (s.v1 - s.v0) * (s.u1 - s.u0);
    }
    return find_root([&](double u) { return s.eval(u) - v; }, s.u0, s.u1);
  }
  return 1.0;
}

double QuantileFn::top_mass() const {
  return 1.0 - rank_of(1.0);
}

QuantileFn QuantileFn::band(double lo, double hi) const {
  if (!(hi > lo) || lo < 0.0 || hi > 1.0) {
    throw ValidationError("empty rank band");
  }
  std::vector<Segment> segs = pw_.clipped(lo, hi);
  const double g = hi - lo;
  std::vector<Segment> out;
  for (const Segment& s : segs) {
    Segment t = s;
    t.u0 = (s.u0 - lo) / g;
    t.u1 = (s.u1 - lo) / g;
    if (s.interp == Interp::kAnalytic) t.form = s.form.affine(-lo / g, 1.0 / g);
    out.push_back(t);
  }
  return QuantileFn(std::move(out));
}

QuantileFn QuantileFn::point_mass(double v) {
  return QuantileFn(std::vector<Segment>{constant_segment(0.0, 1.0, v)});
}

QuantileFn QuantileFn::steps(const std::vector<double>& cuts,
                             const std::vector<double>& values) {
  if (cuts.size() != values.size() + 1) {
    throw ValidationError("steps: need one more cut than values");
  }
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    segs.push_back(constant_segment(cuts[i], cuts[i + 1], values[i]));
  }
  return QuantileFn(Piecewise(std::move(segs)).simplified(0.0));
}

QuantileFn QuantileFn::uniform(double lo, double hi) {
  return QuantileFn(std::vector<Segment>{linear_segment(0.0, 1.0, lo, hi)});
}

QuantileFn QuantileFn::interpolate(const std::vector<double>& u,
                                   const std::vector<double>& v) {
  if (u.size() != v.size() || u.size() < 2) {
    throw ValidationError("interpolate: need matching knot lists");
  }
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (v[i + 1] == v[i]) {
      segs.push_back(constant_segment(u[i], u[i + 1], v[i]));
    } else {
      segs.push_back(linear_segment(u[i], u[i + 1], v[i], v[i + 1]));
    }
  }
  return QuantileFn(std::move(segs));
}

QuantileFn QuantileFn::radial(const QuantileFn& q, double theta) {
  if (theta < 0.0 || theta > 1.0) {
    throw ValidationError("radial weight must lie in [0, 1]");
  }
  if (theta == 0.0) return point_mass(0.0);
  if (theta == 1.0) return q;
  std::vector<Segment> segs{constant_segment(0.0, 1.0 - theta, 0.0)};
  for (const Segment& s : q.pw().affine_segments(1.0 - theta, theta)) {
    segs.push_back(s);
  }
  return QuantileFn(std::move(segs));
}

VirtualValueProfile::VirtualValueProfile(Piecewise pw) : pw_(std::move(pw)) {
  if (pw_.max_value() > 1.0 + kValueSlack) {
    throw ValidationError("virtual value must not exceed 1");
  }
  double where = 0.0;
  if (!is_nondecreasing(pw_, kValueSlack, &where)) {
    throw ValidationError("virtual value must be nondecreasing (fails near u = " +
                          std::to_string(where) + ")");
  }
}

VirtualValueProfile VirtualValueProfile::steps(
    const std::vector<double>& cuts, const std::vector<double>& values) {
  if (cuts.size() != values.size() + 1) {
    throw ValidationError("steps: need one more cut than values");
  }
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    segs.push_back(constant_segment(cuts[i], cuts[i + 1], values[i]));
  }
  return VirtualValueProfile(std::move(segs));
}

}  // namespace marketcomp
