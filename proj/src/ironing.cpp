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

#include "marketcomp/ironing.hpp"

#include <algorithm>
#include <cmath>

#include "marketcomp/numerics.hpp"

namespace marketcomp {

namespace {

struct Tag {
  int seg;
  int j;
};

struct HullPoint {
  double u;
  double y;
  Tag tags[2];
  int ntags;
};

struct Facet {
  double u0, u1;
  int seg;  // -1 for chords
  double y0, y1;
};

double seg_revenue(const Segment& s, double u) { return (1.0 - u) * s.eval(u); }

double seg_phi(const Segment& s, double u) {
  switch (s.interp) {
    case Interp::kConstant:
      return s.v0;
    case Interp::kLinear:
      return s.eval(u) - (1.0 - u) * s.slope();
    case Interp::kAnalytic:
      return s.form.eval(u) - (1.0 - u) * s.form.derivative(u);
  }
  return s.v0;
}

Segment phi_segment(const Segment& s, double a, double b) {
  switch (s.interp) {
    case Interp::kConstant:
      return constant_segment(a, b, s.v0);
    case Interp::kLinear: {
      double pa = seg_phi(s, a), pb = seg_phi(s, b);
      if (pa == pb) return constant_segment(a, b, pa);
      return linear_segment(a, b, pa, pb);
    }
    case Interp::kAnalytic:
      return analytic_segment(a, b, s.form.virtual_value());
  }
  return constant_segment(a, b, s.v0);
}

bool smooth(const Segment& s) {
  return s.interp != Interp::kConstant &&
         !(s.interp == Interp::kLinear && s.v0 == s.v1);
}

// Point in [lo, hi] where the arc's virtual value meets m, clamped.
double tangent_point(const Segment& s, double m, double lo, double hi) {
  if (!(hi > lo)) return lo;
  double flo = seg_phi(s, lo) - m;
  if (flo >= 0.0) return lo;
  double fhi = seg_phi(s, hi) - m;
  if (fhi <= 0.0) return hi;
  if (s.interp == Interp::kLinear) {
    double x = lo + (-flo) / (fhi - flo) * (hi - lo);
    return std::clamp(x, lo, hi);
  }
  return bisect([&](double u) { return seg_phi(s, u) - m; }, lo, hi, 200);
}

int sample_count(const Segment& s, int per_linear, const Tolerances& tol) {
  if (!smooth(s)) return 2;
  if (s.interp == Interp::kLinear) return per_linear;
  return std::max(3, tol.hull_analytic_samples + 1);
}

void add_point(std::vector<HullPoint>& pts, double u, double y, Tag tag) {
  if (!pts.empty() && pts.back().u == u) {
    HullPoint& last = pts.back();
    double scale = std::max({1.0, std::fabs(y), std::fabs(last.y)});
    if (std::fabs(y - last.y) <= 1e-15 * scale) {
      if (last.ntags < 2) last.tags[last.ntags++] = tag;
    } else if (y > last.y) {
      last.y = y;
      last.tags[0] = tag;
      last.ntags = 1;
    }
    return;
  }
  pts.push_back(HullPoint{u, y, {tag, tag}, 1});
}

int arc_segment(const HullPoint& a, const HullPoint& b) {
  for (int i = 0; i < a.ntags; ++i) {
    for (int k = 0; k < b.ntags; ++k) {
      if (a.tags[i].seg == b.tags[k].seg && b.tags[k].j == a.tags[i].j + 1) {
        return a.tags[i].seg;
      }
    }
  }
  return -1;
}

std::vector<Facet> upper_hull(const QuantileFn& q, const Tolerances& tol) {
  const auto& segs = q.segments();
  int nlin = 0;
  for (const auto& s : segs) {
    if (s.interp == Interp::kLinear && smooth(s)) ++nlin;
  }
  int per_linear =
      nlin == 0 ? 2 : std::max(3, tol.hull_linear_samples_total / nlin + 1);

  std::vector<HullPoint> pts;
  for (int si = 0; si < static_cast<int>(segs.size()); ++si) {
    const Segment& s = segs[si];
    int n = sample_count(s, per_linear, tol);
    for (int j = 0; j < n; ++j) {
      double u = j == n - 1 ? s.u1 : s.u0 + (s.u1 - s.u0) * j / (n - 1);
      add_point(pts, u, seg_revenue(s, u), Tag{si, j});
    }
  }

  std::vector<HullPoint> hull;
  for (const HullPoint& p : pts) {
    while (hull.size() >= 2) {
      const HullPoint& a = hull[hull.size() - 2];
      const HullPoint& b = hull.back();
      double cross = (b.u - a.u) * (p.y - a.y) - (b.y - a.y) * (p.u - a.u);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }

  std::vector<Facet> facets;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const HullPoint& a = hull[i];
    const HullPoint& b = hull[i + 1];
    int seg = arc_segment(a, b);
    if (seg >= 0 && !facets.empty() && facets.back().seg == seg) {
      facets.back().u1 = b.u;
      facets.back().y1 = b.y;
      continue;
    }
    facets.push_back(Facet{a.u, b.u, seg, a.y, b.y});
  }

  auto is_smooth_arc = [&](const Facet& f) {
    return f.seg >= 0 && smooth(segs[f.seg]);
  };
  // Moves the endpoints of chord i to exact tangency with neighbouring arcs,
  // so the virtual value is continuous across each arc-chord junction.
  auto refine = [&](std::size_t i) {
    Facet& f = facets[i];
    Facet* left = i > 0 && is_smooth_arc(facets[i - 1]) ? &facets[i - 1] : nullptr;
    Facet* right = i + 1 < facets.size() && is_smooth_arc(facets[i + 1])
                       ? &facets[i + 1]
                       : nullptr;
    if (!left && !right) return;
    double p = f.u0, n = f.u1, yp = f.y0, yn = f.y1;
    if (!(n > p)) {
      // Zero-width chord inserted at a convex kink between two arcs.
      double d = 0.5 * std::min(left ? p - left->u0 : 0.0, right ? right->u1 - n : 0.0);
      if (left) {
        p -= d;
        yp = seg_revenue(segs[left->seg], p);
      }
      if (right) {
        n += d;
        yn = seg_revenue(segs[right->seg], n);
      }
      if (!(n > p)) return;
    }
    for (int it = 0; it < 200; ++it) {
      double m = -(yn - yp) / (n - p);
      double np = p, nn = n;
      if (left) {
        const Segment& s = segs[left->seg];
        np = tangent_point(s, m, left->u0, std::min(s.u1, n));
        yp = seg_revenue(s, np);
        m = -(yn - yp) / (n - np);
      }
      if (right) {
        const Segment& s = segs[right->seg];
        nn = tangent_point(s, m, std::max(s.u0, np), right->u1);
        yn = seg_revenue(s, nn);
      }
      bool done = std::fabs(np - p) <= 1e-16 && std::fabs(nn - n) <= 1e-16;
      p = np;
      n = nn;
      if (done || !(n > p)) break;
    }
    if (!(n > p)) return;
    f.u0 = p;
    f.y0 = yp;
    f.u1 = n;
    f.y1 = yn;
    if (left) {
      left->u1 = p;
      left->y1 = yp;
    }
    if (right) {
      right->u0 = n;
      right->y0 = yn;
    }
  };
  auto drop_empty = [&] {
    facets.erase(std::remove_if(facets.begin(), facets.end(),
                                [](const Facet& f) { return !(f.u1 > f.u0); }),
                 facets.end());
  };
  auto phi_at = [&](const Facet& f, double u) {
    if (f.seg < 0) return -(f.y1 - f.y0) / (f.u1 - f.u0);
    return seg_phi(segs[f.seg], u);
  };

  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (facets[i].seg < 0) refine(i);
  }
  drop_empty();

  // Sampling can miss a convex kink narrower than the sample spacing. Repair
  // every junction where the virtual value steps down by more than rounding.
  std::size_t start = 0;
  double last_u = NAN;
  for (std::size_t guard = 0; guard < 8 * facets.size() + 16; ++guard) {
    std::size_t i = start;
    for (; i + 1 < facets.size(); ++i) {
      const Facet& a = facets[i];
      const Facet& b = facets[i + 1];
      double scale = std::max(1.0, std::fabs(phi_at(a, a.u1)));
      if (phi_at(a, a.u1) > phi_at(b, b.u0) + 1e-11 * scale) break;
    }
    if (i + 1 >= facets.size()) break;
    if (facets[i].u1 == last_u) {
      // Already repaired once; what is left cannot be improved here.
      start = i + 1;
      continue;
    }
    last_u = facets[i].u1;
    start = i > 0 ? i - 1 : 0;
    for (std::size_t j : {i, i + 1}) {
      if (facets[j].seg >= 0 && !is_smooth_arc(facets[j])) facets[j].seg = -1;
    }
    Facet& a = facets[i];
    Facet& b = facets[i + 1];
    std::size_t chord = i;
    if (a.seg < 0 && b.seg < 0) {
      a.u1 = b.u1;
      a.y1 = b.y1;
      facets.erase(facets.begin() + static_cast<std::ptrdiff_t>(i + 1));
    } else if (a.seg < 0) {
      chord = i;
    } else if (b.seg < 0) {
      chord = i + 1;
    } else {
      Facet kink{a.u1, a.u1, -1, a.y1, a.y1};
      facets.insert(facets.begin() + static_cast<std::ptrdiff_t>(i + 1), kink);
      chord = i + 1;
    }
    refine(chord);
    drop_empty();
  }
  return facets;
}

}  // namespace

double RevenuePiece::eval(double u) const {
  if (chord) {
    if (u1 <= u0) return r0;
    return r0 + (r1 - r0) * ((u - u0) / (u1 - u0));
  }
  return seg_revenue(source, u);
}

double ConcaveRevenue::operator()(double u) const {
  auto it = std::lower_bound(
      pieces.begin(), pieces.end(), u,
      [](const RevenuePiece& p, double x) { return p.u1 < x; });
  if (it == pieces.end()) return 0.0;
  return it->eval(u);
}

std::vector<double> ConcaveRevenue::chord_slopes() const {
  std::vector<double> out;
  for (const auto& p : pieces) {
    if (p.chord) out.push_back((p.r1 - p.r0) / (p.u1 - p.u0));
  }
  return out;
}

double raw_revenue(const QuantileFn& q, double u) {
  return (1.0 - u) * std::max(q(u), q.right_limit(u));
}

Ironing concavified_revenue(const QuantileFn& q, const Tolerances& tol) {
  const auto& segs = q.segments();
  std::vector<Facet> facets = upper_hull(q, tol);
  ConcaveRevenue revenue;
  std::vector<Segment> phi;
  for (const Facet& f : facets) {
    RevenuePiece piece;
    piece.u0 = f.u0;
    piece.u1 = f.u1;
    piece.r0 = f.y0;
    piece.r1 = f.y1;
    piece.chord = f.seg < 0;
    if (piece.chord) {
      phi.push_back(constant_segment(f.u0, f.u1, -(f.y1 - f.y0) / (f.u1 - f.u0)));
    } else {
      piece.source = segs[f.seg];
      phi.push_back(phi_segment(segs[f.seg], f.u0, f.u1));
    }
    revenue.pieces.push_back(piece);
  }
  return Ironing{std::move(revenue),
                 VirtualValueProfile(Piecewise(std::move(phi)).simplified(0.0))};
}

Truncation truncate_nonneg(const VirtualValueProfile& phi) {
  // Positive part, split at sign changes.
  std::vector<Segment> plus;
  for (const Segment& s : phi.segments()) {
    if (s.v1 <= 0.0) {
      plus.push_back(constant_segment(s.u0, s.u1, 0.0));
      continue;
    }
    if (s.v0 >= 0.0) {
      plus.push_back(s);
      continue;
    }
    double z = s.interp == Interp::kLinear
                   ? s.u0 + (-s.v0) / (s.v1 - s.v0) * (s.u1 - s.u0)
                   : find_root([&](double u) { return s.eval(u); }, s.u0, s.u1);
    if (z > s.u0) plus.push_back(constant_segment(s.u0, z, 0.0));
    if (z < s.u1) {
      Segment t = s;
      t.u0 = z;
      t.v0 = s.interp == Interp::kAnalytic ? s.eval(z) : 0.0;
      plus.push_back(t);
    }
  }
  Piecewise phi_plus = Piecewise(std::move(plus)).simplified(0.0);

  // Tail averages, built from the top down.
  std::vector<Segment> qs;
  double tail = 0.0;
  const auto& ps = phi_plus.segments();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const Segment& s = *it;
    LaurentForm f;
    bool closed = true;
    if (s.interp == Interp::kConstant) {
      f = LaurentForm{1.0, 0, {s.v0}};
    } else if (s.interp == Interp::kLinear) {
      double sl = s.slope();
      f = LaurentForm{1.0, 0, {s.v0 + sl * (1.0 - s.u0), -sl}};
    } else if (s.form.pole == 1.0) {
      f = s.form;
    } else {
      closed = false;
    }
    double w1 = 1.0 - s.u1;
    if (closed) {
      // sum_n b_n / (n + 1) w^n + (tail - sum_n b_n w1^(n+1) / (n + 1)) / w
      LaurentForm g;
      g.pole = 1.0;
      int lo = std::min(-1, f.min_power);
      int hi = f.min_power + static_cast<int>(f.coefs.size()) - 1;
      g.min_power = lo;
      g.coefs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
      double c = tail;
      for (std::size_t i = 0; i < f.coefs.size(); ++i) {
        int n = f.min_power + static_cast<int>(i);
        if (f.coefs[i] == 0.0) continue;
        g.coefs[static_cast<std::size_t>(n - lo)] += f.coefs[i] / (n + 1);
        c -= f.coefs[i] * std::pow(w1, n + 1) / (n + 1);
      }
      if (s.u1 == 1.0) c = 0.0;
      g.coefs[static_cast<std::size_t>(-1 - lo)] += c;
      qs.push_back(analytic_segment(s.u0, s.u1, g));
    } else {
      // Dense linear interpolation of the exact tail average.
      const int n = 256;
      std::vector<Segment> local;
      double prev_u = s.u1;
      double prev_v = s.u1 >= 1.0 ? s.v1 : tail / w1;
      for (int j = n - 1; j >= 0; --j) {
        double u = s.u0 + (s.u1 - s.u0) * j / n;
        double v = (tail + s.integral(u, s.u1)) / (1.0 - u);
        local.push_back(linear_segment(u, prev_u, v, prev_v));
        prev_u = u;
        prev_v = v;
      }
      for (const Segment& t : local) qs.push_back(t);
    }
    tail += s.integral(s.u0, s.u1);
  }
  std::reverse(qs.begin(), qs.end());
  for (Segment& s : qs) {
    if (s.interp == Interp::kAnalytic) {
      s.v0 = s.form.eval(s.u0);
      s.v1 = s.form.eval(s.u1);
    }
  }
  return Truncation{VirtualValueProfile(std::move(phi_plus)),
                    QuantileFn(Piecewise(std::move(qs)).simplified(0.0))};
}

QuantileFn regularize(const QuantileFn& q, const Tolerances& tol) {
  Ironing ir = concavified_revenue(q, tol);
  std::vector<Segment> out;
  for (const RevenuePiece& p : ir.revenue.pieces) {
    if (p.chord) {
      double phi = -(p.r1 - p.r0) / (p.u1 - p.u0);
      double a = p.r0 - phi * (1.0 - p.u0);
      if (p.u1 >= 1.0 || std::fabs(a) <= 1e-15) {
        out.push_back(constant_segment(p.u0, p.u1, phi));
      } else {
        out.push_back(
            analytic_segment(p.u0, p.u1, LaurentForm{1.0, -1, {a, phi}}));
      }
    } else {
      Segment s = p.source;
      s.u0 = p.u0;
      s.u1 = p.u1;
      s.v0 = p.source.eval(p.u0);
      s.v1 = p.source.eval(p.u1);
      out.push_back(s);
    }
  }
  return QuantileFn(Piecewise(std::move(out)).simplified(0.0));
}

}  // namespace marketcomp
