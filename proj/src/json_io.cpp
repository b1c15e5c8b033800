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

#include "marketcomp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "marketcomp/config.hpp"

namespace marketcomp {

namespace {

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(std::string("segment field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

LaurentForm form_from_json(const Json& seg) {
  std::string name = seg.value("form", std::string("laurent"));
  if (!seg.contains("params") || !seg.at("params").is_array()) {
    throw ValidationError("analytic segment needs a params array");
  }
  std::vector<double> p;
  for (const Json& x : seg.at("params")) {
    if (!x.is_number()) throw ValidationError("params must be numbers");
    p.push_back(x.get<double>());
  }
  if (name == "equal_revenue") {
    if (p.size() < 1 || p.size() > 3) {
      throw ValidationError("equal_revenue params are [a, shift, pole]");
    }
    return equal_revenue_form(p[0], p.size() > 1 ? p[1] : 0.0, p.size() > 2 ? p[2] : 1.0);
  }
  if (name == "laurent") {
    if (p.size() < 3 || p[1] != std::floor(p[1])) {
      throw ValidationError("laurent params are [pole, min_power, coefs...]");
    }
    LaurentForm f;
    f.pole = p[0];
    f.min_power = static_cast<int>(p[1]);
    f.coefs.assign(p.begin() + 2, p.end());
    return f;
  }
  throw ValidationError("unknown analytic form: " + name);
}

}  // namespace

Json piecewise_to_json(const Piecewise& pw) {
  Json segs = Json::array();
  for (const Segment& s : pw.segments()) {
    Json j;
    j["u0"] = s.u0;
    j["u1"] = s.u1;
    j["interp"] = interp_name(s.interp);
    j["v0"] = s.v0;
    j["v1"] = s.v1;
    if (s.interp == Interp::kAnalytic) {
      j["form"] = "laurent";
      Json p = Json::array({s.form.pole, s.form.min_power});
      for (double c : s.form.coefs) p.push_back(c);
      j["params"] = p;
    }
    segs.push_back(j);
  }
  Json out;
  out["segments"] = segs;
  return out;
}

Piecewise piecewise_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array()) {
    throw ValidationError("expected an object with a segments array");
  }
  std::vector<Segment> segs;
  for (const Json& s : j.at("segments")) {
    if (!s.is_object()) throw ValidationError("segment must be an object");
    if (!s.contains("interp") || !s.at("interp").is_string()) {
      throw ValidationError("segment needs an interp tag");
    }
    Interp interp = parse_interp(s.at("interp").get<std::string>());
    double u0 = number(s, "u0"), u1 = number(s, "u1");
    switch (interp) {
      case Interp::kConstant:
        segs.push_back(constant_segment(u0, u1, number(s, "v0")));
        break;
      case Interp::kLinear:
        segs.push_back(linear_segment(u0, u1, number(s, "v0"), number(s, "v1")));
        break;
      case Interp::kAnalytic: {
        // Keep the tag even when the form reduces to a constant.
        Segment seg;
        seg.u0 = u0;
        seg.u1 = u1;
        seg.interp = Interp::kAnalytic;
        seg.form = form_from_json(s);
        seg.form.trim();
        segs.push_back(seg);
        break;
      }
    }
  }
  return Piecewise(std::move(segs));
}

Json market_to_json(const QuantileFn& q) { return piecewise_to_json(q.pw()); }

QuantileFn market_from_json(const Json& j) { return QuantileFn(piecewise_from_json(j)); }

Json payoff_to_json(const PayoffPoint& p) {
  Json j;
  j["cs"] = p.cs;
  j["pi"] = p.pi;
  j["ts"] = p.ts;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

QuantileFn read_market_file(const std::string& path) {
  return market_from_json(read_json_file(path));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
}

}  // namespace marketcomp
