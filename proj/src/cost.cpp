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

#include "marketcomp/cost.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "marketcomp/config.hpp"
#include "marketcomp/numerics.hpp"
#include "marketcomp/payoff.hpp"

namespace marketcomp {

namespace {

double poly_eval(const std::vector<double>& a, int deriv, double q) {
  double s = 0.0;
  for (std::size_t i = static_cast<std::size_t>(deriv); i < a.size(); ++i) {
    double f = 1.0;
    for (int d = 0; d < deriv; ++d) f *= static_cast<double>(i - d);
    s += a[i] * f * std::pow(q, static_cast<double>(i - deriv));
  }
  return s;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad number in cost spec: " + item);
    }
    if (used != item.size()) {
      throw ValidationError("bad number in cost spec: " + item);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

WelfareWeight::WelfareWeight(double k) : k_(k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw ValidationError("welfare weight k must lie in [0, 1]");
  }
}

double CostModel::c(double q) const {
  switch (kind_) {
    case CostKind::kQuadratic:
      return 0.5 * q * q;
    case CostKind::kElasticity:
      return std::pow(q, eta_) / eta_;
    case CostKind::kGeneric:
      return poly_eval(poly_, 0, q);
    case CostKind::kLinear:
      return m_ * q;
  }
  return 0.0;
}

double CostModel::cp(double q) const {
  switch (kind_) {
    case CostKind::kQuadratic:
      return q;
    case CostKind::kElasticity:
      return std::pow(q, eta_ - 1.0);
    case CostKind::kGeneric:
      return poly_eval(poly_, 1, q);
    case CostKind::kLinear:
      return m_;
  }
  return 0.0;
}

double CostModel::cpp(double q) const {
  switch (kind_) {
    case CostKind::kQuadratic:
      return 1.0;
    case CostKind::kElasticity:
      return (eta_ - 1.0) * std::pow(q, eta_ - 2.0);
    case CostKind::kGeneric:
      return poly_eval(poly_, 2, q);
    case CostKind::kLinear:
      return 0.0;
  }
  return 0.0;
}

double CostModel::cppp(double q) const {
  switch (kind_) {
    case CostKind::kQuadratic:
      return 0.0;
    case CostKind::kElasticity:
      return (eta_ - 1.0) * (eta_ - 2.0) * std::pow(q, eta_ - 3.0);
    case CostKind::kGeneric:
      return poly_eval(poly_, 3, q);
    case CostKind::kLinear:
      return 0.0;
  }
  return 0.0;
}

double CostModel::cp_inverse(double z) const {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return qbar_;
  switch (kind_) {
    case CostKind::kQuadratic:
      return z;
    case CostKind::kElasticity:
      return std::pow(z, 1.0 / (eta_ - 1.0));
    case CostKind::kGeneric:
      return bisect([&](double q) { return cp(q) - z; }, 0.0, qbar_, 200);
    case CostKind::kLinear:
      throw ValidationError("linear cost has no marginal-cost inverse");
  }
  return 0.0;
}

std::string CostModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case CostKind::kQuadratic:
      return "quadratic";
    case CostKind::kElasticity:
      os << "elasticity:" << eta_;
      return os.str();
    case CostKind::kLinear:
      os << "linear:" << m_ << "," << capacity_;
      return os.str();
    case CostKind::kGeneric:
      os << "generic:";
      for (std::size_t i = 2; i < poly_.size(); ++i) {
        if (i > 2) os << ",";
        os << poly_[i];
      }
      return os.str();
  }
  return "quadratic";
}

CostModel make_cost(CostKind kind, const std::vector<double>& params) {
  CostModel m;
  m.kind_ = kind;
  switch (kind) {
    case CostKind::kQuadratic:
      if (!params.empty()) {
        throw ValidationError("quadratic cost takes no parameters");
      }
      m.qbar_ = 1.0;
      return m;
    case CostKind::kElasticity:
      if (params.size() != 1) {
        throw ValidationError("elasticity cost takes one parameter");
      }
      if (!(params[0] > 1.0) || !std::isfinite(params[0])) {
        throw ValidationError("elasticity exponent must exceed 1");
      }
      m.eta_ = params[0];
      m.qbar_ = 1.0;
      return m;
    case CostKind::kLinear:
      if (params.size() != 2) {
        throw ValidationError("linear cost takes (M, Qbar)");
      }
      if (!(params[0] >= 0.0 && params[0] < 1.0)) {
        throw ValidationError("linear cost needs M in [0, 1)");
      }
      if (!(params[1] > 0.0) || !std::isfinite(params[1])) {
        throw ValidationError("linear cost needs Qbar > 0");
      }
      m.m_ = params[0];
      m.capacity_ = params[1];
      m.qbar_ = params[1];
      return m;
    case CostKind::kGeneric:
      break;
  }

  if (params.size() < 3) {
    throw ValidationError("generic cost needs coefficients up to q^2");
  }
  if (params[0] != 0.0 || params[1] != 0.0) {
    throw ValidationError("generic cost needs c(0) = 0 and c'(0) = 0");
  }
  m.poly_ = params;
  // c' is increasing near 0 when convex, so it crosses 1 exactly once.
  double hi = 1.0;
  while (m.cp(hi) < 1.0) {
    hi *= 2.0;
    if (hi > 1e6) throw ValidationError("generic cost: c' never reaches 1");
  }
  m.qbar_ = bisect([&](double q) { return m.cp(q) - 1.0; }, 0.0, hi, 200);
  double prev = m.cp(0.0);
  for (int i = 1; i <= 1000; ++i) {
    double q = m.qbar_ * i / 1000.0;
    if (!(m.cpp(q) > 0.0)) {
      throw ValidationError("generic cost must have c'' > 0 on (0, qbar]");
    }
    double now = m.cp(q);
    if (!(now > prev)) {
      throw ValidationError("generic cost: c' must be strictly increasing");
    }
    prev = now;
  }
  if (!(max_curvature_ratio(m) < 2.0)) {
    throw ValidationError("generic cost violates the curvature bound");
  }
  return m;
}

CostModel parse_cost(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "quadratic" && tail.empty()) {
    return make_cost(CostKind::kQuadratic);
  }
  if (head == "elasticity") return make_cost(CostKind::kElasticity, parse_list(tail));
  if (head == "linear") return make_cost(CostKind::kLinear, parse_list(tail));
  if (head == "generic") {
    std::string text = tail;
    std::ifstream in(tail);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
      for (char& ch : text) {
        if (ch == '\n' || ch == ' ' || ch == '\t' || ch == '\r') ch = ',';
      }
      std::string squeezed;
      for (char ch : text) {
        if (ch == ',' && (squeezed.empty() || squeezed.back() == ',')) continue;
        squeezed.push_back(ch);
      }
      if (!squeezed.empty() && squeezed.back() == ',') squeezed.pop_back();
      text = squeezed;
    }
    std::vector<double> coefs{0.0, 0.0};
    for (double v : parse_list(text)) coefs.push_back(v);
    return make_cost(CostKind::kGeneric, coefs);
  }
  throw ValidationError("unknown cost spec: " + spec);
}

double max_curvature_ratio(const CostModel& cost, int points) {
  double worst = -INFINITY;
  const double lo = std::log(1e-6 * cost.qbar()), hi = std::log(cost.qbar());
  for (int i = 1; i <= points; ++i) {
    double q = std::exp(lo + (hi - lo) * i / points);
    worst = std::max(worst, -q * cost.cppp(q) / cost.cpp(q));
  }
  return worst;
}

}  // namespace marketcomp
