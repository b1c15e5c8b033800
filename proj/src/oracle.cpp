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

#include "marketcomp/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "marketcomp/config.hpp"
#include "marketcomp/numerics.hpp"
#include "marketcomp/screening.hpp"

namespace marketcomp {

namespace {

constexpr double kBudget = 1e7;

// Cell i contributes pi(z) / n to profit and q(z) D ln((1 - u0) / (1 - u1))
// to surplus, where Q - z = D / (1 - u) inside the cell and D depends only
// on z and the tail sum of later cells.
struct CellTerms {
  double cs = 0.0;
  double pi = 0.0;
};

CellTerms cell_terms(double z, double tail, int i, int n, const QualityProfit& qp) {
  const double u0 = static_cast<double>(i) / n;
  const double u1 = static_cast<double>(i + 1) / n;
  CellTerms t;
  t.pi = qp.pi / n;
  if (i + 1 < n) {
    double d = std::max(tail - z * (1.0 - u1), 0.0);
    t.cs = qp.q * d * (std::log1p(-u0) - std::log1p(-u1));
  }
  return t;
}

void check_levels(const std::vector<double>& levels) {
  if (levels.empty()) throw ValidationError("profile needs at least one cell");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0.0 && levels[i] <= 1.0)) {
      throw ValidationError("profile levels must lie in [0, 1]");
    }
    if (i > 0 && levels[i] < levels[i - 1]) {
      throw ValidationError("profile levels must be nondecreasing");
    }
  }
}

bool better(double j, double best) {
  if (std::isinf(best)) return j > best;
  return j > best + 1e-14 * std::max(1.0, std::fabs(best));
}

// Depth-first search over nondecreasing profiles, filled from the last cell
// down so each cell's term is known once it is placed.
class Enumerator {
 public:
  Enumerator(int n, int m, double k, const std::vector<QualityProfit>& qp)
      : n_(n), m_(m), k_(k), qp_(qp), cur_(static_cast<std::size_t>(n)) {}

  void run(int last_level) {
    cur_[n_ - 1] = last_level;
    CellTerms t = term(last_level, 0.0, n_ - 1);
    visit(n_ - 2, last_level, last_level / static_cast<double>(m_) / n_,
          k_ * t.cs + (1.0 - k_) * t.pi);
  }

  std::vector<int> best_levels;
  double best = -INFINITY;
  double count = 0.0;

 private:
  CellTerms term(int level, double tail, int i) const {
    return cell_terms(level / static_cast<double>(m_), tail, i, n_,
                      qp_[static_cast<std::size_t>(level)]);
  }

  void visit(int i, int cap, double tail, double acc) {
    if (i < 0) {
      count += 1.0;
      if (better(acc, best)) {
        best = acc;
        best_levels = cur_;
      }
      return;
    }
    for (int l = cap; l >= 0; --l) {
      cur_[static_cast<std::size_t>(i)] = l;
      CellTerms t = term(l, tail, i);
      visit(i - 1, l, tail + l / static_cast<double>(m_) / n_,
            acc + k_ * t.cs + (1.0 - k_) * t.pi);
    }
  }

  int n_, m_;
  double k_;
  const std::vector<QualityProfit>& qp_;
  std::vector<int> cur_;
};

}  // namespace

PayoffPoint discretized_payoffs(const std::vector<double>& levels, const CostModel& cost) {
  check_levels(levels);
  const int n = static_cast<int>(levels.size());
  double cs = 0.0, pi = 0.0, tail = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    CellTerms t = cell_terms(levels[i], tail, i, n, pointwise_quality_profit(levels[i], cost));
    cs += t.cs;
    pi += t.pi;
    tail += levels[i] / n;
  }
  return PayoffPoint::of(cs, pi);
}

double discretized_objective(const std::vector<double>& levels, const CostModel& cost,
                             const WelfareWeight& k) {
  return discretized_payoffs(levels, cost).weighted(k.k());
}

const char* oracle_mode_name(OracleMode mode) {
  return mode == OracleMode::kExhaustive ? "exhaustive" : "ascent";
}

OracleMode parse_oracle_mode(const std::string& name) {
  if (name == "exhaustive") return OracleMode::kExhaustive;
  if (name == "ascent") return OracleMode::kAscent;
  throw ValidationError("unknown oracle mode: " + name);
}

double profile_count(int n, int m) {
  // C(n + m, n) = prod_{j=1..n} (m + j) / j.
  double c = 1.0;
  for (int j = 1; j <= n; ++j) c = c * (m + j) / j;
  return std::round(c);
}

OracleResult oracle_maximize(const CostModel& cost, const WelfareWeight& k, int n, int m,
                             OracleMode mode) {
  if (n < 1 || m < 1) throw ValidationError("oracle needs n >= 1 cells and m >= 1 levels");
  std::vector<QualityProfit> qp;
  for (int l = 0; l <= m; ++l) {
    qp.push_back(pointwise_quality_profit(l / static_cast<double>(m), cost));
  }
  OracleResult out;
  std::vector<int> best;

  if (mode == OracleMode::kExhaustive) {
    double count = profile_count(n, m);
    if (count > kBudget) {
      throw ValidationError("exhaustive oracle budget exceeded: C(n + m, n) = " +
                            std::to_string(static_cast<long long>(count)) + " > 1e7");
    }
    // One partition per level of the top cell, highest first.
    std::vector<Enumerator> parts;
    for (int l = m; l >= 0; --l) parts.emplace_back(n, m, k.k(), qp);
    parallel_for(parts.size(), [&](std::size_t p) {
      parts[p].run(m - static_cast<int>(p));
    });
    double best_j = -INFINITY;
    for (const Enumerator& e : parts) {
      out.profiles += e.count;
      if (better(e.best, best_j)) {
        best_j = e.best;
        best = e.best_levels;
      }
    }
  } else {
    auto value = [&](const std::vector<int>& lv) {
      double acc = 0.0, tail = 0.0;
      for (int i = n - 1; i >= 0; --i) {
        int l = lv[static_cast<std::size_t>(i)];
        CellTerms t = cell_terms(l / static_cast<double>(m), tail, i, n,
                                 qp[static_cast<std::size_t>(l)]);
        acc += k.k() * t.cs + (1.0 - k.k()) * t.pi;
        tail += l / static_cast<double>(m) / n;
      }
      out.profiles += 1.0;
      return acc;
    };
    best.assign(static_cast<std::size_t>(n), m);
    double best_j = value(best);
    for (bool improved = true; improved;) {
      improved = false;
      for (int i = 0; i < n; ++i) {
        std::vector<int> arg = best;
        double arg_j = best_j;
        // Levels tried high to low, so ties keep the higher level.
        for (int l = m; l >= 0; --l) {
          std::vector<int> trial = best;
          trial[static_cast<std::size_t>(i)] = l;
          for (int j = 0; j < i; ++j) trial[j] = std::min(trial[j], l);
          for (int j = i + 1; j < n; ++j) trial[j] = std::max(trial[j], l);
          double j_val = value(trial);
          if (j_val > arg_j + 1e-12) {
            arg_j = j_val;
            arg = trial;
          }
        }
        if (arg_j > best_j + 1e-12) {
          best_j = arg_j;
          best = arg;
          improved = true;
        }
      }
    }
  }

  for (int l : best) out.levels.push_back(l / static_cast<double>(m));
  out.payoff = discretized_payoffs(out.levels, cost);
  out.J = out.payoff.weighted(k.k());
  return out;
}

std::vector<double> cell_levels(const Piecewise& phi, int n) {
  if (n < 1) throw ValidationError("need at least one cell");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    double lo = static_cast<double>(i) / n, hi = static_cast<double>(i + 1) / n;
    out.push_back(std::clamp(phi.integrate(lo, hi) * n, 0.0, 1.0));
  }
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
  return out;
}

}  // namespace marketcomp
