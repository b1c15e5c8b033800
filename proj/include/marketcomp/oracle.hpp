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

#ifndef MARKETCOMP_ORACLE_HPP_
#define MARKETCOMP_ORACLE_HPP_

#include <string>
#include <vector>

#include "marketcomp/cost.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/piecewise.hpp"

namespace marketcomp {

// Payoffs of the market whose virtual value is the step profile `levels`,
// cell i covering ranks [i/n, (i+1)/n). The quantile is the tail average of
// the profile, integrated exactly within each cell.
PayoffPoint discretized_payoffs(const std::vector<double>& levels, const CostModel& cost);

double discretized_objective(const std::vector<double>& levels, const CostModel& cost,
                             const WelfareWeight& k);

enum class OracleMode { kExhaustive, kAscent };

const char* oracle_mode_name(OracleMode mode);
OracleMode parse_oracle_mode(const std::string& name);

struct OracleResult {
  std::vector<double> levels;
  double J = 0.0;
  PayoffPoint payoff;
  double profiles = 0.0;  // profiles evaluated
};

// Exhaustive mode enumerates every nondecreasing profile on {0, 1/m, ..., 1}
// and refuses when there are more than 1e7 of them. Ascent mode is cyclic
// coordinate search from the all-ones profile.
OracleResult oracle_maximize(const CostModel& cost, const WelfareWeight& k, int n, int m,
                             OracleMode mode);

// C(n + m, n) as a double.
double profile_count(int n, int m);

// Cell averages of a profile on n equal cells, clamped to [0, 1].
std::vector<double> cell_levels(const Piecewise& phi, int n);

}  // namespace marketcomp

#endif  // MARKETCOMP_ORACLE_HPP_
