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

#ifndef MARKETCOMP_JSON_IO_HPP_
#define MARKETCOMP_JSON_IO_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "marketcomp/payoff.hpp"
#include "marketcomp/piecewise.hpp"
#include "marketcomp/quantile.hpp"

namespace marketcomp {

using Json = nlohmann::ordered_json;

// {"segments": [{"u0", "u1", "interp", "v0", "v1", "form", "params"}]}.
// Analytic pieces carry form "laurent" with params [pole, min_power,
// coefs...]; input also accepts "equal_revenue" with params [a, shift] or
// [a, shift, pole].
Json piecewise_to_json(const Piecewise& pw);
Piecewise piecewise_from_json(const Json& j);

Json market_to_json(const QuantileFn& q);
QuantileFn market_from_json(const Json& j);

Json payoff_to_json(const PayoffPoint& p);

// Parse failures and unreadable files raise ValidationError.
Json read_json_file(const std::string& path);
QuantileFn read_market_file(const std::string& path);

// %.17g, the shortest width that round-trips every double.
std::string format_double(double v);

// Comma-separated with '\n' line endings.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace marketcomp

#endif  // MARKETCOMP_JSON_IO_HPP_
