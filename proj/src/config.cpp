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

#include "marketcomp/config.hpp"

#include <fstream>
#include <functional>

namespace marketcomp {

namespace {

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ValidationError("bad value for " + key + ": " + value);
  }
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  double v = to_double(key, value);
  if (v != static_cast<int>(v) || v <= 0) {
    throw ValidationError("expected a positive integer for " + key);
  }
  return static_cast<int>(v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void Tolerances::apply(const std::string& key, const std::string& value) {
  const std::map<std::string, double*> reals{
      {"abs", &abs},
      {"rel", &rel},
      {"quad", &quad},
      {"flat_phi", &flat_phi},
      {"fbvp_rtol", &fbvp_rtol},
      {"fbvp_max_step", &fbvp_max_step},
      {"fbvp_event_tol", &fbvp_event_tol},
      {"fbvp_max_time", &fbvp_max_time},
  };
  const std::map<std::string, int*> ints{
      {"hull_analytic_samples", &hull_analytic_samples},
      {"hull_linear_samples_total", &hull_linear_samples_total},
      {"menu_grid", &menu_grid},
      {"fbvp_samples", &fbvp_samples},
      {"elasticity_table", &elasticity_table},
      {"mps_smooth_grid", &mps_smooth_grid},
  };
  if (auto it = reals.find(key); it != reals.end()) {
    double v = to_double(key, value);
    if (!(v > 0.0)) throw ValidationError(key + " must be positive");
    *it->second = v;
    return;
  }
  if (auto it = ints.find(key); it != ints.end()) {
    *it->second = to_int(key, value);
    return;
  }
  throw ValidationError("unknown tolerance key: " + key);
}

void Tolerances::apply(const std::map<std::string, std::string>& entries) {
  for (const auto& [k, v] : entries) apply(k, v);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected key=value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace marketcomp
