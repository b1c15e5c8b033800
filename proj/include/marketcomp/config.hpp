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

#ifndef MARKETCOMP_CONFIG_HPP_
#define MARKETCOMP_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>

namespace marketcomp {

// Bad input: malformed distributions, out-of-domain parameters, unknown
// options. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to converge or to bracket its root. The CLI
// maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every tolerance and resolution knob used by the solvers. Values are plain
// data; a Tolerances object is passed by const reference and never mutated
// after construction.
struct Tolerances {
  double abs = 1e-10;
  double rel = 1e-8;

  // Adaptive quadrature target on analytic and nonlinear pieces.
  double quad = 1e-12;

  // Samples per analytic segment when building the upper hull of the raw
  // revenue curve; linear segments share a total budget.
  int hull_analytic_samples = 4096;
  int hull_linear_samples_total = 8192;

  // Two ironed virtual values closer than this are treated as one bunching
  // block when emitting menus.
  double flat_phi = 1e-9;
  int menu_grid = 512;

  double fbvp_rtol = 1e-10;
  double fbvp_max_step = 1e-2;
  double fbvp_event_tol = 1e-12;
  double fbvp_max_time = 50.0;
  int fbvp_samples = 1024;

  int elasticity_table = 512;
  int mps_smooth_grid = 4096;

  // Parses "key=value" overrides. Unknown keys throw ValidationError.
  void apply(const std::string& key, const std::string& value);
  void apply(const std::map<std::string, std::string>& entries);
};

// Reads a key=value file. Blank lines and lines starting with '#' are
// skipped.
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace marketcomp

#endif  // MARKETCOMP_CONFIG_HPP_
