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

#ifndef MARKETCOMP_ACCEPTANCE_HPP_
#define MARKETCOMP_ACCEPTANCE_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace marketcomp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst observed deviation or the failing check
  double seconds = 0.0;
};

// Suites: "golden" (criteria 1, 2, 3, 5, 9), "properties" (4, 6, 7, 8, 10)
// or "all". The seed drives the randomized corpora and split ranks.
std::vector<CriterionResult> run_acceptance(const std::string& suite = "all",
                                            std::uint64_t seed = 20260101);

// One line per criterion; returns true when every criterion passed.
bool print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace marketcomp

#endif  // MARKETCOMP_ACCEPTANCE_HPP_
