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

#ifndef MARKETCOMP_PAYOFF_HPP_
#define MARKETCOMP_PAYOFF_HPP_

namespace marketcomp {

struct PayoffPoint {
  double cs = 0.0;
  double pi = 0.0;
  double ts = 0.0;

  static PayoffPoint of(double cs, double pi) { return {cs, pi, cs + pi}; }
  double weighted(double k) const { return k * cs + (1.0 - k) * pi; }
};

class WelfareWeight {
 public:
  explicit WelfareWeight(double k);
  double k() const { return k_; }
  // (2k - 1) / k; meaningful only when !degenerate().
  double lambda() const { return (2.0 * k_ - 1.0) / k_; }
  // k <= 1/2: the top benchmark is optimal.
  bool degenerate() const { return k_ <= 0.5; }

 private:
  double k_;
};

}  // namespace marketcomp

#endif  // MARKETCOMP_PAYOFF_HPP_
