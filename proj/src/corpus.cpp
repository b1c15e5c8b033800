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

#include "marketcomp/corpus.hpp"

#include <algorithm>
#include <random>

namespace marketcomp {

std::vector<QuantileFn> random_markets(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<QuantileFn> out;
  while (static_cast<int>(out.size()) < count) {
    int n = 1 + static_cast<int>(unif(rng) * 6);
    std::vector<double> cuts{0.0, 1.0};
    for (int i = 1; i < n; ++i) cuts.push_back(0.05 + 0.9 * unif(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> levels;
    for (std::size_t i = 0; i < 2 * (cuts.size() - 1); ++i) levels.push_back(unif(rng));
    std::sort(levels.begin(), levels.end());
    if (unif(rng) < 0.4) levels.back() = 1.0;

    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double u0 = cuts[i], u1 = cuts[i + 1];
      double lo = levels[2 * i], hi = levels[2 * i + 1];
      double kind = unif(rng);
      if (kind < 0.4 || hi == lo) {
        segs.push_back(constant_segment(u0, u1, hi));
      } else if (kind < 0.8) {
        segs.push_back(linear_segment(u0, u1, lo, hi));
      } else {
        // shift + a / (1 - u) through (u0, lo) and (u1, hi).
        double a = (hi - lo) / (1.0 / (1.0 - u1) - 1.0 / (1.0 - u0));
        double shift = lo - a / (1.0 - u0);
        segs.push_back(analytic_segment(u0, u1, equal_revenue_form(a, shift)));
      }
    }
    try {
      out.push_back(QuantileFn(std::move(segs)));
    } catch (const std::exception&) {
      // Rounding can push an equal-revenue piece past [0, 1]; draw again.
    }
  }
  return out;
}

}  // namespace marketcomp
