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

#ifndef MARKETCOMP_CORPUS_HPP_
#define MARKETCOMP_CORPUS_HPP_

#include <cstdint>
#include <vector>

#include "marketcomp/quantile.hpp"

namespace marketcomp {

// Random markets mixing atoms, gaps, linear stretches and equal-revenue
// pieces. Deterministic in the seed.
std::vector<QuantileFn> random_markets(std::uint64_t seed, int count);

}  // namespace marketcomp

#endif  // MARKETCOMP_CORPUS_HPP_
