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

#ifndef MARKETCOMP_NUMERICS_HPP_
#define MARKETCOMP_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace marketcomp {

// Adaptive Gauss-Kronrod (15/31) quadrature.
double quad(const std::function<double(double)>& f, double a, double b,
            double tol = 1e-12);

// Bracketed root of f on [lo, hi]. Throws NumericalError when f(lo) and
// f(hi) have the same strict sign.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol = 1e-14);

// Bisection with a fixed iteration cap, for monotone functions that may be
// slow or kinked.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              int max_iter = 200, double xtol = 0.0);

// Maximizer of f on [lo, hi] by golden-section search.
double golden_max(const std::function<double(double)>& f, double lo,
                  double hi, double xtol = 1e-12);

// Worker count: MARKETCOMP_THREADS if set, else hardware concurrency.
unsigned thread_count();

// Calls fn(i) for i in [0, n) across worker threads. Results come back in
// index order.
template <typename T>
std::vector<T> parallel_map(std::size_t n,
                            const std::function<T(std::size_t)>& fn);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <typename T>
std::vector<T> parallel_map(std::size_t n,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace marketcomp

#endif  // MARKETCOMP_NUMERICS_HPP_
