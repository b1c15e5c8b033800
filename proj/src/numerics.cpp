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

#include "marketcomp/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "marketcomp/config.hpp"

namespace marketcomp {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
using Gauss = boost::math::quadrature::gauss<double, 15>;

struct Estimate {
  double kronrod, error, l1;
};

// The Gauss nodes are the even-indexed Kronrod nodes.
Estimate gk_pair(const std::function<double(double)>& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double f0 = f(c);
  double k = wk[0] * f0, g = wg[0] * f0, l1 = wk[0] * std::fabs(f0);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    double fl = f(c - h * xk[i]), fr = f(c + h * xk[i]);
    k += wk[i] * (fl + fr);
    l1 += wk[i] * (std::fabs(fl) + std::fabs(fr));
    if (i % 2 == 0) g += wg[i / 2] * (fl + fr);
  }
  return {k * h, std::fabs(k - g) * h, l1 * h};
}

double quad_rec(const std::function<double(double)>& f, double a, double b,
                double tol, int depth) {
  Estimate e = gk_pair(f, a, b);
  double target = std::max(tol * std::max(e.l1, b - a), 64.0 * 2.2e-16 * e.l1);
  if (depth <= 0 || e.error <= target) return e.kronrod;
  double m = 0.5 * (a + b);
  if (!(m > a && m < b)) return e.kronrod;
  return quad_rec(f, a, m, tol, depth - 1) + quad_rec(f, m, b, tol, depth - 1);
}

}  // namespace

double quad(const std::function<double(double)>& f, double a, double b,
            double tol) {
  if (b <= a) return 0.0;
  return quad_rec(f, a, b, tol, 30);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double xtol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    throw NumericalError("root not bracketed on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
  auto tol = [xtol](double x0, double x1) {
    return std::fabs(x1 - x0) <= std::max(xtol, 4e-16 * std::fabs(x0));
  };
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              int max_iter, double xtol) {
  double flo = f(lo);
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi, double xtol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

unsigned thread_count() {
  if (const char* env = std::getenv("MARKETCOMP_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  out[n - 1] = hi;
  return out;
}

}  // namespace marketcomp
