// Copyright 2026 The hetnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

namespace hetnet::numeric {

// Root of a strictly decreasing function on [lo, hi], given f(lo) > 0 > f(hi).
// Stops when the bracket is narrower than x_tol or f hits zero exactly.
template <typename Func>
double bisect_decreasing(Func&& f, double lo, double hi, double x_tol, std::size_t max_iter = 200) {
  for (std::size_t i = 0; i < max_iter && hi - lo > x_tol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double value = f(mid);
    if (value == 0.0) return mid;
    if (value > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

// n evenly spaced points covering [lo, hi], both endpoints included exactly.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  out.reserve(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(lo + step * static_cast<double>(i));
  out.push_back(hi);
  return out;
}

}  // namespace hetnet::numeric
