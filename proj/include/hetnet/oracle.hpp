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

// Brute-force reference searches. These only evaluate the revenue and
// welfare objectives on grids; they never call the closed forms or the
// derivative-based solvers, so they can be used to check both.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>

#include "hetnet/error.hpp"
#include "hetnet/market.hpp"

namespace hetnet::oracle {

struct GridSpec {
  std::size_t resolution = 10'000;  // intervals per bandwidth axis
  double epsilon = 1e-6;

  void validate() const {
    if (resolution < 100) throw Error(Errc::invalid_parameter, "grid resolution must be at least 100");
    if (!(epsilon > 0.0)) throw Error(Errc::invalid_parameter, "grid epsilon must be positive");
  }

  // Grid point i of [lo, hi]; i == resolution lands exactly on hi.
  double point(double lo, double hi, std::size_t i) const {
    if (i >= resolution) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution);
  }
};

struct NeCertificate {
  bool certified = false;
  double max_improvement = 0.0;
  std::array<double, 2> improvement{};
};

struct SocialOptimum {
  double small_total = 0.0;
  double welfare = 0.0;
};

namespace detail {

inline double revenue_at(const MarketParams& params, std::size_t sp_index, double own_small, double own_total,
                         double own_floor, const SpAllocation& opponent) {
  const SpAllocation own{own_total, own_small, own_total - own_small, own_floor};
  const DuopolyAllocation alloc = sp_index == 0 ? DuopolyAllocation{own, opponent} : DuopolyAllocation{opponent, own};
  const ClearingOutcome outcome = clear_market(params, alloc);
  return sp_revenue(params, own, outcome);
}

}  // namespace detail

// Exhaustive argmax of SP revenue over the grid on [own_floor, own_total].
// Ties go to the lowest grid index.
inline double grid_best_response(const MarketParams& params, std::size_t sp_index, const SpAllocation& opponent,
                                 double own_total, double own_floor, const GridSpec& grid = {}) {
  grid.validate();
  if (own_floor > own_total) throw Error(Errc::invalid_floor, "own floor exceeds own total");
  double best_x = own_floor;
  double best_v = -kInf;
  for (std::size_t i = 0; i <= grid.resolution; ++i) {
    const double x = grid.point(own_floor, own_total, i);
    const double v = detail::revenue_at(params, sp_index, x, own_total, own_floor, opponent);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return best_x;
}

// Checks that no SP gains more than grid.epsilon by a unilateral move to any
// grid point of its feasible interval.
inline NeCertificate certify_epsilon_ne(const MarketParams& params, const DuopolyAllocation& alloc,
                                        const std::array<double, 2>& floors, const GridSpec& grid = {}) {
  grid.validate();
  NeCertificate cert;
  const ClearingOutcome here = clear_market(params, alloc);
  for (std::size_t i = 0; i < 2; ++i) {
    const SpAllocation& own = alloc[i];
    const SpAllocation& opponent = alloc[1 - i];
    const double current = sp_revenue(params, own, here);
    double gain = 0.0;
    for (std::size_t k = 0; k <= grid.resolution; ++k) {
      const double x = grid.point(floors[i], own.total, k);
      gain = std::max(gain, detail::revenue_at(params, i, x, own.total, floors[i], opponent) - current);
    }
    cert.improvement[i] = gain;
  }
  cert.max_improvement = std::max(cert.improvement[0], cert.improvement[1]);
  cert.certified = cert.max_improvement <= grid.epsilon;
  return cert;
}

// Welfare argmax over total small-cell bandwidth in [min_small_total, b_total]
// for pooled bandwidth b_total.
inline SocialOptimum grid_social_opt(const MarketParams& params, double b_total, double min_small_total,
                                     const GridSpec& grid = {}) {
  grid.validate();
  if (min_small_total > b_total) throw Error(Errc::invalid_floor, "minimum small-cell total exceeds b_total");
  SocialOptimum best{min_small_total, -kInf};
  for (std::size_t i = 0; i <= grid.resolution; ++i) {
    const double small = grid.point(min_small_total, b_total, i);
    const CapacityPair caps{(b_total - small) * params.r0, params.lambda_s * small * params.r0};
    const double w = social_welfare(params, clear_market(params, caps));
    if (w > best.welfare) best = {small, w};
  }
  return best;
}

}  // namespace hetnet::oracle
