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

#include <algorithm>

#include "hetnet/market.hpp"

namespace hetnet {

struct MonopolyObjective {
  double revenue = 0.0;
  double welfare = 0.0;
};

struct MonopolyResult {
  SpAllocation allocation;
  ClearingOutcome outcome;
  double revenue = 0.0;
  double welfare = 0.0;
  bool clipped = false;  // the small-cell floor is binding
};

inline MonopolyObjective monopoly_objective(const MarketParams& params, double b_total, double b_small) {
  const SpAllocation alloc = SpAllocation::make(b_total, b_small);
  const ClearingOutcome outcome = clear_market(params, capacities(params, alloc));
  return {sp_revenue(params, alloc, outcome), social_welfare(params, outcome)};
}

// Revenue- and welfare-maximizing split for a single SP. Both objectives are
// concave in the small-cell bandwidth and peak at the same share, so a
// binding floor simply moves the split up to the floor.
inline MonopolyResult optimal_split(const MarketParams& params, double b_total, double floor) {
  params.validate();
  if (!(b_total >= 0.0)) throw Error(Errc::invalid_parameter, "total bandwidth must be non-negative");
  if (!(floor >= 0.0)) throw Error(Errc::invalid_floor, "floor must be non-negative");
  if (floor > b_total) throw Error(Errc::invalid_floor, "floor exceeds total bandwidth");

  const double unconstrained = std::min(params.small_cell_share() * b_total, b_total);
  MonopolyResult result;
  result.clipped = floor > unconstrained;
  const double small = result.clipped ? floor : unconstrained;
  result.allocation = SpAllocation::make(b_total, small, floor);
  result.outcome = clear_market(params, capacities(params, result.allocation));
  result.revenue = sp_revenue(params, result.allocation, result.outcome);
  result.welfare = social_welfare(params, result.outcome);
  return result;
}

}  // namespace hetnet
