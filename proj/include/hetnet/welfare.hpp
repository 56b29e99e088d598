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

// Welfare accounting for a regulator that hands out new, small-cell-only
// bandwidth to two incumbents. Three welfare levels are compared per
// partition of the new bandwidth:
//
//   sw_wo_star  planner optimum with no usage restriction
//   sw_w_star   planner optimum when the new bandwidth must go to small-cells
//   sw_w_ne     welfare at the constrained duopoly equilibrium

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/duopoly.hpp"
#include "hetnet/market.hpp"
#include "hetnet/monopoly.hpp"
#include "hetnet/numeric.hpp"

namespace hetnet {

struct RegulatorScenario {
  double b1_initial = 0.0;
  double b2_initial = 0.0;
  double b_new = 0.0;
  MarketParams params;

  void validate() const {
    params.validate();
    if (!(b1_initial >= 0.0)) throw Error(Errc::invalid_parameter, "b1_initial must be non-negative");
    if (!(b2_initial >= 0.0)) throw Error(Errc::invalid_parameter, "b2_initial must be non-negative");
    if (!(b_new >= 0.0)) throw Error(Errc::invalid_parameter, "b_new must be non-negative");
  }

  double pooled() const { return b1_initial + b2_initial + b_new; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
  double width() const { return hi - lo; }
};

struct SweepRow {
  double b1_new = 0.0;
  double b2_new = 0.0;
  double sw_wo_star = 0.0;
  double sw_w_star = 0.0;
  double sw_w_ne = 0.0;
  std::optional<Region> region;  // empty when the solver failed
  double rev1 = 0.0;
  double rev2 = 0.0;
  std::string diagnostic;
};

// Welfare-optimal split of the pooled bandwidth with no floor.
inline double sw_unconstrained_opt(const MarketParams& params, double b_total) {
  params.validate();
  if (!(b_total > 0.0)) throw Error(Errc::invalid_parameter, "total bandwidth must be positive");
  return optimal_split(params, b_total, 0.0).welfare;
}

// Planner optimum when the new bandwidth is small-cell only. Welfare depends
// only on tier totals, so the planner pools both SPs and the binding
// constraint is the sum of the floors.
inline double sw_constrained_opt(const RegulatorScenario& scenario, double b1_new, double b2_new) {
  scenario.validate();
  if (!(b1_new >= 0.0) || !(b2_new >= 0.0)) throw Error(Errc::invalid_parameter, "new bandwidth must be non-negative");
  const double pooled = scenario.b1_initial + scenario.b2_initial + b1_new + b2_new;
  const double min_small = std::min(b1_new + b2_new, pooled);
  return optimal_split(scenario.params, pooled, min_small).welfare;
}

// Largest amount of new small-cell-only bandwidth that costs no welfare.
inline double threshold(const RegulatorScenario& scenario) {
  scenario.validate();
  const MarketParams& p = scenario.params;
  return (scenario.b1_initial + scenario.b2_initial) * p.n_fixed * p.efficiency_weight() / p.n_mobile;
}

// Range of B_1^n for which the constrained equilibrium reaches the
// unconstrained optimum; empty once b_new exceeds the threshold.
inline std::optional<Interval> equality_interval(const RegulatorScenario& scenario) {
  scenario.validate();
  const MarketParams& p = scenario.params;
  const double k = p.n_fixed * p.efficiency_weight() / p.n_mobile;
  // Emptiness follows the threshold so the two never disagree by rounding.
  if (scenario.b_new > threshold(scenario)) return std::nullopt;
  const double hi = scenario.b1_initial * k;
  const Interval raw{std::min(scenario.b_new - scenario.b2_initial * k, hi), hi};
  const Interval clipped{std::max(raw.lo, 0.0), std::min(raw.hi, scenario.b_new)};
  if (clipped.lo > clipped.hi) return std::nullopt;
  return clipped;
}

// Lower bound on sw_w_ne / sw_wo_star, attained when every SP must put all of
// its bandwidth on small-cells.
inline double sw_bound_ratio(const MarketParams& params) {
  params.validate();
  return std::pow(params.small_cell_share(), params.alpha);
}

inline bool loss_condition(const MarketParams& params, const std::array<double, 2>& totals,
                           const ConstraintPair& floors) {
  params.validate();
  floors.validate(totals[0], totals[1]);
  return params.small_cell_share() * (totals[0] + totals[1]) < floors.floor1 + floors.floor2;
}

inline SweepRow sweep_row(const RegulatorScenario& scenario, double b1_new, const SolverOptions& options = {}) {
  SweepRow row;
  row.b1_new = b1_new;
  row.b2_new = scenario.b_new - b1_new;
  const double b1 = scenario.b1_initial + row.b1_new;
  const double b2 = scenario.b2_initial + row.b2_new;
  row.sw_wo_star = sw_unconstrained_opt(scenario.params, b1 + b2);
  row.sw_w_star = sw_constrained_opt(scenario, row.b1_new, row.b2_new);
  try {
    const EquilibriumResult ne = solve_ne(scenario.params, b1, b2, {row.b1_new, row.b2_new}, options);
    row.sw_w_ne = ne.welfare;
    row.region = ne.region;
    row.rev1 = ne.revenues[0];
    row.rev2 = ne.revenues[1];
  } catch (const Error& e) {
    if (!e.is_solver_diagnostic()) throw;
    row.sw_w_ne = std::numeric_limits<double>::quiet_NaN();
    row.rev1 = row.rev2 = std::numeric_limits<double>::quiet_NaN();
    row.diagnostic = e.what();
  }
  return row;
}

// One row per B_1^n on a uniform grid over [0, b_new], endpoints included.
// Solver failures are recorded on the row and do not stop the sweep.
inline std::vector<SweepRow> sweep(const RegulatorScenario& scenario, std::size_t n_points,
                                   const SolverOptions& options = {}) {
  scenario.validate();
  if (n_points < 2) throw Error(Errc::invalid_parameter, "sweep needs at least 2 points");
  if (!(scenario.b_new > 0.0)) throw Error(Errc::invalid_parameter, "b_new must be positive for a sweep");
  std::vector<SweepRow> rows;
  rows.reserve(n_points);
  for (double b1_new : numeric::linspace(0.0, scenario.b_new, n_points)) {
    rows.push_back(sweep_row(scenario, b1_new, options));
  }
  return rows;
}

}  // namespace hetnet
