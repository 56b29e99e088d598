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

// Bandwidth-allocation equilibrium between two revenue-maximizing SPs that
// each must keep a minimum amount of bandwidth on small-cells.
//
// Prices always clear the market, so the game is played over the small-cell
// bandwidth B_{i,S} in [floor_i, B_i]. Each SP's revenue is strictly concave
// in its own B_{i,S} on the Separated regime and increasing on the Overflow
// regime, which makes the best response a bisection on the marginal revenue.
// The equilibrium is found by alternating best responses and then checked
// against the first-order conditions.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "hetnet/error.hpp"
#include "hetnet/market.hpp"
#include "hetnet/numeric.hpp"

namespace hetnet {

enum class Region { A, B_I, B_II, C_I, C_II };

constexpr std::string_view to_string(Region r) {
  switch (r) {
    case Region::A: return "A";
    case Region::B_I: return "B_I";
    case Region::B_II: return "B_II";
    case Region::C_I: return "C_I";
    case Region::C_II: return "C_II";
  }
  return "?";
}

inline std::optional<Region> region_from_string(std::string_view s) {
  for (Region r : {Region::A, Region::B_I, Region::B_II, Region::C_I, Region::C_II}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

struct ConstraintPair {
  double floor1 = 0.0;
  double floor2 = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? floor1 : floor2; }

  void validate(double b1, double b2) const {
    if (!(floor1 >= 0.0) || floor1 > b1) throw Error(Errc::invalid_floor, "floor1 must lie in [0, B_1]");
    if (!(floor2 >= 0.0) || floor2 > b2) throw Error(Errc::invalid_floor, "floor2 must lie in [0, B_2]");
  }
};

struct SolverOptions {
  double step_tolerance = 1e-10;   // max-norm movement between sweeps
  std::size_t max_iterations = 10'000;
  double kkt_tolerance = 1e-7;     // multiplied by r0
};

// A floor counts as exceeding the unconstrained equilibrium value only when
// it is above it by more than this.
inline constexpr double kRegionTolerance = 1e-9;

// Distance (relative to max(1, B_i)) below which small-cell bandwidth is
// considered to sit on a bound.
inline constexpr double kBindTolerance = 1e-9;

struct EquilibriumResult {
  DuopolyAllocation allocation;
  Region region = Region::A;
  double kkt_residual_1 = 0.0;
  double kkt_residual_2 = 0.0;
  std::size_t iterations = 0;
  std::array<double, 2> revenues{};
  double welfare = 0.0;
  double final_step = 0.0;

  double kkt_residual(std::size_t i) const { return i == 0 ? kkt_residual_1 : kkt_residual_2; }
};

namespace detail {

inline bool at_floor(const SpAllocation& a) {
  return a.small - a.floor <= kBindTolerance * std::max(1.0, a.total);
}

inline bool at_total(const SpAllocation& a) {
  return a.total - a.small <= kBindTolerance * std::max(1.0, a.total);
}

inline DuopolyAllocation place(std::size_t sp_index, const SpAllocation& own, const SpAllocation& opponent) {
  return sp_index == 0 ? DuopolyAllocation{own, opponent} : DuopolyAllocation{opponent, own};
}

// Right derivative of SP i's revenue in its own small-cell bandwidth. Never
// throws: a vanishing macro tier gives -inf and a vanishing small tier +inf.
inline double marginal_revenue_limit(const MarketParams& p, const DuopolyAllocation& alloc, std::size_t i) {
  const SpAllocation& own = alloc[i];
  const CapacityPair caps = capacities(p, alloc);
  const double rate_small = caps.c_small / p.n_fixed;
  const double rate_macro = caps.c_macro / p.n_mobile;

  if (rate_small < rate_macro) {
    // Overflow: every unit sells at the common price.
    const double common = (caps.c_macro + caps.c_small) / (p.n_mobile + p.n_fixed);
    const double own_cap = p.r0 * (p.lambda_s * own.small + own.macro);
    const double share = own_cap / (caps.c_macro + caps.c_small);
    return p.r0 * (p.lambda_s - 1.0) * std::pow(common, -p.alpha) * (1.0 - p.alpha * share);
  }

  // R0 * [ lambda R_S^-a - a lambda^2 B_iS R0/N_f R_S^(-a-1)
  //        - R_M^-a + a B_iM R0/N_m R_M^(-a-1) ]
  // written with B_iS R0 lambda / N_f = R_S * (B_iS / B_S) and likewise for
  // the macro tier.
  if (rate_small == 0.0) return kInf;
  if (rate_macro == 0.0) return -kInf;
  const double small_share = own.small / alloc.total_small();
  const double macro_share = own.macro / alloc.total_macro();
  const double small_term = p.lambda_s * std::pow(rate_small, -p.alpha) * (1.0 - p.alpha * small_share);
  const double macro_term = std::pow(rate_macro, -p.alpha) * (1.0 - p.alpha * macro_share);
  return p.r0 * (small_term - macro_term);
}

// Own small-cell bandwidth at which the two tiers deliver equal per-user
// rates; below it the market is in the Overflow regime.
inline double regime_boundary(const MarketParams& p, double own_total, const SpAllocation& opponent) {
  const double numer = (own_total + opponent.macro) / p.n_mobile - p.lambda_s * opponent.small / p.n_fixed;
  return numer / (p.lambda_s / p.n_fixed + 1.0 / p.n_mobile);
}

}  // namespace detail

// dS_i / dB_{i,S} at the given profile, using market-clearing rates. In the
// Overflow regime this is the derivative of the common-price revenue.
inline double marginal_revenue(const MarketParams& params, const DuopolyAllocation& alloc, std::size_t sp_index) {
  if (sp_index > 1) throw Error(Errc::invalid_parameter, "sp_index must be 0 or 1");
  const ClearingOutcome out = clear_market(params, alloc);
  if (out.regime == Regime::Separated && (out.rate_small == 0.0 || out.rate_macro == 0.0)) {
    throw Error(Errc::degenerate_rates, "marginal revenue undefined with an empty tier");
  }
  return detail::marginal_revenue_limit(params, alloc, sp_index);
}

// Equilibrium without floors: both SPs put the same share on small-cells.
inline DuopolyAllocation unconstrained_ne(const MarketParams& params, double b1, double b2) {
  params.validate();
  if (!(b1 > 0.0) || !(b2 > 0.0)) throw Error(Errc::invalid_parameter, "bandwidths must be positive");
  const double share = params.small_cell_share();
  return {SpAllocation::make(b1, share * b1), SpAllocation::make(b2, share * b2)};
}

// Revenue-maximizing own small-cell bandwidth on [own_floor, own_total]
// against a fixed opponent split.
inline double best_response(const MarketParams& params, std::size_t sp_index, const SpAllocation& opponent,
                            double own_total, double own_floor) {
  if (sp_index > 1) throw Error(Errc::invalid_parameter, "sp_index must be 0 or 1");
  if (!(own_floor >= 0.0) || own_floor > own_total) {
    throw Error(Errc::invalid_floor, "own floor must lie in [0, own_total]");
  }
  double lo = own_floor;
  double hi = own_total;
  if (hi - lo <= 0.0) return lo;

  // Revenue only grows while the market overflows, so skip that stretch.
  const double boundary = detail::regime_boundary(params, own_total, opponent);
  if (boundary >= hi) return hi;
  lo = std::max(lo, boundary);

  auto slope = [&](double own_small) {
    const SpAllocation own{own_total, own_small, own_total - own_small, own_floor};
    return detail::marginal_revenue_limit(params, detail::place(sp_index, own, opponent), sp_index);
  };
  if (slope(lo) <= 0.0) return lo;
  if (slope(hi) >= 0.0) return hi;
  const double x_tol = 1e-15 * std::max(1.0, own_total);
  return numeric::bisect_decreasing(slope, lo, hi, x_tol);
}

// True per SP when its marginal revenue at the both-floors profile is
// non-positive, i.e. neither SP wants to move off its floor.
inline std::array<bool, 2> type1_condition(const MarketParams& params, double b1, double b2,
                                           const ConstraintPair& floors,
                                           const SolverOptions& options = {}) {
  params.validate();
  floors.validate(b1, b2);
  const DuopolyAllocation at_floors{SpAllocation::make(b1, floors.floor1, floors.floor1),
                                    SpAllocation::make(b2, floors.floor2, floors.floor2)};
  const double tol = options.kkt_tolerance * params.r0;
  return {detail::marginal_revenue_limit(params, at_floors, 0) <= tol,
          detail::marginal_revenue_limit(params, at_floors, 1) <= tol};
}

inline Region classify_region(const MarketParams& params, double b1, double b2, const ConstraintPair& floors,
                              const EquilibriumResult& result) {
  const double share = params.small_cell_share();
  const std::array<double, 2> free_ne{share * b1, share * b2};
  std::array<bool, 2> violated{};
  std::array<bool, 2> binding{};
  for (std::size_t i = 0; i < 2; ++i) {
    violated[i] = floors[i] > free_ne[i] + kRegionTolerance;
    binding[i] = detail::at_floor(result.allocation[i]);
  }

  auto inconsistent = [&](const char* what) {
    std::ostringstream msg;
    msg << what << " (floors " << floors.floor1 << ", " << floors.floor2 << "; solution "
        << result.allocation.sp1.small << ", " << result.allocation.sp2.small << ")";
    return Error(Errc::inconsistent_result, msg.str());
  };

  if (!violated[0] && !violated[1]) {
    for (std::size_t i = 0; i < 2; ++i) {
      const double tol = 1e-6 * std::max(1.0, result.allocation[i].total);
      if (std::abs(result.allocation[i].small - std::max(free_ne[i], floors[i])) > tol) {
        throw inconsistent("case A solution differs from the unconstrained equilibrium");
      }
    }
    return Region::A;
  }
  if (violated[0] && violated[1]) {
    if (binding[0] && binding[1]) return Region::B_I;
    if (binding[0] || binding[1]) return Region::B_II;
    throw inconsistent("case B solution with no binding floor");
  }
  const std::size_t v = violated[0] ? 0 : 1;
  if (!binding[v]) throw inconsistent("case C solution with the violated floor slack");
  return binding[1 - v] ? Region::C_I : Region::C_II;
}

inline EquilibriumResult solve_ne(const MarketParams& params, double b1, double b2, const ConstraintPair& floors,
                                  const SolverOptions& options, const std::optional<DuopolyAllocation>& start) {
  params.validate();
  if (!(b1 >= 0.0) || !(b2 >= 0.0) || !(b1 + b2 > 0.0)) {
    throw Error(Errc::invalid_parameter, "bandwidths must be non-negative with a positive sum");
  }
  floors.validate(b1, b2);

  DuopolyAllocation x;
  if (start) {
    x = {SpAllocation::make(b1, start->sp1.small, floors.floor1),
         SpAllocation::make(b2, start->sp2.small, floors.floor2)};
  } else {
    const double share = params.small_cell_share();
    x = {SpAllocation::make(b1, std::clamp(share * b1, floors.floor1, b1), floors.floor1),
         SpAllocation::make(b2, std::clamp(share * b2, floors.floor2, b2), floors.floor2)};
  }

  const double tol = options.kkt_tolerance * params.r0;
  // Index of the first SP failing its KKT condition at x, or 2 if none.
  auto kkt_violator = [&](const DuopolyAllocation& at) -> std::size_t {
    for (std::size_t i = 0; i < 2; ++i) {
      const SpAllocation& a = at[i];
      const double d = detail::marginal_revenue_limit(params, at, i);
      const bool ok = a.floor == a.total || (detail::at_floor(a) && d <= tol) ||
                      (detail::at_total(a) && d >= -tol) || std::abs(d) <= tol;
      if (!ok) return i;
    }
    return 2;
  };

  EquilibriumResult result;
  bool converged = false;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    const double s1 = best_response(params, 0, x.sp2, b1, floors.floor1);
    const SpAllocation next1 = SpAllocation::make(b1, s1, floors.floor1);
    const double s2 = best_response(params, 1, next1, b2, floors.floor2);
    const double step = std::max(std::abs(s1 - x.sp1.small), std::abs(s2 - x.sp2.small));
    x = {next1, SpAllocation::make(b2, s2, floors.floor2)};
    result.iterations = it;
    result.final_step = step;
    // A nearly empty macro tier makes D_i steep in the opponent's split, so
    // a small step alone does not certify the point.
    if (step < options.step_tolerance && (step == 0.0 || kkt_violator(x) == 2)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "best-response iteration stalled after " << result.iterations << " sweeps, last step "
        << result.final_step;
    throw Error(Errc::no_convergence, msg.str());
  }

  result.allocation = x;
  result.kkt_residual_1 = detail::marginal_revenue_limit(params, x, 0);
  result.kkt_residual_2 = detail::marginal_revenue_limit(params, x, 1);

  if (const std::size_t i = kkt_violator(x); i < 2) {
    const SpAllocation& a = x[i];
    std::ostringstream msg;
    msg << "KKT check failed for SP " << (i + 1) << ": marginal revenue " << result.kkt_residual(i)
        << " at small-cell bandwidth " << a.small << " (floor " << a.floor << ", total " << a.total << ")";
    throw Error(Errc::no_convergence, msg.str());
  }

  const ClearingOutcome outcome = clear_market(params, x);
  result.revenues = {sp_revenue(params, x.sp1, outcome), sp_revenue(params, x.sp2, outcome)};
  result.welfare = social_welfare(params, outcome);
  result.region = classify_region(params, b1, b2, floors, result);
  return result;
}

inline EquilibriumResult solve_ne(const MarketParams& params, double b1, double b2, const ConstraintPair& floors,
                                  const SolverOptions& options = {}) {
  return solve_ne(params, b1, b2, floors, options, std::nullopt);
}

}  // namespace hetnet
