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

// Market model for a two-tier (macro / small-cell) wireless market:
// alpha-fair users, per-unit-rate pricing, the user-association rule and
// market-clearing prices, plus the revenue and welfare objectives built on
// top of them.
//
// Mobile users attach only to macro-cells and have priority there. Fixed
// users go to whichever tier is cheaper; when small-cells are more
// congested than macro-cells they spill over onto macro-cells until both
// tiers clear at a common price.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Allowed drift between SpAllocation::small + macro and total.
inline constexpr double kSplitTolerance = 1e-12;

struct MarketParams {
  double alpha = 0.5;      // utility curvature, in (0, 1)
  double n_mobile = 1.0;   // mobile-user density N_m
  double n_fixed = 1.0;    // fixed-user density N_f
  double r0 = 1.0;         // macro spectral efficiency
  double lambda_s = 2.0;   // small-cell efficiency gain, > 1

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(Errc::invalid_parameter, "alpha must lie in (0, 1)");
    }
    if (!(n_mobile > 0.0)) throw Error(Errc::invalid_parameter, "n_mobile must be positive");
    if (!(n_fixed > 0.0)) throw Error(Errc::invalid_parameter, "n_fixed must be positive");
    if (!(r0 > 0.0)) throw Error(Errc::invalid_parameter, "r0 must be positive");
    if (!(lambda_s > 1.0)) throw Error(Errc::invalid_parameter, "lambda_s must exceed 1");
  }

  // lambda_s^(1/alpha - 1): relative attractiveness of small-cell bandwidth.
  double efficiency_weight() const { return std::pow(lambda_s, 1.0 / alpha - 1.0); }

  // Fraction of bandwidth that goes to small-cells at the unconstrained
  // optimum (and at the unconstrained duopoly equilibrium).
  double small_cell_share() const {
    const double w = n_fixed * efficiency_weight();
    return w / (w + n_mobile);
  }
};

// One SP's bandwidth split. small and macro are stored together; every
// constructor keeps small + macro == total.
struct SpAllocation {
  double total = 0.0;
  double small = 0.0;
  double macro = 0.0;
  double floor = 0.0;

  static SpAllocation make(double total, double small, double floor = 0.0) {
    SpAllocation a{total, small, total - small, floor};
    a.validate();
    return a;
  }

  SpAllocation with_small(double new_small) const { return make(total, new_small, floor); }

  void validate() const {
    if (!(total >= 0.0)) throw Error(Errc::invalid_parameter, "total bandwidth must be non-negative");
    if (!(floor >= 0.0)) throw Error(Errc::invalid_floor, "floor must be non-negative");
    if (floor > total) throw Error(Errc::invalid_floor, "floor exceeds total bandwidth");
    if (std::abs(small + macro - total) > kSplitTolerance) {
      throw Error(Errc::invalid_parameter, "small + macro must equal total");
    }
    if (macro < -kSplitTolerance) throw Error(Errc::invalid_parameter, "macro bandwidth is negative");
    if (small < floor - kSplitTolerance) {
      throw Error(Errc::invalid_floor, "small-cell bandwidth below its floor");
    }
  }
};

struct DuopolyAllocation {
  SpAllocation sp1;
  SpAllocation sp2;

  const SpAllocation& operator[](std::size_t i) const { return i == 0 ? sp1 : sp2; }
  SpAllocation& operator[](std::size_t i) { return i == 0 ? sp1 : sp2; }

  double total_small() const { return sp1.small + sp2.small; }
  double total_macro() const { return sp1.macro + sp2.macro; }
  double total() const { return sp1.total + sp2.total; }
};

struct CapacityPair {
  double c_macro = 0.0;
  double c_small = 0.0;
};

enum class Regime { Separated, Overflow };

inline std::string to_string(Regime r) { return r == Regime::Separated ? "Separated" : "Overflow"; }

struct ClearingOutcome {
  double price_macro = kInf;
  double price_small = kInf;
  double rate_macro = 0.0;
  double rate_small = 0.0;
  double mass_macro = 0.0;
  double mass_small = 0.0;
  double overflow_fraction = 0.0;
  Regime regime = Regime::Separated;
  // Set when there is no macro capacity: mobile users get no service and
  // contribute nothing to welfare or revenue.
  bool mobile_unserved = false;
};

// u(r) = r^(1-alpha) / (1-alpha)
inline double utility(double rate, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::invalid_parameter, "alpha must lie in (0, 1)");
  if (!(rate >= 0.0)) throw Error(Errc::invalid_parameter, "rate must be non-negative");
  if (rate == 0.0) return 0.0;
  return std::pow(rate, 1.0 - alpha) / (1.0 - alpha);
}

// Rate demanded at unit price p: (1/p)^(1/alpha).
inline double demand(double price, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::invalid_parameter, "alpha must lie in (0, 1)");
  if (!(price > 0.0)) throw Error(Errc::invalid_price, "price must be positive");
  return std::pow(1.0 / price, 1.0 / alpha);
}

inline double net_payoff(double price, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::invalid_parameter, "alpha must lie in (0, 1)");
  if (!(price > 0.0)) throw Error(Errc::invalid_price, "price must be positive");
  return alpha / (1.0 - alpha) * std::pow(price, 1.0 - 1.0 / alpha);
}

// Marginal utility at the given rate; +inf at zero rate.
inline double clearing_price(double rate, double alpha) {
  return rate > 0.0 ? std::pow(rate, -alpha) : kInf;
}

inline CapacityPair capacities(const MarketParams& params, const SpAllocation& alloc) {
  return {alloc.macro * params.r0, params.lambda_s * alloc.small * params.r0};
}

inline CapacityPair capacities(const MarketParams& params, const DuopolyAllocation& alloc) {
  const CapacityPair a = capacities(params, alloc.sp1);
  const CapacityPair b = capacities(params, alloc.sp2);
  return {a.c_macro + b.c_macro, a.c_small + b.c_small};
}

inline ClearingOutcome clear_market(const MarketParams& params, const CapacityPair& caps) {
  if (!(caps.c_macro >= 0.0) || !(caps.c_small >= 0.0)) {
    throw Error(Errc::invalid_parameter, "capacities must be non-negative");
  }
  const double nm = params.n_mobile;
  const double nf = params.n_fixed;
  const double alpha = params.alpha;

  ClearingOutcome out;
  const double rate_small_alone = caps.c_small / nf;
  const double rate_macro_alone = caps.c_macro / nm;

  if (rate_small_alone >= rate_macro_alone) {
    out.regime = Regime::Separated;
    out.rate_small = rate_small_alone;
    out.rate_macro = rate_macro_alone;
    out.mass_small = caps.c_small > 0.0 ? nf : 0.0;
    out.mass_macro = caps.c_macro > 0.0 ? nm : 0.0;
    out.overflow_fraction = 0.0;
    out.mobile_unserved = caps.c_macro == 0.0;
  } else {
    // Fixed users move onto macro-cells until the per-user rates agree.
    out.regime = Regime::Overflow;
    const double common = (caps.c_macro + caps.c_small) / (nm + nf);
    out.rate_small = common;
    out.rate_macro = common;
    out.overflow_fraction = (nf * caps.c_macro - nm * caps.c_small) / (nf * (caps.c_macro + caps.c_small));
    out.mass_macro = nm + out.overflow_fraction * nf;
    out.mass_small = (1.0 - out.overflow_fraction) * nf;
  }
  out.price_small = clearing_price(out.rate_small, alpha);
  out.price_macro = clearing_price(out.rate_macro, alpha);
  return out;
}

inline ClearingOutcome clear_market(const MarketParams& params, const DuopolyAllocation& alloc) {
  return clear_market(params, capacities(params, alloc));
}

// Payments collected by one SP. Users on equally priced services spread in
// proportion to capacity, so every unit of capacity sells at its tier price.
inline double sp_revenue(const MarketParams& params, const SpAllocation& alloc,
                         const ClearingOutcome& outcome) {
  const CapacityPair c = capacities(params, alloc);
  if (outcome.regime == Regime::Overflow) {
    return (c.c_small + c.c_macro) * outcome.price_macro;
  }
  double revenue = 0.0;
  if (c.c_small > 0.0) revenue += c.c_small * outcome.price_small;
  if (c.c_macro > 0.0) revenue += c.c_macro * outcome.price_macro;
  return revenue;
}

inline double social_welfare(const MarketParams& params, const ClearingOutcome& outcome) {
  const double fixed_on_macro = outcome.overflow_fraction * params.n_fixed;
  const double mobile = outcome.mobile_unserved ? 0.0 : params.n_mobile;
  return (mobile + fixed_on_macro) * utility(outcome.rate_macro, params.alpha) +
         outcome.mass_small * utility(outcome.rate_small, params.alpha);
}

inline std::array<double, 2> sp_revenues(const MarketParams& params, const DuopolyAllocation& alloc) {
  const ClearingOutcome outcome = clear_market(params, alloc);
  return {sp_revenue(params, alloc.sp1, outcome), sp_revenue(params, alloc.sp2, outcome)};
}

inline double social_welfare(const MarketParams& params, const DuopolyAllocation& alloc) {
  return social_welfare(params, clear_market(params, alloc));
}

}  // namespace hetnet
