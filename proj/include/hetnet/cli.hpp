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

// Command-line front end. Subcommands:
//
//   monopoly  optimal single-SP split under a small-cell floor
//   duopoly   constrained equilibrium with region label and KKT residuals
//   regions   region label over a 2-D grid of floors
//   sweep     welfare levels across partitions of new small-cell bandwidth
//   verify    brute-force oracle against the analytic solvers
//
// Exit status: 0 success, 1 input error, 2 solver diagnostic.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hetnet/duopoly.hpp"
#include "hetnet/error.hpp"
#include "hetnet/market.hpp"
#include "hetnet/monopoly.hpp"
#include "hetnet/numeric.hpp"
#include "hetnet/oracle.hpp"
#include "hetnet/report.hpp"
#include "hetnet/scenario.hpp"
#include "hetnet/welfare.hpp"

namespace hetnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitSolver = 2;

inline constexpr std::size_t kDefaultRegionGrid = 50;
inline constexpr std::size_t kDefaultSweepPoints = 201;
inline constexpr std::size_t kDefaultOracleResolution = 10'000;
inline constexpr std::size_t kCertificateResolution = 500;

struct Overrides {
  std::string scenario_path;
  std::optional<std::string> out_path;
  std::optional<std::size_t> grid;
  std::optional<std::string> floors;
  std::optional<std::string> totals;
  std::optional<double> b_new;
  std::optional<std::string> format;
  std::optional<double> alpha;
  std::optional<double> n_mobile;
  std::optional<double> n_fixed;
  std::optional<double> r0;
  std::optional<double> lambda_s;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string piece = text.substr(start, comma - start);
    double v = 0.0;
    const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || res.ec != std::errc() || res.ptr != piece.data() + piece.size()) {
      throw Error(Errc::input_error, "flag '" + flag + "' expects comma-separated numbers, got '" + text + "'");
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

inline void apply(ScenarioFile& s, const Overrides& o) {
  if (o.alpha) s.alpha = o.alpha;
  if (o.n_mobile) s.n_mobile = o.n_mobile;
  if (o.n_fixed) s.n_fixed = o.n_fixed;
  if (o.r0) s.r0 = o.r0;
  if (o.lambda_s) s.lambda_s = o.lambda_s;
  if (o.b_new) s.b_new = o.b_new;
  if (o.out_path) s.out_path = o.out_path;
  if (o.format) {
    if (*o.format != "csv" && *o.format != "human") {
      throw Error(Errc::input_error, "flag '--format' must be 'csv' or 'human'");
    }
    s.format = o.format;
  }
  if (o.totals) {
    const auto t = parse_list(*o.totals, "--totals");
    if (s.sps.size() < t.size()) s.sps.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      s.sps[i].total = t[i];
      s.sps[i].initial.reset();
    }
  }
  if (o.floors) {
    const auto f = parse_list(*o.floors, "--floors");
    if (f.size() > s.sps.size()) throw Error(Errc::input_error, "flag '--floors' lists more floors than SPs");
    for (std::size_t i = 0; i < f.size(); ++i) s.sps[i].floor = f[i];
  }
}

inline report::Format format_of(const ScenarioFile& s, report::Format fallback) {
  if (!s.format) return fallback;
  return *s.format == "csv" ? report::Format::Csv : report::Format::Human;
}

inline double sp_total(const ScenarioFile& s, std::size_t i) {
  const std::string name = "sps[" + std::to_string(i) + "].total";
  if (!s.sps[i].total) throw Error(Errc::input_error, "missing field '" + name + "'");
  return *s.sps[i].total;
}

inline void check_floor(const ScenarioFile& s, std::size_t i, double total) {
  if (s.sps[i].floor > total) {
    throw Error(Errc::input_error, "field 'sps[" + std::to_string(i) + "].floor' exceeds the SP's total bandwidth");
  }
}

inline void require_sp_count(const ScenarioFile& s, std::size_t n, const char* command) {
  if (s.sps.size() != n) {
    throw Error(Errc::input_error, std::string("field 'sps': ") + command + " expects exactly " + std::to_string(n) +
                                       " SP entr" + (n == 1 ? "y" : "ies") + ", got " + std::to_string(s.sps.size()));
  }
}

inline int cmd_monopoly(const ScenarioFile& s, std::ostream& os) {
  const MarketParams p = s.market_params();
  require_sp_count(s, 1, "monopoly");
  const double total = sp_total(s, 0);
  check_floor(s, 0, total);
  const MonopolyResult r = optimal_split(p, total, s.sps[0].floor);
  report::Record rec;
  rec.add("b_total", report::number(total));
  rec.add("floor", report::number(s.sps[0].floor));
  rec.add("b_small", report::number(r.allocation.small));
  rec.add("b_macro", report::number(r.allocation.macro));
  rec.add("clipped", report::boolean(r.clipped));
  rec.add("regime", to_string(r.outcome.regime));
  rec.add("price_small", report::number(r.outcome.price_small));
  rec.add("price_macro", report::number(r.outcome.price_macro));
  rec.add("rate_small", report::number(r.outcome.rate_small));
  rec.add("rate_macro", report::number(r.outcome.rate_macro));
  rec.add("revenue", report::number(r.revenue));
  rec.add("welfare", report::number(r.welfare));
  rec.write(os, format_of(s, report::Format::Human));
  return kExitOk;
}

inline int cmd_duopoly(const ScenarioFile& s, std::ostream& os) {
  const MarketParams p = s.market_params();
  require_sp_count(s, 2, "duopoly");
  const double b1 = sp_total(s, 0);
  const double b2 = sp_total(s, 1);
  check_floor(s, 0, b1);
  check_floor(s, 1, b2);
  const EquilibriumResult r = solve_ne(p, b1, b2, {s.sps[0].floor, s.sps[1].floor});
  const ClearingOutcome outcome = clear_market(p, r.allocation);
  report::Record rec;
  rec.add("region", std::string(to_string(r.region)));
  rec.add("b1s", report::number(r.allocation.sp1.small));
  rec.add("b1m", report::number(r.allocation.sp1.macro));
  rec.add("b2s", report::number(r.allocation.sp2.small));
  rec.add("b2m", report::number(r.allocation.sp2.macro));
  rec.add("kkt1", report::number(r.kkt_residual_1));
  rec.add("kkt2", report::number(r.kkt_residual_2));
  rec.add("iterations", std::to_string(r.iterations));
  rec.add("price_small", report::number(outcome.price_small));
  rec.add("price_macro", report::number(outcome.price_macro));
  rec.add("rev1", report::number(r.revenues[0]));
  rec.add("rev2", report::number(r.revenues[1]));
  rec.add("welfare", report::number(r.welfare));
  rec.write(os, format_of(s, report::Format::Human));
  return kExitOk;
}

inline int cmd_regions(const ScenarioFile& s, std::size_t grid, std::ostream& os) {
  const MarketParams p = s.market_params();
  require_sp_count(s, 2, "regions");
  const double b1 = sp_total(s, 0);
  const double b2 = sp_total(s, 1);
  if (grid < 2) throw Error(Errc::input_error, "flag '--grid' must be at least 2");
  report::Table table({"floor1", "floor2", "region", "b1s", "b2s"});
  int status = kExitOk;
  for (double f1 : numeric::linspace(0.0, b1, grid)) {
    for (double f2 : numeric::linspace(0.0, b2, grid)) {
      try {
        const EquilibriumResult r = solve_ne(p, b1, b2, {f1, f2});
        table.add({report::number(f1), report::number(f2), std::string(to_string(r.region)),
                   report::number(r.allocation.sp1.small), report::number(r.allocation.sp2.small)});
      } catch (const Error& e) {
        if (!e.is_solver_diagnostic()) throw;
        table.add({report::number(f1), report::number(f2), "error", "nan", "nan"});
        status = kExitSolver;
      }
    }
  }
  table.write(os, format_of(s, report::Format::Csv));
  return status;
}

inline int cmd_sweep(const ScenarioFile& s, std::optional<std::size_t> grid, std::ostream& os, std::ostream& err) {
  RegulatorScenario sc;
  sc.params = s.market_params();
  require_sp_count(s, 2, "sweep");
  for (std::size_t i = 0; i < 2; ++i) {
    if (!s.sps[i].initial) {
      throw Error(Errc::input_error, "missing field 'sps[" + std::to_string(i) + "].initial'");
    }
  }
  sc.b1_initial = *s.sps[0].initial;
  sc.b2_initial = *s.sps[1].initial;
  if (!s.b_new) throw Error(Errc::input_error, "missing field 'regulator.b_new'");
  if (!(*s.b_new > 0.0)) throw Error(Errc::input_error, "field 'regulator.b_new' must be positive");
  sc.b_new = *s.b_new;
  const std::size_t n = grid.value_or(s.grid_points.value_or(kDefaultSweepPoints));
  if (n < 2) throw Error(Errc::input_error, "flag '--grid' must be at least 2");

  const report::Format fmt = format_of(s, report::Format::Csv);
  if (fmt == report::Format::Human) {
    os << "threshold: " << report::number(threshold(sc)) << '\n';
    const auto interval = equality_interval(sc);
    os << "equality_interval: "
       << (interval ? "[" + report::number(interval->lo) + ", " + report::number(interval->hi) + "]" : "empty") << '\n';
  }
  report::Table table({"b1_new", "b2_new", "sw_wo_star", "sw_w_star", "sw_w_ne", "region", "rev1", "rev2"});
  int status = kExitOk;
  for (const SweepRow& row : sweep(sc, n)) {
    table.add({report::number(row.b1_new), report::number(row.b2_new), report::number(row.sw_wo_star),
               report::number(row.sw_w_star), report::number(row.sw_w_ne),
               row.region ? std::string(to_string(*row.region)) : "error", report::number(row.rev1),
               report::number(row.rev2)});
    if (!row.diagnostic.empty()) {
      err << "b1_new=" << report::number(row.b1_new) << ": " << row.diagnostic << '\n';
      status = kExitSolver;
    }
  }
  table.write(os, fmt);
  return status;
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

inline int cmd_verify(const ScenarioFile& s, std::optional<std::size_t> grid, std::ostream& os) {
  const MarketParams p = s.market_params();
  if (s.sps.size() != 1 && s.sps.size() != 2) {
    throw Error(Errc::input_error, "field 'sps': verify expects one or two SP entries");
  }
  const std::size_t resolution = grid.value_or(kDefaultOracleResolution);
  const oracle::GridSpec line{resolution, 1e-12};
  line.validate();
  std::vector<Check> checks;

  std::vector<double> totals;
  double floor_sum = 0.0;
  for (std::size_t i = 0; i < s.sps.size(); ++i) {
    totals.push_back(sp_total(s, i));
    check_floor(s, i, totals.back());
    floor_sum += s.sps[i].floor;
  }
  const double pooled = totals.size() == 1 ? totals[0] : totals[0] + totals[1];

  // Single-SP optimum on the pooled bandwidth.
  {
    const MonopolyResult m = optimal_split(p, pooled, std::min(floor_sum, pooled));
    const oracle::SocialOptimum g = oracle::grid_social_opt(p, pooled, std::min(floor_sum, pooled), line);
    const double step = (pooled - std::min(floor_sum, pooled)) / static_cast<double>(resolution);
    const double gap = std::abs(m.allocation.small - g.small_total);
    checks.push_back({"monopoly_split_vs_grid", gap, step, gap <= step + 1e-12});
    const double excess = g.welfare - m.welfare;
    const double wtol = 1e-9 * std::abs(m.welfare);
    checks.push_back({"monopoly_welfare_vs_grid", excess, wtol, excess <= wtol});
  }

  int status = kExitOk;
  if (totals.size() == 2) {
    const ConstraintPair floors{s.sps[0].floor, s.sps[1].floor};
    const EquilibriumResult r = solve_ne(p, totals[0], totals[1], floors);
    const double eps = 1e-4 * std::max(r.revenues[0], r.revenues[1]);
    const oracle::NeCertificate cert =
        oracle::certify_epsilon_ne(p, r.allocation, {floors.floor1, floors.floor2}, {kCertificateResolution, eps});
    checks.push_back({"ne_epsilon_certificate", cert.max_improvement, eps, cert.certified});
    for (std::size_t i = 0; i < 2; ++i) {
      const SpAllocation& opp = r.allocation[1 - i];
      const double br = best_response(p, i, opp, totals[i], floors[i]);
      const double gbr = oracle::grid_best_response(p, i, opp, totals[i], floors[i], line);
      const double step = (totals[i] - floors[i]) / static_cast<double>(resolution);
      const double gap = std::abs(br - gbr);
      checks.push_back({"best_response_sp" + std::to_string(i + 1) + "_vs_grid", gap, 2.0 * step,
                        gap <= 2.0 * step + 1e-12});
    }
    const auto t1 = type1_condition(p, totals[0], totals[1], floors);
    const bool both_bind = ::hetnet::detail::at_floor(r.allocation.sp1) && ::hetnet::detail::at_floor(r.allocation.sp2);
    const bool agree = (t1[0] && t1[1]) == both_bind;
    checks.push_back({"type1_condition_vs_solver", agree ? 0.0 : 1.0, 0.0, agree});
  }

  report::Table table({"check", "value", "tolerance", "pass"});
  for (const Check& c : checks) {
    table.add({c.name, report::number(c.value), report::number(c.tolerance), report::boolean(c.pass)});
    if (!c.pass) status = kExitSolver;
  }
  table.write(os, format_of(s, report::Format::Human));
  return status;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pricing and bandwidth equilibria for two-tier wireless markets with small-cell floors", "hetnet"};
  app.require_subcommand(1);
  Overrides o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario_path, "JSON scenario file");
    sub->add_option("--out", o.out_path, "write output to this path instead of stdout");
    sub->add_option("--grid", o.grid, "grid points per axis (regions, sweep) or oracle resolution (verify)");
    sub->add_option("--floors", o.floors, "small-cell floors, comma separated");
    sub->add_option("--totals", o.totals, "SP total bandwidths, comma separated");
    sub->add_option("--b-new", o.b_new, "new small-cell-only bandwidth for sweep");
    sub->add_option("--format", o.format, "csv or human");
    sub->add_option("--alpha", o.alpha, "utility curvature");
    sub->add_option("--n-mobile", o.n_mobile, "mobile-user density");
    sub->add_option("--n-fixed", o.n_fixed, "fixed-user density");
    sub->add_option("--r0", o.r0, "macro spectral efficiency");
    sub->add_option("--lambda-s", o.lambda_s, "small-cell efficiency gain");
  };
  CLI::App* monopoly = app.add_subcommand("monopoly", "optimal single-SP split under a floor");
  CLI::App* duopoly = app.add_subcommand("duopoly", "constrained duopoly equilibrium");
  CLI::App* regions = app.add_subcommand("regions", "equilibrium region over a floor grid");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "welfare across partitions of new bandwidth");
  CLI::App* verify = app.add_subcommand("verify", "compare solvers against brute-force oracles");
  for (CLI::App* sub : {monopoly, duopoly, regions, sweep_cmd, verify}) add_common(sub);

  std::vector<std::string> storage = args;
  if (storage.empty()) storage.emplace_back("hetnet");
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    ScenarioFile s = o.scenario_path.empty() ? ScenarioFile{} : load_scenario(o.scenario_path);
    detail::apply(s, o);

    std::ostringstream buf;
    int status = kExitOk;
    if (monopoly->parsed()) {
      status = detail::cmd_monopoly(s, buf);
    } else if (duopoly->parsed()) {
      status = detail::cmd_duopoly(s, buf);
    } else if (regions->parsed()) {
      status = detail::cmd_regions(s, o.grid.value_or(kDefaultRegionGrid), buf);
    } else if (sweep_cmd->parsed()) {
      status = detail::cmd_sweep(s, o.grid, buf, err);
    } else {
      status = detail::cmd_verify(s, o.grid, buf);
    }

    if (s.out_path) {
      std::ofstream file(*s.out_path, std::ios::binary);
      if (!file) throw Error(Errc::input_error, "cannot write output file '" + *s.out_path + "'");
      file << buf.str();
    } else {
      out << buf.str();
    }
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_solver_diagnostic() ? kExitSolver : kExitInput;
  }
}

}  // namespace hetnet::cli
