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

// JSON scenario files. Layout (every section optional, unknown keys are
// rejected):
//
//   {
//     "params":    {"alpha": 0.5, "n_mobile": 50, "n_fixed": 50,
//                   "r0": 50, "lambda_s": 2},
//     "sps":       [{"total": 2, "floor": 0}, {"total": 1, "floor": 0}],
//     "regulator": {"b_new": 6, "grid_points": 201},
//     "output":    {"path": "out.csv", "format": "csv"}
//   }
//
// An SP entry carries either "total" (bandwidth it splits freely, used by
// monopoly/duopoly/regions/verify) or "initial" (incumbent bandwidth before
// the regulator's new small-cell-only band, used by sweep).

#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetnet/error.hpp"
#include "hetnet/market.hpp"

namespace hetnet {

struct SpEntry {
  std::optional<double> total;
  std::optional<double> initial;
  double floor = 0.0;
};

struct ScenarioFile {
  std::optional<double> alpha;
  std::optional<double> n_mobile;
  std::optional<double> n_fixed;
  std::optional<double> r0;
  std::optional<double> lambda_s;
  std::vector<SpEntry> sps;
  std::optional<double> b_new;
  std::optional<std::size_t> grid_points;
  std::optional<std::string> out_path;
  std::optional<std::string> format;

  // Builds validated market parameters, naming the first missing or bad field.
  MarketParams market_params() const {
    auto need = [](const std::optional<double>& v, const char* name) {
      if (!v) throw Error(Errc::input_error, std::string("missing field 'params.") + name + "'");
      return *v;
    };
    MarketParams p{need(alpha, "alpha"), need(n_mobile, "n_mobile"), need(n_fixed, "n_fixed"), need(r0, "r0"),
                   need(lambda_s, "lambda_s")};
    try {
      p.validate();
    } catch (const Error& e) {
      throw Error(Errc::input_error, std::string("field 'params': ") + e.what());
    }
    return p;
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw Error(Errc::input_error, "unknown key '" + where + it.key() + "'");
    }
  }
}

inline const nlohmann::json& require_object(const nlohmann::json& j, const std::string& name) {
  if (!j.is_object()) throw Error(Errc::input_error, "field '" + name + "' must be an object");
  return j;
}

inline double read_number(const nlohmann::json& j, const std::string& name) {
  if (!j.is_number()) throw Error(Errc::input_error, "field '" + name + "' must be a number");
  return j.get<double>();
}

inline std::string read_string(const nlohmann::json& j, const std::string& name) {
  if (!j.is_string()) throw Error(Errc::input_error, "field '" + name + "' must be a string");
  return j.get<std::string>();
}

}  // namespace detail

inline ScenarioFile parse_scenario(const nlohmann::json& doc) {
  using detail::read_number;
  detail::require_object(doc, "<root>");
  detail::reject_unknown(doc, "", {"params", "sps", "regulator", "output"});
  ScenarioFile s;

  if (doc.contains("params")) {
    const auto& p = detail::require_object(doc["params"], "params");
    detail::reject_unknown(p, "params.", {"alpha", "n_mobile", "n_fixed", "r0", "lambda_s"});
    if (p.contains("alpha")) s.alpha = read_number(p["alpha"], "params.alpha");
    if (p.contains("n_mobile")) s.n_mobile = read_number(p["n_mobile"], "params.n_mobile");
    if (p.contains("n_fixed")) s.n_fixed = read_number(p["n_fixed"], "params.n_fixed");
    if (p.contains("r0")) s.r0 = read_number(p["r0"], "params.r0");
    if (p.contains("lambda_s")) s.lambda_s = read_number(p["lambda_s"], "params.lambda_s");
  }

  if (doc.contains("sps")) {
    const auto& list = doc["sps"];
    if (!list.is_array()) throw Error(Errc::input_error, "field 'sps' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string name = "sps[" + std::to_string(i) + "]";
      const auto& e = detail::require_object(list[i], name);
      detail::reject_unknown(e, name + ".", {"total", "initial", "floor"});
      SpEntry sp;
      if (e.contains("total")) sp.total = read_number(e["total"], name + ".total");
      if (e.contains("initial")) sp.initial = read_number(e["initial"], name + ".initial");
      if (e.contains("floor")) sp.floor = read_number(e["floor"], name + ".floor");
      if (sp.total && sp.initial) throw Error(Errc::input_error, "field '" + name + "' has both total and initial");
      if (sp.total && *sp.total < 0.0) throw Error(Errc::input_error, "field '" + name + ".total' must be non-negative");
      if (sp.initial && *sp.initial < 0.0) {
        throw Error(Errc::input_error, "field '" + name + ".initial' must be non-negative");
      }
      if (sp.floor < 0.0) throw Error(Errc::input_error, "field '" + name + ".floor' must be non-negative");
      s.sps.push_back(sp);
    }
  }

  if (doc.contains("regulator")) {
    const auto& r = detail::require_object(doc["regulator"], "regulator");
    detail::reject_unknown(r, "regulator.", {"b_new", "grid_points"});
    if (r.contains("b_new")) s.b_new = read_number(r["b_new"], "regulator.b_new");
    if (r.contains("grid_points")) {
      const auto& g = r["grid_points"];
      if (!g.is_number_integer() || g.get<long long>() < 2) {
        throw Error(Errc::input_error, "field 'regulator.grid_points' must be an integer >= 2");
      }
      s.grid_points = g.get<std::size_t>();
    }
  }

  if (doc.contains("output")) {
    const auto& o = detail::require_object(doc["output"], "output");
    detail::reject_unknown(o, "output.", {"path", "format"});
    if (o.contains("path")) s.out_path = detail::read_string(o["path"], "output.path");
    if (o.contains("format")) {
      s.format = detail::read_string(o["format"], "output.format");
      if (*s.format != "csv" && *s.format != "human") {
        throw Error(Errc::input_error, "field 'output.format' must be 'csv' or 'human'");
      }
    }
  }
  return s;
}

inline ScenarioFile parse_scenario(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::input_error, std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

inline ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::input_error, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace hetnet
