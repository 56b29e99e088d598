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

// Locale-independent text output: 12 significant digits, '.' separator,
// '\n' line endings.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hetnet::report {

inline std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }

enum class Format { Csv, Human };

// A fixed-header table rendered either as CSV or as space-aligned columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, Format format) const {
    if (format == Format::Csv) {
      write_csv_row(os, header_);
      for (const auto& r : rows_) write_csv_row(os, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    auto grow = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    grow(header_);
    for (const auto& r : rows_) grow(r);
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << r[i];
        if (i + 1 < r.size()) os << std::string(width[i] - r[i].size() + 2, ' ');
      }
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void write_csv_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      os << r[i];
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// key/value records: "key: value" lines for humans, two-column CSV otherwise.
class Record {
 public:
  void add(std::string key, std::string value) { items_.emplace_back(std::move(key), std::move(value)); }

  void write(std::ostream& os, Format format) const {
    if (format == Format::Csv) {
      std::string sep;
      for (const auto& [k, v] : items_) {
        os << sep << k;
        sep = ",";
      }
      os << '\n';
      sep.clear();
      for (const auto& [k, v] : items_) {
        os << sep << v;
        sep = ",";
      }
      os << '\n';
      return;
    }
    for (const auto& [k, v] : items_) os << k << ": " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace hetnet::report
