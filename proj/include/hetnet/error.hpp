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

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetnet {

enum class Errc {
  invalid_parameter,
  invalid_price,
  invalid_floor,
  degenerate_rates,
  no_convergence,
  inconsistent_result,
  input_error,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_price: return "invalid-price";
    case Errc::invalid_floor: return "invalid-floor";
    case Errc::degenerate_rates: return "degenerate-rates";
    case Errc::no_convergence: return "no-convergence";
    case Errc::inconsistent_result: return "inconsistent-result";
    case Errc::input_error: return "input-error";
  }
  return "unknown";
}

// All library failures are reported as hetnet::Error; code() tells input
// problems apart from solver diagnostics.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

  bool is_solver_diagnostic() const noexcept {
    return code_ == Errc::no_convergence || code_ == Errc::inconsistent_result ||
           code_ == Errc::degenerate_rates;
  }

 private:
  Errc code_;
};

}  // namespace hetnet
