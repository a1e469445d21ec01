// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cgap {

enum class ErrorCode {
  kInvalidInstance,
  kOddSetCheckInfeasible,
  kSupportTooLarge,
  kSolverCutoffExceeded,
  kNotBipartite,
  kZeroDenominator,
  kUndefinedRatio,
  kParse,
  kInvalidArgument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance: return "invalid instance";
    case ErrorCode::kOddSetCheckInfeasible: return "odd-set check infeasible";
    case ErrorCode::kSupportTooLarge: return "support too large";
    case ErrorCode::kSolverCutoffExceeded: return "exact-search cutoff exceeded";
    case ErrorCode::kNotBipartite: return "bipartite solver given a general instance";
    case ErrorCode::kZeroDenominator: return "zero fractional value";
    case ErrorCode::kUndefinedRatio: return "undefined ratio";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kInvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cgap
