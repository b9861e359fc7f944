// Copyright 2026 The revlab Authors
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

#include "revlab/error.hpp"

namespace revlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidIndex: return "invalid-index";
    case ErrorCode::kOutOfTable: return "out-of-table";
    case ErrorCode::kInvalidCenter: return "invalid-center";
    case ErrorCode::kDegenerateSpectrum: return "degenerate-spectrum";
    case ErrorCode::kRatioExceedsBound: return "ratio-exceeds-bound";
    case ErrorCode::kEmptyWindow: return "empty-window";
    case ErrorCode::kUndefinedScale: return "undefined-scale";
    case ErrorCode::kGridTooCoarse: return "grid-too-coarse";
    case ErrorCode::kTraceTooShort: return "trace-too-short";
    case ErrorCode::kInsufficientResolution: return "insufficient-resolution";
    case ErrorCode::kParityViolation: return "parity-violation";
    case ErrorCode::kTimeMismatch: return "time-mismatch";
    case ErrorCode::kDivergentMoment: return "divergent-moment";
    case ErrorCode::kNoRootInBracket: return "no-root-in-bracket";
    case ErrorCode::kWindowTooNarrow: return "window-too-narrow";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string_view module, const std::string& detail)
    : std::runtime_error(std::string(module) + ": " + detail),
      code_(code),
      module_(module) {}

void fail(ErrorCode code, std::string_view module, const std::string& detail) {
  throw Error(code, module, detail);
}

}  // namespace revlab
