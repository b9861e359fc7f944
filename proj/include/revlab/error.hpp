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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace revlab {

/// Failure categories raised by the library. The C API maps each one onto a
/// status code, and the CLI maps status codes onto exit classes.
enum class ErrorCode {
  kInvalidArgument,
  kInvalidIndex,
  kOutOfTable,
  kInvalidCenter,
  kDegenerateSpectrum,
  kRatioExceedsBound,
  kEmptyWindow,
  kUndefinedScale,
  kGridTooCoarse,
  kTraceTooShort,
  kInsufficientResolution,
  kParityViolation,
  kTimeMismatch,
  kDivergentMoment,
  kNoRootInBracket,
  kWindowTooNarrow,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

/// Exception carrying a category and the module that raised it. what() reads
/// "<module>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

[[noreturn]] void fail(ErrorCode code, std::string_view module,
                       const std::string& detail);

}  // namespace revlab
