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

#include <doctest.h>

#include "revlab/error.hpp"

// Runs f and returns the code of the revlab::Error it throws.
template <class F>
revlab::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const revlab::Error& e) {
    return e.code();
  }
  FAIL("expected a revlab::Error");
  return revlab::ErrorCode::kInvalidArgument;
}
