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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace revlab {

using Rational = boost::rational<std::int64_t>;

/// Fractional part in [0, 1).
Rational mod1(const Rational& x);

/// Largest integer not above x.
std::int64_t floor(const Rational& x);

double to_double(const Rational& x);

/// Parses "p/q" or a bare integer. Throws kInvalidArgument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);

std::int64_t lcm(std::int64_t a, std::int64_t b);

}  // namespace revlab
