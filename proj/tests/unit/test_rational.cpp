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

#include <doctest.h>

#include "revlab/rational.hpp"
#include "support.hpp"

using revlab::Rational;

TEST_SUITE("rational") {
  TEST_CASE("mod1 maps into [0, 1)") {
    CHECK(revlab::mod1(Rational(7, 3)) == Rational(1, 3));
    CHECK(revlab::mod1(Rational(-1, 4)) == Rational(3, 4));
    CHECK(revlab::mod1(Rational(-2)) == Rational(0));
  }

  TEST_CASE("floor rounds toward minus infinity") {
    CHECK(revlab::floor(Rational(-1, 2)) == -1);
    CHECK(revlab::floor(Rational(5, 2)) == 2);
    CHECK(revlab::floor(Rational(3)) == 3);
  }

  TEST_CASE("parse and print round-trip") {
    CHECK(revlab::parse_rational("1/12") == Rational(1, 12));
    CHECK(revlab::parse_rational(" -6/8 ") == Rational(-3, 4));
    CHECK(revlab::parse_rational("5") == Rational(5));
    CHECK(revlab::to_string(Rational(2, 6)) == "1/3");
    CHECK(revlab::to_string(Rational(4)) == "4");
    CHECK(error_of([] { revlab::parse_rational("1/0"); }) ==
          revlab::ErrorCode::kInvalidArgument);
    CHECK(error_of([] { revlab::parse_rational("x"); }) == revlab::ErrorCode::kInvalidArgument);
  }

  TEST_CASE("lcm") {
    CHECK(revlab::lcm(4, 6) == 12);
    CHECK(revlab::lcm(7, 1) == 7);
  }
}
