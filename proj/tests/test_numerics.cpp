// Copyright 2026 The infrashare Authors
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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "infrashare/errors.hpp"
#include "infrashare/numerics.hpp"

using namespace infrashare;

TEST_CASE("integrate: polynomial and trig integrals") {
  CHECK(numerics::integrate([](double x) { return x * x; }, 0.0, 3.0).value ==
        doctest::Approx(9.0).epsilon(1e-13));
  CHECK(numerics::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(numerics::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("integrate_to_infinity: exponential and Gaussian tails") {
  auto e = numerics::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  auto g = numerics::integrate_to_infinity([](double x) { return std::exp(-x * x); }, 0.0, 1.0);
  CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));
  auto slow = numerics::integrate_to_infinity([](double x) { return std::exp(-x / 1e4); }, 0.0,
                                              1e4);
  CHECK(slow.value == doctest::Approx(1e4).epsilon(1e-12));
  CHECK_THROWS_AS(numerics::integrate_to_infinity([](double) { return 0.0; }, 0.0, 0.0),
                  ParameterError);
}

TEST_CASE("find_root: bracketed roots") {
  const double r = numerics::find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(numerics::find_root([](double x) { return x; }, 0.0, 1.0, 1e-12) == 0.0);
  CHECK_THROWS_AS(numerics::find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                  ParameterError);
}
