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

#include <numeric>

#include "doctest.h"
#include "infrashare/errors.hpp"
#include "infrashare/scenario.hpp"
#include "infrashare/units.hpp"

using namespace infrashare;

namespace {

SharedSeller seller(int id, double intensity, double fraction = 1.0) {
  return {{id, intensity}, fraction};
}

}  // namespace

TEST_CASE("association intensity sums the buyer and purchased shares") {
  SharingScenario s(2.0, {seller(1, 4.0, 0.5), seller(2, 3.0)}, Assumption::AllBsServe);
  CHECK(s.association_intensity() == doctest::Approx(7.0));
  CHECK(s.interference_intensity() == doctest::Approx(7.0));
}

TEST_CASE("fractional activity: lambda_I = sum of w_k lambda_k x_k") {
  SharingScenario s(2.0, {seller(1, 4.0, 0.5), seller(2, 3.0)}, Assumption::FractionalActivity);
  // shares 2, 2, 3 out of 7
  CHECK(s.interference_intensity() == doctest::Approx((4.0 + 4.0 + 9.0) / 7.0));
  auto w = s.activity_weights();
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(2.0 / 7.0));
  CHECK(w[2] == doctest::Approx(3.0 / 7.0));
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
  CHECK(s.interference_intensity() <= s.association_intensity());
}

TEST_CASE("with_assumption keeps the geometry") {
  SharingScenario s(1.0, {seller(1, 1.0)}, Assumption::FractionalActivity);
  auto t = s.with_assumption(Assumption::AllBsServe);
  CHECK(t.association_intensity() == s.association_intensity());
  CHECK(t.interference_intensity() == doctest::Approx(2.0));
  CHECK(s.interference_intensity() == doctest::Approx(1.0));
}

TEST_CASE("empty scenario has zero weights") {
  auto s = SharingScenario::own_network(0.0, Assumption::FractionalActivity);
  CHECK(s.association_intensity() == 0.0);
  CHECK(s.interference_intensity() == 0.0);
  CHECK(s.activity_weights() == std::vector<double>{0.0});
}

TEST_CASE("invalid scenarios and radio parameters are rejected") {
  CHECK_THROWS_AS(SharingScenario(-1.0, {}, Assumption::AllBsServe), ParameterError);
  CHECK_THROWS_AS(SharingScenario(1.0, {seller(1, 1.0, 1.5)}, Assumption::AllBsServe),
                  ParameterError);
  RadioParams r;
  r.alpha = 2.0;
  CHECK_THROWS_AS(r.validate(), ParameterError);
  r.alpha = 4.0;
  r.tx_power = 2.0;
  r.max_power = 1.0;
  CHECK_THROWS_AS(r.validate(), ParameterError);
}

TEST_CASE("unit conversions") {
  CHECK(units::db_to_linear(20.0) == doctest::Approx(100.0));
  CHECK(units::dbm_to_watts(10.0) == doctest::Approx(0.01));
  CHECK(units::dbm_to_watts(-150.0) == doctest::Approx(1e-18));
  CHECK(units::watts_to_dbm(1.0) == doctest::Approx(30.0));
  CHECK(units::per_m2_to_per_disk(units::per_disk_to_per_m2(10.0)) == doctest::Approx(10.0));
}
