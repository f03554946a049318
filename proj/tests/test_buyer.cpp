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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "infrashare/buyer.hpp"
#include "infrashare/coverage.hpp"
#include "infrashare/errors.hpp"
#include "infrashare/units.hpp"
#include "oracles.hpp"

using namespace infrashare;
using buyer::FractionMethod;

namespace {

double per_m2(double count) { return units::per_disk_to_per_m2(count); }

RadioParams field_radio(double alpha = 5.0, double t_db = 20.0) {
  RadioParams r;
  r.alpha = alpha;
  r.threshold = units::db_to_linear(t_db);
  r.noise_power = units::dbm_to_watts(-150.0);
  r.tx_power = units::dbm_to_watts(10.0);
  r.max_power = r.tx_power;
  return r;
}

buyer::PurchaseProblem four_sellers(double eps) {
  buyer::PurchaseProblem p;
  p.buyer_intensity = per_m2(2.0);
  p.sellers = {{0, per_m2(10.0), 300.0},
               {1, per_m2(15.0), 250.0},
               {2, per_m2(20.0), 400.0},
               {3, per_m2(8.0), 120.0}};
  p.radio = field_radio(4.0, 0.0);
  p.qos.epsilon = eps;
  return p;
}

buyer::PurchaseProblem six_equal_sellers(double eps) {
  buyer::PurchaseProblem p;
  p.buyer_intensity = per_m2(10.0);
  for (int k = 1; k <= 6; ++k) p.sellers.push_back({k, per_m2(10.0), 200.0});
  p.radio = field_radio();
  p.qos.epsilon = eps;
  return p;
}

}  // namespace

TEST_CASE("all-serve futility") {
  const RadioParams r = field_radio();
  const double inv_beta = 1.0 / coverage::beta(r);
  CHECK(buyer::check_21_futility(r, {0.1}).futile);
  CHECK(std::isinf(buyer::check_21_futility(r, {0.1}).min_intensity));
  const auto ok = buyer::check_21_futility(r, {0.95});
  CHECK_FALSE(ok.futile);
  CHECK(1.0 - 0.95 < inv_beta);
  // The returned intensity meets the target exactly.
  RadioParams at = r;
  const double pc = coverage::approx(SharingScenario::own_network(ok.min_intensity), at);
  CHECK(pc == doctest::Approx(0.05).epsilon(1e-10));
  CHECK_FALSE(buyer::check_21_futility(r, {1.0 - 1e-9}).futile);
}

TEST_CASE("feasibility: own infrastructure and empty deployments") {
  // Own infrastructure alone tends to 1/beta ~ 0.12 > 1 - eps.
  auto p = six_equal_sellers(0.9);
  p.buyer_intensity = per_m2(1e4);
  auto f = buyer::feasibility_22(p, {});
  CHECK(f.feasible);
  CHECK(f.slack > 0.0);
  p.buyer_intensity = 0.0;
  f = buyer::feasibility_22(p, {});
  CHECK_FALSE(f.feasible);
  CHECK(f.slack < 0.0);
}

TEST_CASE("feasibility with the effective intensity is the coverage target") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int i = 0; i < 300; ++i) {
    auto p = four_sellers(0.05 + 0.6 * u(rng));
    buyer::Fractions x;
    for (const auto& s : p.sellers) x[s.id] = u(rng);
    const auto f = buyer::feasibility_22(p, x);
    const double pc = coverage::approx(buyer::purchased_scenario(p, x), p.radio);
    const bool meets = pc >= 1.0 - p.qos.epsilon;
    if (std::abs(pc - (1.0 - p.qos.epsilon)) > 1e-9) {
      CHECK(f.feasible == meets);
      ++agree;
    }
  }
  CHECK(agree > 250);
}

TEST_CASE("field six-seller setup cannot reach 90% coverage") {
  auto p = six_equal_sellers(0.1);
  buyer::Fractions all;
  for (const auto& s : p.sellers) all[s.id] = 1.0;
  CHECK_FALSE(buyer::feasibility_22(p, all).feasible);
  const auto sol = buyer::greedy_select(p);
  CHECK_FALSE(sol.feasible);
  CHECK(sol.selected.size() == 6);
  for (const auto& [id, x] : sol.fractions) CHECK(x == 1.0);
  CHECK(sol.achieved_coverage == doctest::Approx(0.4858).epsilon(1e-3));
  // Loose enough targets become reachable.
  CHECK(buyer::greedy_select(six_equal_sellers(0.6)).feasible);
}

TEST_CASE("fractions: clamping and positivity") {
  buyer::PurchaseProblem p;
  p.buyer_intensity = 0.0;
  p.sellers = {{7, 1.0, 2.0}};
  p.radio = field_radio(4.0, 0.0);
  p.qos.epsilon = 0.5;
  const double beta = coverage::beta(p.radio);
  // lambda = lambda_1 = 1, q = 2: pre-clamp x = (2 mu + 1) / (beta - 1) = 2.
  const double mu = (2.0 * (beta - 1.0) - 1.0) / 2.0;
  REQUIRE(mu > 0.0);
  CHECK((2.0 * mu + 1.0) / (2.0 * (beta - 1.0) * 0.5) == doctest::Approx(2.0));
  CHECK(buyer::fractions_for_multiplier(p, {7}, mu).at(7) == 1.0);
  for (double m : {0.0, 1e-3, 1.0, 1e3}) {
    CHECK(buyer::fractions_for_multiplier(p, {7}, m).at(7) >= 0.0);
  }
}

TEST_CASE("solve_fractions: KKT stationarity of interior coordinates") {
  buyer::PurchaseProblem p;
  p.buyer_intensity = per_m2(0.5);
  p.sellers = {{1, per_m2(0.3), 100.0}, {2, per_m2(0.5), 900.0}};
  p.radio = field_radio(4.0, 20.0);
  p.qos.epsilon = 0.84;
  const auto sol = buyer::solve_fractions(p, {1, 2});
  REQUIRE(sol.method == FractionMethod::RootSolve);
  CHECK(sol.mu_star > 0.0);
  CHECK(buyer::feasibility_22(p, sol.fractions).feasible);
  const double lambda = buyer::nominal_intensity(p, {1, 2});
  int interior = 0;
  for (const auto& s : p.sellers) {
    const double x = sol.fractions.at(s.id);
    if (x > 0.0 && x < 1.0 && sol.mu_star > 0.0) {
      ++interior;
      CHECK(std::abs(buyer::lagrangian_gradient(p, s, sol.mu_star, x, lambda)) < 1e-8 * s.price);
    }
  }
  CHECK(interior == 2);
  CHECK(std::abs(sol.slack) <= 1e-9 * lambda);

  // Stationarity holds along the whole multiplier family.
  for (double mu : {1e-12, 1e-11, 1e-10}) {
    const auto x = buyer::fractions_for_multiplier(p, {1, 2}, mu);
    for (const auto& s : p.sellers) {
      if (x.at(s.id) > 0.0 && x.at(s.id) < 1.0) {
        CHECK(std::abs(buyer::lagrangian_gradient(p, s, mu, x.at(s.id), lambda)) <
              1e-8 * s.price);
      }
    }
  }
}

TEST_CASE("solve_fractions: closed-form multiplier") {
  auto p = four_sellers(0.3);
  const auto sol = buyer::solve_fractions(p, {3, 1});
  double num = 0, den = 0;
  for (int id : {3, 1}) {
    const auto& s = *std::find_if(p.sellers.begin(), p.sellers.end(),
                                  [id](const auto& o) { return o.id == id; });
    num += s.price / s.intensity * (0.3 / s.intensity - 1.0);
    den += std::pow(s.price / s.intensity, 2);
  }
  CHECK(sol.mu_closed_form == doctest::Approx(num / den));
  CHECK_THROWS_AS(buyer::solve_fractions(p, {}), ParameterError);
  CHECK_THROWS_AS(buyer::solve_fractions(p, {99}), ParameterError);
}

TEST_CASE("solve_fractions: insufficient seller set buys everything") {
  auto p = six_equal_sellers(0.1);
  const auto sol = buyer::solve_fractions(p, {1, 2});
  CHECK(sol.method == FractionMethod::Insufficient);
  CHECK(sol.fractions.at(1) == 1.0);
  CHECK(sol.fractions.at(2) == 1.0);
  CHECK(sol.slack < 0.0);
}

TEST_CASE("greedy: buyer alone suffices") {
  auto p = four_sellers(0.5);
  p.buyer_intensity = per_m2(1e4);
  const auto sol = buyer::greedy_select(p);
  CHECK(sol.feasible);
  CHECK(sol.selected.empty());
  CHECK(sol.total_cost == 0.0);
  CHECK(sol.fraction_evaluations == 0);
}

TEST_CASE("greedy: cheaper per unit intensity enters first") {
  buyer::PurchaseProblem p;
  p.buyer_intensity = per_m2(1.0);
  p.sellers = {{1, per_m2(10.0), 300.0}, {2, per_m2(10.0), 100.0}};
  p.radio = field_radio(4.0, 0.0);
  p.qos.epsilon = 0.3;
  const auto sol = buyer::greedy_select(p);
  REQUIRE_FALSE(sol.selected.empty());
  CHECK(sol.selected.front() == 2);
}

TEST_CASE("greedy: invariant under input order, ties broken by id") {
  auto p = four_sellers(0.25);
  p.sellers[1].price = p.sellers[0].price * p.sellers[1].intensity / p.sellers[0].intensity;
  const auto reference = buyer::greedy_select(p);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  do {
    auto q = p;
    for (std::size_t i = 0; i < perm.size(); ++i) q.sellers[i] = p.sellers[perm[i]];
    const auto sol = buyer::greedy_select(q);
    CHECK(sol.selected == reference.selected);
    CHECK(sol.fractions == reference.fractions);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("greedy: purchased intensity is non-increasing in eps") {
  double previous = std::numeric_limits<double>::infinity();
  for (double eps = 0.05; eps <= 0.5001; eps += 0.05) {
    const auto sol = buyer::greedy_select(four_sellers(eps));
    CAPTURE(eps);
    CHECK(sol.purchased_intensity <= previous * (1.0 + 1e-12));
    CHECK(sol.fraction_evaluations <= 16);
    if (sol.feasible) {
      CHECK(buyer::feasibility_22(four_sellers(eps), sol.fractions).slack >=
            -1e-9 * per_m2(55.0));
      CHECK(sol.achieved_coverage >= 1.0 - eps - 1e-9);
    }
    previous = sol.purchased_intensity;
  }
}

TEST_CASE("greedy against exhaustive search on a 0.05 grid") {
  for (double eps : {0.2, 0.25, 0.3, 0.35, 0.4}) {
    const auto p = four_sellers(eps);
    const auto sol = buyer::greedy_select(p);
    const auto brute = oracles::brute_force_purchase(p);
    CAPTURE(eps);
    CHECK(brute.found == sol.feasible);
    if (brute.found && sol.feasible) {
      MESSAGE("eps " << eps << ": greedy " << sol.total_cost << ", grid optimum " << brute.cost);
    }
  }
}

TEST_CASE("nominal convention is available") {
  auto p = four_sellers(0.3);
  p.convention = buyer::IntensityConvention::Nominal;
  buyer::Fractions x{{0, 0.5}};
  const double eps = 0.3;
  const double beta = coverage::beta(p.radio);
  const double lambda = p.buyer_intensity + p.sellers[0].intensity;
  const double k = (beta - 1) * (1 - eps) / (lambda * eps);
  const double l0 = p.buyer_intensity, s = 0.5 * p.sellers[0].intensity;
  const double expected = (1 - l0 * k) * l0 + (1 - s * k) * s - p.theta() * (1 - eps) / eps;
  CHECK(buyer::feasibility_22(p, x).slack == doctest::Approx(expected).epsilon(1e-12));
  CHECK_NOTHROW(buyer::greedy_select(p));
}

TEST_CASE("invalid problems") {
  auto p = four_sellers(0.3);
  p.sellers[0].price = 0.0;
  CHECK_THROWS_AS(buyer::greedy_select(p), ParameterError);
  p = four_sellers(0.3);
  p.sellers[1].id = p.sellers[0].id;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = four_sellers(1.2);
  CHECK_THROWS_AS(buyer::greedy_select(p), ParameterError);
}
