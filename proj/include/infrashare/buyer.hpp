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

#ifndef INFRASHARE_BUYER_HPP
#define INFRASHARE_BUYER_HPP

#include <map>
#include <vector>

#include "infrashare/scenario.hpp"
#include "infrashare/tradeoff.hpp"

/// The buyer's purchase problem under fractional activity:
///
///     min sum_k q_k x_k
///     s.t. (C1) sum_{k in N+{0}} [1 - lambda_k x_k (beta-1)(1-eps) / (lambda eps)] lambda_k x_k
///               >= theta (1 - eps) / eps,     0 <= x_k <= 1, x_0 = 1.
///
/// With lambda = lambda_0 + sum_k lambda_k x_k, (C1) is exactly
/// approx coverage >= 1 - eps.
namespace infrashare::buyer {

struct SellerOffer {
  int id = 0;
  double intensity = 0.0;  ///< lambda_k, per m^2
  double price = 0.0;      ///< q_k, per unit fraction bought
};

/// Which lambda enters (C1).
enum class IntensityConvention {
  /// lambda_0 + sum lambda_k x_k: the buyer's actual association intensity.
  Effective,
  /// lambda_0 + sum of the full intensities of the sellers bought from.
  Nominal,
};

struct PurchaseProblem {
  double buyer_intensity = 0.0;  ///< lambda_0, per m^2
  std::vector<SellerOffer> sellers;
  RadioParams radio;
  tradeoff::QosTarget qos;
  IntensityConvention convention = IntensityConvention::Effective;
  /// Relative tolerance on the (C1) slack, scaled by
  /// max(lambda_0 + sum_k lambda_k, theta (1-eps)/eps).
  double tolerance = 1e-9;

  void validate() const;
  /// theta = (alpha / 2 pi) B^{2/alpha} / Gamma(2/alpha).
  double theta() const;
};

using Fractions = std::map<int, double>;

struct FutilityCheck {
  bool futile = false;
  /// theta (1-eps) / (1 - beta (1-eps)); infinite when futile.
  double min_intensity = 0.0;
};

/// Under all-BS-serve, 1 - eps > 1/beta means no purchase can meet the target.
FutilityCheck check_21_futility(const RadioParams& radio, tradeoff::QosTarget qos);

struct Feasibility {
  bool feasible = false;
  double slack = 0.0;  ///< LHS - RHS of (C1), per m^2
};

/// Evaluates (C1) at `fractions` (missing sellers count as x = 0).
Feasibility feasibility_22(const PurchaseProblem& problem, const Fractions& fractions);

enum class FractionMethod {
  ClosedForm,     ///< closed-form multiplier makes (C1) tight
  RootSolve,      ///< smallest multiplier with (C1) satisfied, found numerically
  LowerBoundary,  ///< mu = 0 already satisfies (C1)
  Insufficient,   ///< even x = 1 for every selected seller fails (C1)
};

const char* to_string(FractionMethod m);

struct FractionSolution {
  Fractions fractions;
  double mu_star = 0.0;
  double mu_closed_form = 0.0;
  FractionMethod method = FractionMethod::Insufficient;
  double slack = 0.0;
};

/// lambda_0 + sum of the selected sellers' full intensities.
double nominal_intensity(const PurchaseProblem& problem, const std::vector<int>& selected);

/// Stationary point of the Lagrangian for a given multiplier, clamped to [0, 1]:
/// x_k = lambda (mu q_k + lambda_k) / (2 lambda_k^2 (beta - 1)(1 - eps)),
/// lambda the nominal intensity of `selected`.
Fractions fractions_for_multiplier(const PurchaseProblem& problem,
                                   const std::vector<int>& selected, double mu);

/// dL/dx_k = q_k + lambda_k / mu - 2 lambda_k^2 x_k (beta-1)(1-eps) / (mu lambda).
double lagrangian_gradient(const PurchaseProblem& problem, const SellerOffer& seller, double mu,
                           double x, double lambda);

/// Multiplier and fractions for a fixed seller set.
FractionSolution solve_fractions(const PurchaseProblem& problem,
                                 const std::vector<int>& selected);

struct BuyerSolution {
  std::vector<int> selected;  ///< in purchase order
  Fractions fractions;
  double mu_star = 0.0;
  double total_cost = 0.0;           ///< sum q_k x_k
  double purchased_intensity = 0.0;  ///< sum lambda_k x_k, per m^2
  double achieved_coverage = 0.0;    ///< closed-form approximation
  double slack = 0.0;
  bool feasible = false;
  FractionMethod method = FractionMethod::LowerBoundary;
  std::size_t fraction_evaluations = 0;
};

/// Greedy seller selection: sort by q_k / lambda_k (ties by id), grow the
/// seller set one at a time and stop at the first set meeting (C1). When no
/// set works the last attempt is returned with feasible = false.
BuyerSolution greedy_select(const PurchaseProblem& problem);

/// Scenario seen by the buyer's users for the given purchase.
SharingScenario purchased_scenario(const PurchaseProblem& problem, const Fractions& fractions);

}  // namespace infrashare::buyer

#endif  // INFRASHARE_BUYER_HPP
