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


#ifndef INFRASHARE_MARKET_HPP
#define INFRASHARE_MARKET_HPP

#include <optional>
#include <vector>

#include "infrashare/buyer.hpp"
#include "infrashare/scenario.hpp"
#include "infrashare/tradeoff.hpp"

/// Cournot competition among sellers offering BS intensity y_k in [0, lambda_k]
/// at the common price Q(y) = theta - eta y.
namespace infrashare::market {

struct PriceCurve {
  double theta = 500.0;  ///< price at zero supply
  double eta = 1.0;      ///< price drop per unit intensity (per m^2)

  void validate() const;
  double price(double total) const { return theta - eta * total; }
};

struct SellerProfile {
  OperatorProfile op;              ///< intensity is the capacity lambda_k
  tradeoff::PowerCostParams cost;  ///< a_k, d_k, p_c, p_max, T_k
  RadioParams radio;               ///< alpha and sigma^2 of the seller's network
  tradeoff::QosTarget qos{0.6};    ///< the seller's own coverage target
};

/// A seller with its areal power law precomputed.
class Seller {
 public:
  explicit Seller(const SellerProfile& profile);

  int id() const { return profile_.op.id; }
  double capacity() const { return profile_.op.intensity; }
  const SellerProfile& profile() const { return profile_; }
  const tradeoff::ArealPowerModel& power() const { return power_; }

  /// C_k(y) = a_k S_k(y) + d_k.
  double cost(double y) const;
  double marginal_cost(double y) const;
  double cost_curvature(double y) const;

 private:
  SellerProfile profile_;
  tradeoff::ArealPowerModel power_;
};

std::vector<Seller> make_sellers(const std::vector<SellerProfile>& profiles);

double cost(const Seller& seller, double y);

/// F_k = y_k Q(y_total) - C_k(y_k). Negative prices are not floored.
double profit(const Seller& seller, const PriceCurve& curve, double y, double y_total);

/// dF_k/dy_k with the opponents' supply held fixed.
double profit_gradient(const Seller& seller, const PriceCurve& curve, double y,
                       double y_others);

enum class Branch { Zero, Linear, Kink, Convex, Capacity };

const char* to_string(Branch b);

struct BestResponse {
  double quantity = 0.0;
  Branch branch = Branch::Zero;
  double profit = 0.0;
};

/// Profit-maximising supply given the opponents' total. Candidates are the
/// stationary point of each branch and the points {0, lambda_th, lambda_k}.
BestResponse best_response_detail(const Seller& seller, const PriceCurve& curve,
                                  double y_others);

double best_response(const Seller& seller, const PriceCurve& curve, double y_others);

/// U_k, V_k, W_k of the best-response equations
/// y = U/2 - y_{-k}/2 and y = V y^{-alpha/2}/2 + W/2 - y_{-k}/2.
struct ResponseCoefficients {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

ResponseCoefficients response_coefficients(const Seller& seller, const PriceCurve& curve);

struct EquilibriumOptions {
  std::size_t max_iter = 10000;
  /// Convergence when max_k |y_k^{t+1} - y_k^t| < tol * max_k lambda_k.
  double tol = 1e-10;
  /// Initial step weight; halved when the iteration stops contracting.
  double damping = 1.0;
  /// Starting point, zeros when absent.
  std::optional<std::vector<double>> start;
  bool record_trace = true;
};

struct EquilibriumResult {
  std::vector<double> y_star;
  double y_total = 0.0;
  double q_star = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double damping = 1.0;  ///< step weight in use at exit
  /// max_k |y_k - BR_k(y_{-k})| / max_k lambda_k at the returned point.
  double fixed_point_residual = 0.0;
  /// |y* - sum_k y_{-k} / (K - 1)| / max_k lambda_k; zero for a single seller.
  double aggregate_residual = 0.0;
  std::vector<std::vector<double>> trace;
};

EquilibriumResult find_equilibrium(const std::vector<Seller>& sellers, const PriceCurve& curve,
                                   const EquilibriumOptions& options = {});

struct SellerStability {
  int id = 0;
  /// max over the grid of Q' - C_k''; negative when satisfied.
  double condition1_margin = 0.0;
  /// max over the grid of Q' - y_k Q''; negative when satisfied.
  double condition2_margin = 0.0;
  /// Downward jump of C_k' at lambda_th, zero when lambda_th >= lambda_k.
  double kink_drop = 0.0;
};

struct StabilityReport {
  bool stable = true;
  std::vector<SellerStability> sellers;
};

StabilityReport check_stability(const std::vector<Seller>& sellers, const PriceCurve& curve,
                                std::size_t grid_points = 1000);

struct ClearingResult {
  EquilibriumResult equilibrium;
  buyer::PurchaseProblem problem;  ///< the buyer problem after substitution
  buyer::BuyerSolution purchase;
  double coverage = 0.0;
};

/// Solves the sellers' game, offers each y_k* > 0 at the single price q*,
/// and runs the buyer's greedy purchase. Throws ParameterError if q* <= 0.
ClearingResult clear_market(const std::vector<Seller>& sellers, const PriceCurve& curve,
                            const buyer::PurchaseProblem& buyer_problem,
                            const EquilibriumOptions& options = {});

}  // namespace infrashare::market

#endif  // INFRASHARE_MARKET_HPP
