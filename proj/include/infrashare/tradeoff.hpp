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

#ifndef INFRASHARE_TRADEOFF_HPP
#define INFRASHARE_TRADEOFF_HPP

#include "infrashare/scenario.hpp"

/// Power / density trade-off laws derived from the closed-form coverage
/// approximation. Inverting P_c ~= 1 - eps for the transmit power gives
///
///     p = c_0 lambda^{-alpha/2},
///     c_0 = [2 pi (1 - (1 - eps) beta_eff) Gamma(2/alpha)
///            / (alpha (1 - eps) (T sigma^2)^{2/alpha})]^{-alpha/2},
///
/// where beta_eff = 1 + (lambda_I / lambda_A)(beta - 1). beta_eff = beta when
/// every associated BS also interferes.
namespace infrashare::tradeoff {

struct QosTarget {
  double epsilon = 0.1;  ///< tolerable outage, coverage target is 1 - epsilon

  void validate() const;
};

/// Cost-side parameters of a seller.
struct PowerCostParams {
  double max_power = 0.01;     ///< p_max, watts
  double circuit_power = 0.0;  ///< p_c, watts per BS
  double power_price = 1.0;    ///< a_k, price per unit areal power
  double fixed_cost = 0.0;     ///< d_k
  double threshold = 1.0;      ///< T_k, the seller's own SINR threshold (linear)

  void validate() const;
};

/// beta' = 1 + (lambda_I / lambda_A)(beta - 1).
double effective_beta(double association_intensity, double interference_intensity,
                      double beta);

/// c_0 for the given interference factor. Throws Infeasible (carrying
/// 1/beta_eff) when 1 - eps >= 1/beta_eff and ParameterError when sigma^2 = 0.
double power_coefficient(const RadioParams& radio, QosTarget qos, double beta_eff);

/// Smallest transmit power (watts) meeting the QoS target in `scenario`.
double min_power(const SharingScenario& scenario, const RadioParams& radio, QosTarget qos);

/// Same, from the association and interference intensities directly.
double min_power(double association_intensity, double interference_intensity,
                 const RadioParams& radio, QosTarget qos);

/// Cell radius of a buyer without shared infrastructure: the distance where
/// the SNR at minimum power falls to -3 dB, R = (2 c_0 / sigma^2)^{1/alpha} / sqrt(lambda_0).
double cell_radius(double buyer_intensity, const RadioParams& radio, QosTarget qos);

/// Areal power S(lambda) of a seller that serves only its own users.
///
/// Below lambda_th = (c / p_max)^{2/alpha} the required power exceeds p_max and
/// every BS runs at p_max; above it BSs run at c lambda^{-alpha/2}.
class ArealPowerModel {
 public:
  /// `radio` supplies alpha and sigma^2; the threshold comes from `params`.
  ArealPowerModel(const PowerCostParams& params, const RadioParams& radio, QosTarget qos);

  double coefficient() const { return c_; }
  double threshold_intensity() const { return lambda_th_; }
  double max_power() const { return p_max_; }
  double circuit_power() const { return p_c_; }
  double alpha() const { return alpha_; }

  double value(double lambda) const;
  /// One-sided derivatives are not distinguished at lambda_th; the convex
  /// branch is used there.
  double derivative(double lambda) const;
  double second_derivative(double lambda) const;

 private:
  double c_ = 0.0;
  double lambda_th_ = 0.0;
  double p_max_ = 0.0;
  double p_c_ = 0.0;
  double alpha_ = 4.0;
};

double areal_power(double lambda, const PowerCostParams& params, const RadioParams& radio,
                   QosTarget qos);

struct ArealPowerMinimum {
  double intensity = 0.0;
  /// The stationary point of the convex branch lies above lambda_th.
  bool interior = false;
  /// p_c = 0: S keeps decreasing on the convex branch and lambda_th is returned.
  bool monotone_decreasing = false;
};

/// Minimiser of S over lambda >= lambda_th:
/// max(lambda_th, [c (alpha/2 - 1) / p_c]^{2/alpha}).
ArealPowerMinimum areal_power_minimizer(const PowerCostParams& params, const RadioParams& radio,
                                        QosTarget qos);

}  // namespace infrashare::tradeoff

#endif  // INFRASHARE_TRADEOFF_HPP
