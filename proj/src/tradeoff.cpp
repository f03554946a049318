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

#include "infrashare/tradeoff.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "infrashare/coverage.hpp"
#include "infrashare/errors.hpp"

namespace infrashare::tradeoff {

namespace {

// Relative slack below which 1 - (1 - eps) beta is treated as zero.
constexpr double kBoundaryTol = 1e-12;

}  // namespace

void QosTarget::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("outage tolerance epsilon must lie in (0, 1)");
  }
}

void PowerCostParams::validate() const {
  if (!(max_power > 0.0) || !std::isfinite(max_power)) {
    throw ParameterError("max_power must be positive");
  }
  if (!(circuit_power >= 0.0) || !std::isfinite(circuit_power)) {
    throw ParameterError("circuit_power must be non-negative");
  }
  if (!(power_price > 0.0) || !std::isfinite(power_price)) {
    throw ParameterError("power_price must be positive");
  }
  if (!(fixed_cost >= 0.0) || !std::isfinite(fixed_cost)) {
    throw ParameterError("fixed_cost must be non-negative");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ParameterError("seller threshold must be positive");
  }
}

double effective_beta(double association_intensity, double interference_intensity,
                      double beta) {
  if (!(association_intensity > 0.0)) {
    throw ParameterError("association intensity must be positive");
  }
  return 1.0 + interference_intensity / association_intensity * (beta - 1.0);
}

double power_coefficient(const RadioParams& radio, QosTarget qos, double beta_eff) {
  radio.validate();
  qos.validate();
  const double target = 1.0 - qos.epsilon;
  const double margin = 1.0 - target * beta_eff;
  if (margin <= kBoundaryTol) {
    throw Infeasible(fmt::format("coverage target {:.6g} is not reachable by power alone; "
                                 "coverage saturates at {:.6g}",
                                 target, 1.0 / beta_eff),
                     1.0 / beta_eff);
  }
  if (radio.noise_power == 0.0) {
    throw ParameterError("minimum power is undefined without noise");
  }
  const double alpha = radio.alpha;
  const double base = 2.0 * std::numbers::pi * margin * std::tgamma(2.0 / alpha) /
                      (alpha * target *
                       std::pow(radio.threshold * radio.noise_power, 2.0 / alpha));
  return std::pow(base, -alpha / 2.0);
}

double min_power(double association_intensity, double interference_intensity,
                 const RadioParams& radio, QosTarget qos) {
  const double beta_eff =
      effective_beta(association_intensity, interference_intensity, coverage::beta(radio));
  const double c0 = power_coefficient(radio, qos, beta_eff);
  return c0 * std::pow(association_intensity, -radio.alpha / 2.0);
}

double min_power(const SharingScenario& scenario, const RadioParams& radio, QosTarget qos) {
  return min_power(scenario.association_intensity(), scenario.interference_intensity(), radio,
                   qos);
}

double cell_radius(double buyer_intensity, const RadioParams& radio, QosTarget qos) {
  if (!(buyer_intensity > 0.0)) {
    throw ParameterError("buyer intensity must be positive");
  }
  const double c0 = power_coefficient(radio, qos, coverage::beta(radio));
  return std::pow(2.0 * c0 / radio.noise_power, 1.0 / radio.alpha) / std::sqrt(buyer_intensity);
}

ArealPowerModel::ArealPowerModel(const PowerCostParams& params, const RadioParams& radio,
                                 QosTarget qos)
    : p_max_(params.max_power), p_c_(params.circuit_power), alpha_(radio.alpha) {
  params.validate();
  RadioParams own = radio;
  own.threshold = params.threshold;
  own.tx_power = params.max_power;
  own.max_power = params.max_power;
  c_ = power_coefficient(own, qos, coverage::beta(own));
  lambda_th_ = std::pow(c_ / p_max_, 2.0 / alpha_);
}

double ArealPowerModel::value(double lambda) const {
  if (!(lambda >= 0.0)) {
    throw ParameterError("intensity must be non-negative");
  }
  if (lambda <= lambda_th_) {
    return lambda * (p_max_ + p_c_);
  }
  return c_ * std::pow(lambda, 1.0 - alpha_ / 2.0) + p_c_ * lambda;
}

double ArealPowerModel::derivative(double lambda) const {
  if (lambda < lambda_th_) {
    return p_max_ + p_c_;
  }
  return p_c_ - c_ * (alpha_ - 2.0) / 2.0 * std::pow(lambda, -alpha_ / 2.0);
}

double ArealPowerModel::second_derivative(double lambda) const {
  if (lambda < lambda_th_) {
    return 0.0;
  }
  return c_ * alpha_ * (alpha_ - 2.0) / 4.0 * std::pow(lambda, -alpha_ / 2.0 - 1.0);
}

double areal_power(double lambda, const PowerCostParams& params, const RadioParams& radio,
                   QosTarget qos) {
  return ArealPowerModel(params, radio, qos).value(lambda);
}

ArealPowerMinimum areal_power_minimizer(const PowerCostParams& params, const RadioParams& radio,
                                        QosTarget qos) {
  const ArealPowerModel model(params, radio, qos);
  ArealPowerMinimum out;
  if (params.circuit_power == 0.0) {
    out.intensity = model.threshold_intensity();
    out.monotone_decreasing = true;
    return out;
  }
  const double stationary = std::pow(
      model.coefficient() * (radio.alpha / 2.0 - 1.0) / params.circuit_power, 2.0 / radio.alpha);
  out.interior = stationary > model.threshold_intensity();
  out.intensity = out.interior ? stationary : model.threshold_intensity();
  return out;
}

}  // namespace infrashare::tradeoff
