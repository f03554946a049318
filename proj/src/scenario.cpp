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

#include "infrashare/scenario.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "infrashare/errors.hpp"

namespace infrashare {

std::string_view to_string(Assumption a) {
  switch (a) {
    case Assumption::AllBsServe:
      return "all-bs-serve";
    case Assumption::FractionalActivity:
      return "fractional-activity";
  }
  return "unknown";
}

std::string_view to_string(Fading f) {
  switch (f) {
    case Fading::Rayleigh:
      return "rayleigh";
    case Fading::Nakagami:
      return "nakagami";
  }
  return "unknown";
}

void RadioParams::validate() const {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw ParameterError("path-loss exponent must satisfy alpha > 2");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ParameterError("SINR threshold must be positive");
  }
  if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) {
    throw ParameterError("noise power must be non-negative");
  }
  if (!(tx_power > 0.0) || !std::isfinite(tx_power)) {
    throw ParameterError("transmit power must be positive");
  }
  if (tx_power > max_power) {
    throw ParameterError("transmit power exceeds the maximum transmit power");
  }
}

SharingScenario::SharingScenario(double buyer_intensity, std::vector<SharedSeller> sellers,
                                 Assumption assumption)
    : buyer_intensity_(buyer_intensity),
      sellers_(std::move(sellers)),
      assumption_(assumption) {
  if (!(buyer_intensity_ >= 0.0) || !std::isfinite(buyer_intensity_)) {
    throw ParameterError("buyer intensity must be non-negative");
  }
  for (const auto& s : sellers_) {
    if (!(s.op.intensity >= 0.0) || !std::isfinite(s.op.intensity)) {
      throw ParameterError("seller " + std::to_string(s.op.id) +
                           ": intensity must be non-negative");
    }
    if (!(s.fraction >= 0.0 && s.fraction <= 1.0)) {
      throw ParameterError("seller " + std::to_string(s.op.id) +
                           ": purchased fraction must lie in [0, 1]");
    }
  }
}

SharingScenario SharingScenario::own_network(double buyer_intensity, Assumption assumption) {
  return SharingScenario(buyer_intensity, {}, assumption);
}

double SharingScenario::association_intensity() const {
  double total = buyer_intensity_;
  for (const auto& s : sellers_) {
    total += s.shared_intensity();
  }
  return total;
}

double SharingScenario::interference_intensity() const {
  const double lambda_a = association_intensity();
  if (assumption_ == Assumption::AllBsServe || lambda_a <= 0.0) {
    return lambda_a;
  }
  // sum_k w_k lambda_k x_k with w_k = lambda_k x_k / lambda_A
  double sum_sq = buyer_intensity_ * buyer_intensity_;
  for (const auto& s : sellers_) {
    const double shared = s.shared_intensity();
    sum_sq += shared * shared;
  }
  return sum_sq / lambda_a;
}

std::vector<double> SharingScenario::activity_weights() const {
  std::vector<double> w;
  w.reserve(sellers_.size() + 1);
  const double lambda_a = association_intensity();
  if (lambda_a <= 0.0) {
    w.assign(sellers_.size() + 1, 0.0);
    return w;
  }
  w.push_back(buyer_intensity_ / lambda_a);
  for (const auto& s : sellers_) {
    w.push_back(s.shared_intensity() / lambda_a);
  }
  return w;
}

SharingScenario SharingScenario::with_assumption(Assumption assumption) const {
  SharingScenario copy = *this;
  copy.assumption_ = assumption;
  return copy;
}

}  // namespace infrashare
