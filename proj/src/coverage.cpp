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

#include "infrashare/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "infrashare/errors.hpp"
#include "infrashare/numerics.hpp"

namespace infrashare::coverage {

namespace {

constexpr double kPi = std::numbers::pi;

void require_rayleigh(const RadioParams& radio) {
  if (radio.fading != Fading::Rayleigh) {
    throw UnimplementedModel("interference factor is only implemented for Rayleigh fading");
  }
}

}  // namespace

double rho(double threshold, double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw ParameterError("rho: path-loss exponent must satisfy alpha > 2");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ParameterError("rho: SINR threshold must be positive");
  }
  const double m = alpha / 2.0;
  const double lower = std::pow(threshold, -1.0 / m);
  const double split = std::max(lower, 1.0);

  double head = 0.0;
  if (lower < split) {
    head = numerics::integrate([m](double u) { return 1.0 / (1.0 + std::pow(u, m)); },
                               lower, split)
               .value;
  }
  // Tail over [split, inf): u = t^{-1/(m-1)} turns the u^{-m} decay into a
  // bounded integrand on [0, split^{1-m}].
  const double k = m / (m - 1.0);
  const double tail =
      numerics::integrate([k](double t) { return 1.0 / (1.0 + std::pow(t, k)); }, 0.0,
                          std::pow(split, 1.0 - m))
          .value /
      (m - 1.0);
  return std::pow(threshold, 1.0 / m) * (head + tail);
}

double beta(const RadioParams& radio) {
  require_rayleigh(radio);
  return 1.0 + rho(radio.threshold, radio.alpha);
}

Coefficients coefficients(const SharingScenario& scenario, const RadioParams& radio) {
  radio.validate();
  Coefficients c;
  c.beta = beta(radio);
  c.a = kPi * (scenario.interference_intensity() * (c.beta - 1.0) +
               scenario.association_intensity());
  c.b = radio.threshold * radio.noise_power / radio.tx_power;
  return c;
}

double noise_intensity(const RadioParams& radio) {
  radio.validate();
  const double b = radio.threshold * radio.noise_power / radio.tx_power;
  if (b == 0.0) {
    return 0.0;
  }
  const double inv_m = 2.0 / radio.alpha;
  return radio.alpha / (2.0 * kPi) * std::pow(b, inv_m) / std::tgamma(inv_m);
}

double exact(const SharingScenario& scenario, const RadioParams& radio) {
  const Coefficients c = coefficients(scenario, radio);
  const double lambda_a = scenario.association_intensity();
  if (lambda_a <= 0.0) {
    return 0.0;
  }
  // Substitute u = A z so the interference term decays on a unit scale:
  // P_c = (pi lambda_A / A) Int_0^inf exp(-u - b u^m) du with b = B / A^m.
  const double m = radio.alpha / 2.0;
  const double b = c.b > 0.0 ? std::exp(std::log(c.b) - m * std::log(c.a)) : 0.0;
  const double prefactor = kPi * lambda_a / c.a;
  if (b == 0.0) {
    return std::min(prefactor, 1.0);
  }
  const double decay = std::min(1.0, std::pow(b, -1.0 / m));
  const auto integral = numerics::integrate_to_infinity(
      [b, m](double u) { return std::exp(-u - b * std::pow(u, m)); }, 0.0, decay, 1e-13);
  return std::clamp(prefactor * integral.value, 0.0, 1.0);
}

double approx(const SharingScenario& scenario, const RadioParams& radio) {
  const Coefficients c = coefficients(scenario, radio);
  const double lambda_a = scenario.association_intensity();
  if (lambda_a <= 0.0) {
    return 0.0;
  }
  const double value = kPi * lambda_a / (c.a + kPi * noise_intensity(radio));
  return std::clamp(value, 0.0, 1.0);
}

double asymptote(const SharingScenario& scenario, const RadioParams& radio, Limit limit) {
  const double inv_beta = 1.0 / beta(radio);
  if (scenario.assumption() == Assumption::FractionalActivity &&
      limit == Limit::SellerCountToInfinity) {
    return 1.0;
  }
  return inv_beta;
}

}  // namespace infrashare::coverage
