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

#ifndef INFRASHARE_COVERAGE_HPP
#define INFRASHARE_COVERAGE_HPP

#include "infrashare/scenario.hpp"

/// Analytic SINR coverage of the buyer's typical user.
///
/// The typical user sits at the origin and attaches to the nearest BS of the
/// association set (a PPP of intensity lambda_A). Interferers form a PPP of
/// intensity lambda_I outside the serving distance, all links see Rayleigh
/// fading and every BS transmits at power p. With z = r0^2 the coverage is
///
///     P_c = pi lambda_A * Int_0^inf exp(-(A z + B z^{alpha/2})) dz,
///     A = pi (lambda_I (beta - 1) + lambda_A),   B = T sigma^2 / p,
///
/// and beta = 1 + rho(T, alpha) does not depend on p.
namespace infrashare::coverage {

/// rho(T, alpha) = T^{2/alpha} Int_{T^{-2/alpha}}^inf (1 + u^{alpha/2})^{-1} du.
/// Throws ParameterError unless T > 0 and alpha > 2.
double rho(double threshold, double alpha);

/// Interference factor beta = 1 + rho(T, alpha). Only Rayleigh fading is
/// supported; other tags throw UnimplementedModel.
double beta(const RadioParams& radio);

struct Coefficients {
  double a = 0.0;     ///< per m^2
  double b = 0.0;     ///< T sigma^2 / p
  double beta = 1.0;
};

Coefficients coefficients(const SharingScenario& scenario, const RadioParams& radio);

/// Noise-equivalent intensity theta = (alpha / 2 pi) B^{2/alpha} / Gamma(2/alpha).
///
/// With it the closed-form approximation reads
/// P_c ~= lambda_A / (lambda_I (beta - 1) + lambda_A + theta).
double noise_intensity(const RadioParams& radio);

/// Coverage from the integral form (adaptive quadrature). Zero when the
/// association set is empty.
double exact(const SharingScenario& scenario, const RadioParams& radio);

/// Closed-form approximation pi lambda_A / (A + (alpha/2) B^{2/alpha} / Gamma(2/alpha)),
/// clamped to [0, 1].
double approx(const SharingScenario& scenario, const RadioParams& radio);

enum class Limit {
  BuyerDensityToInfinity,
  SellerCountToInfinity,
};

/// Limiting coverage: 1/beta, except that decoupled interference
/// (FractionalActivity) with an ever growing seller pool tends to 1.
double asymptote(const SharingScenario& scenario, const RadioParams& radio, Limit limit);

}  // namespace infrashare::coverage

#endif  // INFRASHARE_COVERAGE_HPP
