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

#ifndef INFRASHARE_NUMERICS_HPP
#define INFRASHARE_NUMERICS_HPP

#include <functional>

namespace infrashare::numerics {

struct Integral {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (15 point) quadrature on a finite interval.
Integral integrate(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol = 1e-12);

/// Integral over [lo, inf) of a smooth, monotonically decaying integrand.
///
/// The half line is folded onto [0, 1) with x = lo + scale * t / (1 - t);
/// `scale` should be the length over which the integrand decays by ~e.
Integral integrate_to_infinity(const std::function<double(double)>& f, double lo,
                               double scale, double rel_tol = 1e-12);

/// Root of f on [lo, hi]. Requires f(lo) and f(hi) of opposite sign (or zero).
/// Returns the midpoint of the final bracket, whose width is below `x_tol`.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol);

}  // namespace infrashare::numerics

#endif  // INFRASHARE_NUMERICS_HPP
