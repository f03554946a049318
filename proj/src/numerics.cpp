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

#include "infrashare/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "infrashare/errors.hpp"

namespace infrashare::numerics {

namespace {

constexpr unsigned kMaxDepth = 15;

}  // namespace

Integral integrate(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol) {
  if (!(hi > lo)) {
    return {};
  }
  // Boost compares an unscaled local error against a scaled tolerance, so
  // short intervals would never terminate. Always integrate over [0, 1].
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double width = hi - lo;
  auto unit = [&](double s) { return f(lo + width * s); };
  double error = 0.0;
  const double value = Rule::integrate(unit, 0.0, 1.0, kMaxDepth, rel_tol, &error);
  return {width * value, width * error};
}

Integral integrate_to_infinity(const std::function<double(double)>& f, double lo,
                               double scale, double rel_tol) {
  if (!(scale > 0.0)) {
    throw ParameterError("integrate_to_infinity: scale must be positive");
  }
  // t in [0, 1) -> x = lo + scale * t / (1 - t), dx = scale / (1 - t)^2 dt.
  auto folded = [&](double t) {
    const double one_minus = 1.0 - t;
    if (one_minus <= 0.0) {
      return 0.0;
    }
    const double x = lo + scale * t / one_minus;
    const double fx = f(x);
    if (fx == 0.0) {
      return 0.0;
    }
    return fx * scale / (one_minus * one_minus);
  };
  return integrate(folded, 0.0, 1.0, rel_tol);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) {
    return lo;
  }
  if (f_hi == 0.0) {
    return hi;
  }
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw ParameterError("find_root: interval does not bracket a root");
  }
  std::uintmax_t max_iter = 500;
  auto done = [x_tol](double a, double b) { return std::abs(b - a) <= x_tol; };
  const auto bracket =
      boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, done, max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace infrashare::numerics
