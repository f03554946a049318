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


#include "infrashare/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "infrashare/errors.hpp"
#include "infrashare/numerics.hpp"

namespace infrashare::market {

void PriceCurve::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ParameterError("price curve theta must be positive");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError("price curve eta must be positive");
  }
}

namespace {

tradeoff::ArealPowerModel build_power(const SellerProfile& p) {
  if (!(p.op.intensity >= 0.0) || !std::isfinite(p.op.intensity)) {
    throw ParameterError("seller intensity must be non-negative");
  }
  if (!(p.cost.fixed_cost >= 0.0) || !std::isfinite(p.cost.fixed_cost)) {
    throw ParameterError("seller fixed cost must be non-negative");
  }
  return tradeoff::ArealPowerModel(p.cost, p.radio, p.qos);
}

double quantity_scale(const std::vector<Seller>& sellers) {
  double s = 0.0;
  for (const auto& x : sellers) s = std::max(s, x.capacity());
  return s > 0.0 ? s : 1.0;
}

void validate_game(const std::vector<Seller>& sellers, const PriceCurve& curve) {
  curve.validate();
  if (sellers.empty()) {
    throw ParameterError("the market needs at least one seller");
  }
  std::set<int> ids;
  for (const auto& s : sellers) {
    if (!ids.insert(s.id()).second) {
      throw ParameterError("duplicate seller id " + std::to_string(s.id()));
    }
  }
}

}  // namespace

Seller::Seller(const SellerProfile& profile) : profile_(profile), power_(build_power(profile)) {}

double Seller::cost(double y) const {
  if (!(y >= 0.0) || y > capacity() * (1.0 + 1e-12)) {
    throw ParameterError("seller quantity outside [0, lambda_k]");
  }
  return profile_.cost.power_price * power_.value(y) + profile_.cost.fixed_cost;
}

double Seller::marginal_cost(double y) const {
  return profile_.cost.power_price * power_.derivative(y);
}

double Seller::cost_curvature(double y) const {
  return profile_.cost.power_price * power_.second_derivative(y);
}

std::vector<Seller> make_sellers(const std::vector<SellerProfile>& profiles) {
  std::vector<Seller> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.emplace_back(p);
  return out;
}

double cost(const Seller& seller, double y) { return seller.cost(y); }

double profit(const Seller& seller, const PriceCurve& curve, double y, double y_total) {
  return y * curve.price(y_total) - seller.cost(y);
}

double profit_gradient(const Seller& seller, const PriceCurve& curve, double y,
                       double y_others) {
  return curve.price(y_others + y) - curve.eta * y - seller.marginal_cost(y);
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Zero: return "zero";
    case Branch::Linear: return "linear";
    case Branch::Kink: return "kink";
    case Branch::Convex: return "convex";
    case Branch::Capacity: return "capacity";
  }
  return "unknown";
}

ResponseCoefficients response_coefficients(const Seller& seller, const PriceCurve& curve) {
  const auto& p = seller.profile().cost;
  const auto& m = seller.power();
  ResponseCoefficients k;
  k.u = (curve.theta - p.power_price * (p.max_power + p.circuit_power)) / curve.eta;
  k.v = p.power_price * (m.alpha() / 2.0 - 1.0) * m.coefficient() / curve.eta;
  k.w = (curve.theta - p.power_price * p.circuit_power) / curve.eta;
  return k;
}

BestResponse best_response_detail(const Seller& seller, const PriceCurve& curve,
                                  double y_others) {
  if (!(y_others >= 0.0)) {
    throw ParameterError("opponents' supply must be non-negative");
  }
  const double cap = seller.capacity();
  const double th = seller.power().threshold_intensity();
  const auto k = response_coefficients(seller, curve);

  std::vector<std::pair<double, Branch>> cand;
  const double y_lin = 0.5 * (k.u - y_others);
  if (y_lin > 0.0 && y_lin < std::min(th, cap)) cand.emplace_back(y_lin, Branch::Linear);
  if (th < cap) {
    const double half_alpha = seller.power().alpha() / 2.0;
    // Stationarity on the convex branch, decreasing in y.
    auto g = [&](double y) { return k.v * std::pow(y, -half_alpha) + k.w - y_others - 2.0 * y; };
    const double lo = th;
    if (g(lo) > 0.0 && g(cap) < 0.0) {
      const double r = numerics::find_root(g, lo, cap, 1e-13 * cap);
      cand.emplace_back(r, Branch::Convex);
    }
    if (th > 0.0) cand.emplace_back(th, Branch::Kink);
  }
  cand.emplace_back(cap, Branch::Capacity);
  cand.emplace_back(0.0, Branch::Zero);

  BestResponse best;
  bool first = true;
  for (const auto& [y, b] : cand) {
    const double f = profit(seller, curve, y, y + y_others);
    if (first || f > best.profit) {
      best = {y, b, f};
      first = false;
    }
  }
  return best;
}

double best_response(const Seller& seller, const PriceCurve& curve, double y_others) {
  return best_response_detail(seller, curve, y_others).quantity;
}

EquilibriumResult find_equilibrium(const std::vector<Seller>& sellers, const PriceCurve& curve,
                                   const EquilibriumOptions& options) {
  validate_game(sellers, curve);
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ParameterError("damping must lie in (0, 1]");
  }
  if (!(options.tol > 0.0)) {
    throw ParameterError("tolerance must be positive");
  }
  const std::size_t n = sellers.size();
  const double scale = quantity_scale(sellers);
  std::vector<double> y(n, 0.0);
  if (options.start) {
    if (options.start->size() != n) {
      throw ParameterError("starting point has the wrong dimension");
    }
    y = *options.start;
    for (std::size_t k = 0; k < n; ++k) {
      if (!(y[k] >= 0.0 && y[k] <= sellers[k].capacity())) {
        throw ParameterError("starting point outside [0, lambda_k]");
      }
    }
  }

  EquilibriumResult out;
  out.damping = options.damping;
  if (options.record_trace) out.trace.push_back(y);

  constexpr std::size_t kWindow = 25;
  constexpr double kMinDamping = 1.0 / 64.0;
  std::vector<double> br(n);
  auto residual = [&] {
    const double total = std::accumulate(y.begin(), y.end(), 0.0);
    double r = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      br[k] = best_response(sellers[k], curve, std::max(0.0, total - y[k]));
      r = std::max(r, std::abs(br[k] - y[k]));
    }
    return r;
  };

  double window_start = residual();
  double step = window_start;
  while (true) {
    if (step < options.tol * scale) {
      out.converged = true;
      break;
    }
    if (out.iterations >= options.max_iter) break;
    for (std::size_t k = 0; k < n; ++k) y[k] += out.damping * (br[k] - y[k]);
    ++out.iterations;
    if (options.record_trace) out.trace.push_back(y);
    step = residual();
    if (out.iterations % kWindow == 0) {
      if (step > 0.5 * window_start && out.damping > kMinDamping) out.damping *= 0.5;
      window_start = step;
    }
  }

  out.y_star = y;
  out.y_total = std::accumulate(y.begin(), y.end(), 0.0);
  out.q_star = curve.price(out.y_total);
  out.fixed_point_residual = residual() / scale;
  if (n > 1) {
    double others = 0.0;
    for (double v : y) others += out.y_total - v;
    out.aggregate_residual = std::abs(out.y_total - others / static_cast<double>(n - 1)) / scale;
  }
  return out;
}

StabilityReport check_stability(const std::vector<Seller>& sellers, const PriceCurve& curve,
                                std::size_t grid_points) {
  curve.validate();
  if (grid_points == 0) {
    throw ParameterError("stability grid needs at least one point");
  }
  StabilityReport rep;
  const double dq = -curve.eta;  // Q' ; Q'' = 0 for the linear curve
  for (const auto& s : sellers) {
    SellerStability d;
    d.id = s.id();
    d.condition1_margin = -std::numeric_limits<double>::infinity();
    d.condition2_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= grid_points; ++j) {
      const double y = s.capacity() * static_cast<double>(j) / static_cast<double>(grid_points);
      d.condition1_margin = std::max(d.condition1_margin, dq - s.cost_curvature(y));
      d.condition2_margin = std::max(d.condition2_margin, dq - y * 0.0);
    }
    const auto& m = s.power();
    if (m.threshold_intensity() < s.capacity()) {
      d.kink_drop = s.profile().cost.power_price * m.max_power() * m.alpha() / 2.0;
    }
    rep.stable = rep.stable && d.condition1_margin < 0.0 && d.condition2_margin < 0.0;
    rep.sellers.push_back(d);
  }
  return rep;
}

ClearingResult clear_market(const std::vector<Seller>& sellers, const PriceCurve& curve,
                            const buyer::PurchaseProblem& buyer_problem,
                            const EquilibriumOptions& options) {
  ClearingResult out;
  out.equilibrium = find_equilibrium(sellers, curve, options);
  if (!(out.equilibrium.q_star > 0.0)) {
    throw ParameterError("clearing price is not positive");
  }
  out.problem = buyer_problem;
  out.problem.sellers.clear();
  for (std::size_t k = 0; k < sellers.size(); ++k) {
    if (out.equilibrium.y_star[k] > 0.0) {
      out.problem.sellers.push_back(
          {sellers[k].id(), out.equilibrium.y_star[k], out.equilibrium.q_star});
    }
  }
  out.purchase = buyer::greedy_select(out.problem);
  out.coverage = out.purchase.achieved_coverage;
  return out;
}

}  // namespace infrashare::market
