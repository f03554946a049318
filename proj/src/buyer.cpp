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

#include "infrashare/buyer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "infrashare/coverage.hpp"
#include "infrashare/errors.hpp"

namespace infrashare::buyer {

namespace {

constexpr int kScanPoints = 2000;
constexpr int kBisectionSteps = 200;

const SellerOffer& offer(const PurchaseProblem& problem, int id) {
  for (const auto& s : problem.sellers) {
    if (s.id == id) {
      return s;
    }
  }
  throw ParameterError("unknown seller id " + std::to_string(id));
}

// Problem constants that need quadrature, evaluated once per call.
struct Context {
  const PurchaseProblem& problem;
  double beta;
  double rhs;  // theta (1 - eps) / eps
  double tol;  // absolute slack tolerance

  explicit Context(const PurchaseProblem& p)
      : problem(p),
        beta(coverage::beta(p.radio)),
        rhs(p.theta() * (1.0 - p.qos.epsilon) / p.qos.epsilon) {
    double lambda = p.buyer_intensity;
    for (const auto& s : p.sellers) {
      lambda += s.intensity;
    }
    tol = p.tolerance * std::max(lambda, rhs);
  }
};

double total_shares(const PurchaseProblem& problem, const Fractions& fractions) {
  double total = problem.buyer_intensity;
  for (const auto& [id, x] : fractions) {
    total += offer(problem, id).intensity * x;
  }
  return total;
}

double constraint_intensity(const PurchaseProblem& problem, const Fractions& fractions) {
  if (problem.convention == IntensityConvention::Effective) {
    return total_shares(problem, fractions);
  }
  double total = problem.buyer_intensity;
  for (const auto& [id, x] : fractions) {
    if (x > 0.0) {
      total += offer(problem, id).intensity;
    }
  }
  return total;
}

}  // namespace

void PurchaseProblem::validate() const {
  radio.validate();
  qos.validate();
  if (!(buyer_intensity >= 0.0) || !std::isfinite(buyer_intensity)) {
    throw ParameterError("buyer intensity must be non-negative");
  }
  std::set<int> ids;
  for (const auto& s : sellers) {
    if (!ids.insert(s.id).second) {
      throw ParameterError("duplicate seller id " + std::to_string(s.id));
    }
    if (!(s.intensity >= 0.0) || !std::isfinite(s.intensity)) {
      throw ParameterError("seller " + std::to_string(s.id) + ": intensity must be non-negative");
    }
    if (!(s.price > 0.0) || !std::isfinite(s.price)) {
      throw ParameterError("seller " + std::to_string(s.id) + ": price must be positive");
    }
  }
  if (!(tolerance > 0.0)) {
    throw ParameterError("tolerance must be positive");
  }
}

double PurchaseProblem::theta() const { return coverage::noise_intensity(radio); }

const char* to_string(FractionMethod m) {
  switch (m) {
    case FractionMethod::ClosedForm:
      return "closed-form";
    case FractionMethod::RootSolve:
      return "root-solve";
    case FractionMethod::LowerBoundary:
      return "lower-boundary";
    case FractionMethod::Insufficient:
      return "insufficient";
  }
  return "unknown";
}

FutilityCheck check_21_futility(const RadioParams& radio, tradeoff::QosTarget qos) {
  qos.validate();
  const double beta = coverage::beta(radio);
  const double target = 1.0 - qos.epsilon;
  FutilityCheck out;
  out.futile = target > 1.0 / beta;
  const double denominator = 1.0 - beta * target;
  out.min_intensity = denominator > 0.0 ? coverage::noise_intensity(radio) * target / denominator
                                        : std::numeric_limits<double>::infinity();
  return out;
}

namespace {

Feasibility feasibility(const Context& ctx, const Fractions& fractions) {
  const PurchaseProblem& problem = ctx.problem;
  const double eps = problem.qos.epsilon;
  const double beta = ctx.beta;
  const double lambda = constraint_intensity(problem, fractions);
  Feasibility out;
  if (lambda > 0.0) {
    const double k = (beta - 1.0) * (1.0 - eps) / (lambda * eps);
    const double l0 = problem.buyer_intensity;
    double lhs = (1.0 - l0 * k) * l0;
    for (const auto& [id, x] : fractions) {
      const double share = offer(problem, id).intensity * x;
      lhs += (1.0 - share * k) * share;
    }
    out.slack = lhs - ctx.rhs;
  } else {
    out.slack = -ctx.rhs;
  }
  out.feasible = out.slack >= -ctx.tol;
  return out;
}

Fractions fractions_at(const Context& ctx, const std::vector<int>& selected, double mu) {
  const PurchaseProblem& problem = ctx.problem;
  const double denom = 2.0 * (ctx.beta - 1.0) * (1.0 - problem.qos.epsilon);
  const double lambda = nominal_intensity(problem, selected);
  Fractions out;
  for (int id : selected) {
    const auto& s = offer(problem, id);
    const double x = s.intensity > 0.0 ? lambda * (mu * s.price + s.intensity) /
                                             (s.intensity * s.intensity * denom)
                                       : 0.0;
    out[id] = std::clamp(x, 0.0, 1.0);
  }
  return out;
}

}  // namespace

Feasibility feasibility_22(const PurchaseProblem& problem, const Fractions& fractions) {
  return feasibility(Context(problem), fractions);
}

double nominal_intensity(const PurchaseProblem& problem, const std::vector<int>& selected) {
  double total = problem.buyer_intensity;
  for (int id : selected) {
    total += offer(problem, id).intensity;
  }
  return total;
}

Fractions fractions_for_multiplier(const PurchaseProblem& problem,
                                   const std::vector<int>& selected, double mu) {
  return fractions_at(Context(problem), selected, mu);
}

double lagrangian_gradient(const PurchaseProblem& problem, const SellerOffer& seller, double mu,
                           double x, double lambda) {
  const double eps = problem.qos.epsilon;
  const double beta = coverage::beta(problem.radio);
  return seller.price + seller.intensity / mu -
         2.0 * seller.intensity * seller.intensity * x * (beta - 1.0) * (1.0 - eps) /
             (mu * lambda);
}

FractionSolution solve_fractions(const PurchaseProblem& problem,
                                 const std::vector<int>& selected) {
  problem.validate();
  if (selected.empty()) {
    throw ParameterError("solve_fractions needs at least one seller");
  }
  const Context ctx(problem);
  const double eps = problem.qos.epsilon;
  const double beta = ctx.beta;
  if ((beta - 1.0) * (1.0 - eps) <= 0.0) {
    throw ParameterError("degenerate purchase problem: (beta - 1)(1 - eps) = 0");
  }
  const double lambda = nominal_intensity(problem, selected);

  double num = 0.0, den = 0.0;
  for (int id : selected) {
    const auto& s = offer(problem, id);
    if (s.intensity <= 0.0) {
      continue;
    }
    const double r = s.price / s.intensity;
    num += r * (eps / s.intensity - 1.0);
    den += r * r;
  }
  FractionSolution out;
  out.mu_closed_form = den > 0.0 ? num / den : 0.0;

  auto attempt = [&](double mu) {
    FractionSolution s = out;
    s.mu_star = mu;
    s.fractions = fractions_at(ctx, selected, mu);
    s.slack = feasibility(ctx, s.fractions).slack;
    return s;
  };
  const double tol = ctx.tol;

  if (out.mu_closed_form > 0.0) {
    auto s = attempt(out.mu_closed_form);
    if (std::abs(s.slack) <= tol) {
      s.method = FractionMethod::ClosedForm;
      return s;
    }
  }

  auto at_zero = attempt(0.0);
  if (at_zero.slack >= -tol) {
    at_zero.method = FractionMethod::LowerBoundary;
    return at_zero;
  }

  // Beyond mu_max every selected fraction is clamped at one.
  const double denom = 2.0 * (beta - 1.0) * (1.0 - eps);
  double mu_max = 0.0;
  for (int id : selected) {
    const auto& s = offer(problem, id);
    if (s.intensity > 0.0) {
      mu_max = std::max(mu_max, (s.intensity * s.intensity * denom / lambda - s.intensity) / s.price);
    }
  }
  if (mu_max > 0.0) {
    double previous = 0.0;
    for (int i = 1; i <= kScanPoints; ++i) {
      const double mu = mu_max * i / kScanPoints;
      if (attempt(mu).slack >= -tol) {
        double lo = previous, hi = mu;
        for (int b = 0; b < kBisectionSteps && hi - lo > 1e-15 * hi; ++b) {
          const double mid = 0.5 * (lo + hi);
          (attempt(mid).slack >= -tol ? hi : lo) = mid;
        }
        auto s = attempt(hi);
        s.method = FractionMethod::RootSolve;
        return s;
      }
      previous = mu;
    }
  }
  auto s = attempt(mu_max);
  for (auto& [id, x] : s.fractions) {
    x = offer(problem, id).intensity > 0.0 ? 1.0 : 0.0;
  }
  s.slack = feasibility(ctx, s.fractions).slack;
  s.method = FractionMethod::Insufficient;
  return s;
}

SharingScenario purchased_scenario(const PurchaseProblem& problem, const Fractions& fractions) {
  std::vector<SharedSeller> sellers;
  for (const auto& [id, x] : fractions) {
    sellers.push_back({{id, offer(problem, id).intensity}, x});
  }
  return SharingScenario(problem.buyer_intensity, std::move(sellers),
                         Assumption::FractionalActivity);
}

BuyerSolution greedy_select(const PurchaseProblem& problem) {
  problem.validate();
  auto finish = [&](BuyerSolution sol) {
    sol.total_cost = 0.0;
    sol.purchased_intensity = 0.0;
    for (const auto& [id, x] : sol.fractions) {
      const auto& s = offer(problem, id);
      sol.total_cost += s.price * x;
      sol.purchased_intensity += s.intensity * x;
    }
    const auto f = feasibility_22(problem, sol.fractions);
    sol.slack = f.slack;
    sol.feasible = f.feasible && sol.method != FractionMethod::Insufficient;
    sol.achieved_coverage =
        coverage::approx(purchased_scenario(problem, sol.fractions), problem.radio);
    return sol;
  };

  BuyerSolution alone;
  alone.method = FractionMethod::LowerBoundary;
  if (feasibility_22(problem, {}).feasible) {
    return finish(alone);
  }

  std::vector<SellerOffer> order;
  for (const auto& s : problem.sellers) {
    if (s.intensity > 0.0) {
      order.push_back(s);
    }
  }
  std::sort(order.begin(), order.end(), [](const SellerOffer& a, const SellerOffer& b) {
    const double ra = a.price / a.intensity, rb = b.price / b.intensity;
    return ra != rb ? ra < rb : a.id < b.id;
  });
  if (order.empty()) {
    alone.method = FractionMethod::Insufficient;
    return finish(alone);
  }

  BuyerSolution sol;
  std::size_t evaluations = 0;
  for (const auto& next : order) {
    sol.selected.push_back(next.id);
    const auto fs = solve_fractions(problem, sol.selected);
    evaluations += sol.selected.size();
    sol.fractions = fs.fractions;
    sol.mu_star = fs.mu_star;
    sol.method = fs.method;
    sol.fraction_evaluations = evaluations;
    sol = finish(sol);
    if (sol.feasible) {
      return sol;
    }
  }
  return sol;
}

}  // namespace infrashare::buyer
