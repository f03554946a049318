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


// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "infrashare/buyer.hpp"
#include "infrashare/coverage.hpp"
#include "infrashare/errors.hpp"
#include "infrashare/experiment.hpp"
#include "infrashare/market.hpp"
#include "infrashare/ppp_sim.hpp"
#include "infrashare/tradeoff.hpp"
#include "infrashare/units.hpp"
#include "oracles.hpp"

using namespace infrashare;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double per_m2(double counts) { return units::per_disk_to_per_m2(counts); }

RadioParams radio(double alpha, double t_db, double noise_dbm = -150.0, double p_dbm = 10.0) {
  RadioParams r;
  r.alpha = alpha;
  r.threshold = units::db_to_linear(t_db);
  r.noise_power = units::dbm_to_watts(noise_dbm);
  r.tx_power = units::dbm_to_watts(p_dbm);
  return r;
}

// 1. Monte Carlo against the exact integral.
Outcome mc_agreement() {
  struct Case {
    SharingScenario scenario;
    RadioParams radio;
  };
  std::vector<Case> cases;
  for (double alpha : {3.0, 4.0, 5.0}) {
    for (double t : {-15.0, 5.0, 20.0}) {
      const RadioParams r = radio(alpha, t, -110.0);
      cases.push_back({SharingScenario::own_network(per_m2(8.0)), r});
      cases.push_back({SharingScenario(per_m2(2.0),
                                       {{{1, per_m2(3.0)}, 1.0}, {{2, per_m2(3.0)}, 1.0}},
                                       Assumption::AllBsServe),
                       r});
      cases.push_back({SharingScenario(per_m2(2.0),
                                       {{{1, per_m2(6.0)}, 0.5}, {{2, per_m2(4.0)}, 1.0}},
                                       Assumption::FractionalActivity),
                       r});
    }
  }
  for (double t : {-15.0, 5.0, 20.0}) {
    cases.push_back({SharingScenario(per_m2(4.0), {{{1, per_m2(8.0)}, 0.25}},
                                     Assumption::FractionalActivity),
                     radio(4.0, t, -100.0)});
  }
  const auto start = std::chrono::steady_clock::now();
  std::size_t inside = 0;
  std::string misses;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double exact = coverage::exact(cases[i].scenario, cases[i].radio);
    const auto est = sim::estimate_coverage(cases[i].scenario, cases[i].radio, sim::SimRegion{},
                                            100000, 20260101 + i);
    if (std::abs(est.p_hat - exact) <= est.ci_halfwidth) {
      ++inside;
    } else {
      misses += fmt::format(" #{}({:.4f} vs {:.4f}+-{:.4f})", i, exact, est.p_hat,
                            est.ci_halfwidth);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto needed = static_cast<std::size_t>(std::ceil(0.93 * cases.size()));
  return {inside >= needed && secs <= 120.0,
          fmt::format("{}/{} scenarios inside the 95% CI at 1e5 trials (need {}), {:.1f} s{}",
                      inside, cases.size(), needed, secs, misses.empty() ? "" : ";" + misses)};
}

// 2. Saturation at 1/beta.
Outcome saturation() {
  const RadioParams r = radio(5.0, 20.0);
  const double inv_beta = 1.0 / coverage::beta(r);
  auto scenario = [](double scale) {
    std::vector<SharedSeller> s;
    for (int k = 1; k <= 6; ++k) s.push_back({{k, per_m2(10.0 * scale)}, 1.0});
    return SharingScenario(per_m2(10.0 * scale), s, Assumption::AllBsServe);
  };
  const double base = coverage::approx(scenario(1.0), r);
  const double scaled = coverage::approx(scenario(1e3), r);
  const bool two_places = std::lround(inv_beta * 100.0) == 12;
  const bool converged = std::abs(scaled - inv_beta) < 0.005 &&
                         std::abs(scaled - inv_beta) <= std::abs(base - inv_beta);
  return {two_places && converged,
          fmt::format("1/beta = {:.5f} (2 d.p. {:.2f}); approx {:.5f} -> {:.5f} after x1e3",
                      inv_beta, inv_beta, base, scaled)};
}

// 3. Approximation against the exact integral over the field-study settings.
Outcome approximation() {
  double worst = 0.0;
  std::string where;
  std::size_t n = 0;
  auto check = [&](const SharingScenario& s, const RadioParams& r, const std::string& tag) {
    const double ex = coverage::exact(s, r);
    if (!(ex > 0.0)) return;
    const double err = std::abs(coverage::approx(s, r) - ex) / ex;
    ++n;
    if (err > worst) {
      worst = err;
      where = tag;
    }
  };
  for (double t : {-15.0, 5.0, 20.0}) {
    const RadioParams r = radio(5.0, t);
    for (double l0 : {1.0, 5.0, 10.0, 15.0, 20.0, 25.0, 50.0, 1e3, 1e5}) {
      check(SharingScenario::own_network(per_m2(l0)), r, fmt::format("own T={} l0={}", t, l0));
      for (int count : {2, 4, 6}) {
        for (double lk : {10.0, 20.0, 30.0}) {
          for (double x : {0.25, 0.5, 1.0}) {
            std::vector<SharedSeller> s;
            for (int k = 1; k <= count; ++k) s.push_back({{k, per_m2(lk)}, x});
            for (auto a : {Assumption::AllBsServe, Assumption::FractionalActivity}) {
              check(SharingScenario(per_m2(l0), s, a), r,
                    fmt::format("T={} l0={} N={} lk={} x={} {}", t, l0, count, lk, x,
                                to_string(a)));
            }
          }
        }
      }
    }
  }
  const double worst_field = worst;
  // Transmit-power sweep of the all-serve comparison.
  for (double p = -40.0; p <= 40.0; p += 5.0) {
    const RadioParams r = radio(5.0, 20.0, -150.0, p);
    for (double l0 : {5.0, 10.0}) {
      check(SharingScenario::own_network(per_m2(l0)), r, fmt::format("own p={}dBm l0={}", p, l0));
    }
    std::vector<SharedSeller> s;
    for (int k = 1; k <= 4; ++k) s.push_back({{k, per_m2(10.0)}, 1.0});
    check(SharingScenario(per_m2(5.0), s, Assumption::AllBsServe), r,
          fmt::format("share4 p={}dBm", p));
  }
  return {worst <= 0.10,
          fmt::format("max relative error {:.4f} over {} points (at {}); {:.4f} without the "
                      "transmit-power sweep",
                      worst, n, where, worst_field)};
}

// 4. Minimum power reproduces the target; infeasibility is raised.
Outcome min_power() {
  std::mt19937_64 rng(20260104);
  std::uniform_real_distribution<double> alpha_d(2.5, 6.0), t_db(-15.0, 20.0), count(0.5, 80.0),
      u(0.0, 1.0), noise_dbm(-170.0, -100.0);
  int feasible = 0, infeasible = 0, bad = 0;
  double worst = 0.0;
  while (feasible < 100 || infeasible < 100) {
    RadioParams r = radio(alpha_d(rng), t_db(rng), noise_dbm(rng));
    const double beta = coverage::beta(r);
    std::vector<SharedSeller> s{{{1, per_m2(count(rng))}, u(rng)}, {{2, per_m2(count(rng))}, u(rng)}};
    const auto a = u(rng) < 0.5 ? Assumption::AllBsServe : Assumption::FractionalActivity;
    const SharingScenario sc(per_m2(count(rng)), s, a);
    const double beta_eff = tradeoff::effective_beta(sc.association_intensity(),
                                                     sc.interference_intensity(), beta);
    const bool want_feasible = feasible < 100 && (infeasible >= 100 || u(rng) < 0.5);
    const double eps = want_feasible ? 1.0 - (0.02 + 0.96 * u(rng)) / beta_eff
                                     : 1.0 - (1.0 + u(rng)) / beta_eff;
    if (!(eps > 0.0 && eps < 1.0)) continue;
    try {
      const double p = tradeoff::min_power(sc, r, {eps});
      RadioParams at = r;
      at.tx_power = p;
      const double err = std::abs(coverage::approx(sc, at) - (1.0 - eps));
      worst = std::max(worst, err);
      if (!want_feasible || err > 1e-6) ++bad;
      ++feasible;
    } catch (const Infeasible&) {
      if (want_feasible) ++bad;
      ++infeasible;
    }
  }
  return {bad == 0, fmt::format("{} feasible draws (max |Pc - (1-eps)| = {:.2e}), {} infeasible "
                                "draws raised, {} mismatches",
                                feasible, worst, infeasible, bad)};
}

// 5. Areal power: continuity, convexity, minimiser.
Outcome areal_power() {
  int bad = 0, sets = 0;
  double worst_jump = 0.0, worst_offset = 0.0;
  for (double p_c : {0.005, 0.01, 0.03, 0.08}) {
    for (double t_db : {-15.0, 5.0}) {
      for (double noise : {-150.0, -120.0, -90.0}) {
        ++sets;
        tradeoff::PowerCostParams pc;
        pc.max_power = 0.01;
        pc.circuit_power = p_c;
        pc.power_price = 50.0;
        pc.threshold = units::db_to_linear(t_db);
        const RadioParams r = radio(5.0, t_db, noise);
        const tradeoff::QosTarget q{0.6};
        const tradeoff::ArealPowerModel m(pc, r, q);
        const double th = m.threshold_intensity();
        const double scale = m.value(th);
        const double left = th * (pc.max_power + pc.circuit_power);
        const double right = m.coefficient() * std::pow(th, 1.0 - 2.5) + p_c * th;
        const double jump = std::abs(left - right) / scale;
        worst_jump = std::max(worst_jump, jump);
        if (jump >= 1e-12) ++bad;
        for (int i = 1; i <= 200; ++i) {
          const double l = th * (1.0 + 0.05 * i);
          const double h = 1e-3 * l;
          if (m.value(l + h) - 2.0 * m.value(l) + m.value(l - h) <= 0.0) ++bad;
        }
        const auto mn = tradeoff::areal_power_minimizer(pc, r, q);
        const double hi = 10.0 * std::max(mn.intensity, th);
        const double step = (hi - th) / 9999.0;
        double best = th, best_v = m.value(th);
        for (int i = 0; i < 10000; ++i) {
          const double l = th + step * i;
          if (m.value(l) < best_v) {
            best_v = m.value(l);
            best = l;
          }
        }
        worst_offset = std::max(worst_offset, std::abs(best - mn.intensity) / step);
        if (std::abs(best - mn.intensity) > step) ++bad;
      }
    }
  }
  return {bad == 0, fmt::format("{} seller settings: max jump {:.1e} x scale, minimiser within "
                                "{:.2f} grid steps, {} violations",
                                sets, worst_jump, worst_offset, bad)};
}

// 6. Greedy demand over the epsilon sweep, with the grid optimum reported.
Outcome greedy() {
  auto field = [](int sellers, double) {
    buyer::PurchaseProblem p;
    p.buyer_intensity = per_m2(10.0);
    for (int k = 1; k <= sellers; ++k) p.sellers.push_back({k, per_m2(10.0), 1.0});
    p.radio = radio(5.0, 20.0);
    return p;
  };
  auto four = [](int, double) {
    buyer::PurchaseProblem p;
    p.buyer_intensity = per_m2(2.0);
    p.sellers = {{0, per_m2(10.0), 300.0},
                 {1, per_m2(15.0), 250.0},
                 {2, per_m2(20.0), 400.0},
                 {3, per_m2(8.0), 120.0}};
    p.radio = radio(4.0, 0.0);
    return p;
  };
  struct Problem {
    std::string name;
    std::function<buyer::PurchaseProblem(int, double)> make;
    int sellers;
  };
  const std::vector<Problem> problems = {
      {"field-2", field, 2}, {"field-4", field, 4}, {"field-6", field, 6}, {"mixed-4", four, 4}};
  bool monotone = true;
  std::string report;
  for (const auto& pr : problems) {
    double prev = std::numeric_limits<double>::infinity();
    std::string gaps;
    for (int i = 1; i <= 10; ++i) {
      auto p = pr.make(pr.sellers, 0.0);
      p.qos.epsilon = 0.05 * i;
      const auto sol = buyer::greedy_select(p);
      if (sol.purchased_intensity > prev * (1.0 + 1e-12)) monotone = false;
      prev = sol.purchased_intensity;
      if (pr.sellers <= 4) {
        const auto bf = oracles::brute_force_purchase(p, 0.05);
        if (sol.feasible || bf.found) {
          gaps += fmt::format(" {:.2f}:{}/{}", p.qos.epsilon,
                              sol.feasible ? fmt::format("{:.4g}", sol.total_cost) : "infeas",
                              bf.found ? fmt::format("{:.4g}", bf.cost) : "none");
        }
      }
    }
    if (!gaps.empty()) report += fmt::format("; {} greedy/grid cost{}", pr.name, gaps);
  }
  return {monotone, fmt::format("purchased intensity non-increasing over eps 0.05..0.50: {}{}",
                                monotone ? "yes" : "no", report)};
}

market::SellerProfile seller_profile(int id, double counts, double t_db, double p_c, double a,
                                     RadioParams r) {
  market::SellerProfile s;
  s.op = {id, per_m2(counts)};
  s.cost.max_power = units::dbm_to_watts(10.0);
  s.cost.circuit_power = p_c;
  s.cost.power_price = a;
  s.cost.threshold = units::db_to_linear(t_db);
  r.tx_power = 0.01;
  r.max_power = 0.01;
  s.radio = r;
  s.qos = {0.6};
  return s;
}

market::SellerProfile field_seller(int id, double counts, bool first) {
  return first ? seller_profile(id, counts, -15.0, 0.03, 50.0, radio(5.0, 0.0))
               : seller_profile(id, counts, 5.0, 0.08, 90.0, radio(5.0, 0.0));
}

const market::PriceCurve kCurve{500.0, 5.0 * M_PI * 500.0 * 500.0};

// 7. Cournot equilibrium.
Outcome cournot() {
  bool ok = true;
  std::string detail;
  // Symmetric duopoly on the linear cost branch, where y_k = U / 3.
  RadioParams lin_radio = radio(4.0, 0.0);
  lin_radio.noise_power = 1e-6;
  const auto duo = market::make_sellers({seller_profile(1, 100.0, 0.0, 0.02, 40.0, lin_radio),
                                         seller_profile(2, 100.0, 0.0, 0.02, 40.0, lin_radio)});
  const auto& lc = duo[0].profile().cost;
  const double u =
      (kCurve.theta - lc.power_price * (lc.max_power + lc.circuit_power)) / kCurve.eta;
  const auto eq = market::find_equilibrium(duo, kCurve);
  const double sym_err =
      std::max(std::abs(eq.y_star[0] - u / 3.0), std::abs(eq.y_star[1] - u / 3.0)) / (u / 3.0);
  ok = ok && eq.converged && sym_err <= 1e-8 &&
       duo[0].power().threshold_intensity() > duo[0].capacity();
  detail += fmt::format("symmetric linear duopoly rel. error {:.1e}", sym_err);

  double worst_res = eq.fixed_point_residual;
  bool deviation_ok = true;
  std::vector<double> y_total, y1;
  for (double l2 : {10.0, 15.0, 20.0, 25.0, 30.0}) {
    const auto sellers = market::make_sellers({field_seller(1, 10.0, true), field_seller(2, l2, false)});
    const auto e = market::find_equilibrium(sellers, kCurve);
    ok = ok && e.converged;
    worst_res = std::max(worst_res, e.fixed_point_residual);
    for (std::size_t k = 0; k < 2; ++k) {
      const double others = e.y_total - e.y_star[k];
      const double base = market::profit(sellers[k], kCurve, e.y_star[k], e.y_total);
      const double d = 1e-4 * sellers[k].capacity();
      for (double y : {e.y_star[k] - d, e.y_star[k] + d}) {
        if (y < 0.0 || y > sellers[k].capacity()) continue;
        if (market::profit(sellers[k], kCurve, y, y + others) > base) deviation_ok = false;
      }
    }
    y_total.push_back(units::per_m2_to_per_disk(e.y_total));
    y1.push_back(units::per_m2_to_per_disk(e.y_star[0]));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < y_total.size(); ++i) decreasing = decreasing && y_total[i] < y_total[i - 1];
  ok = ok && worst_res < 1e-9 && deviation_ok && decreasing;
  detail += fmt::format("; max fixed-point residual {:.1e}; no profitable deviation: {}", worst_res,
                        deviation_ok ? "yes" : "no");
  detail += fmt::format("; y* over lambda2 = 10..30: {:.4g} (decreasing: {}); y1* = {:.4g}",
                        fmt::join(y_total, ", "), decreasing ? "yes" : "no", fmt::join(y1, ", "));
  return {ok, detail};
}

// 8. Stability conditions and convergence from random starts.
Outcome stability() {
  std::vector<std::pair<std::vector<market::Seller>, market::PriceCurve>> games;
  for (const char* name : {"fig7", "fig8"}) {
    const auto c = experiment::load_preset(name);
    for (const auto& mc : c.cases) {
      auto profiles = c.market_sellers;
      for (std::size_t k = 0; k < profiles.size(); ++k) profiles[k].op.intensity = mc.intensities[k];
      market::PriceCurve curve = c.price_curve;
      if (mc.eta) curve.eta = *mc.eta;
      games.push_back({market::make_sellers(profiles), curve});
    }
  }
  {
    const auto c = experiment::load_preset("fig9");
    for (std::size_t n : c.seller_counts) {
      games.push_back({market::make_sellers({c.market_sellers.begin(),
                                             c.market_sellers.begin() + static_cast<long>(n)}),
                       c.price_curve});
    }
  }
  std::mt19937_64 rng(20260108);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool stable = true, converged = true;
  double worst = 0.0;
  for (const auto& [g, curve] : games) {
    stable = stable && market::check_stability(g, curve).stable;
    double scale = 0.0;
    for (const auto& s : g) scale = std::max(scale, s.capacity());
    std::vector<std::vector<double>> ends;
    for (int r = 0; r < 10; ++r) {
      market::EquilibriumOptions o;
      std::vector<double> start;
      for (const auto& s : g) start.push_back(u01(rng) * s.capacity());
      o.start = start;
      const auto e = market::find_equilibrium(g, curve, o);
      converged = converged && e.converged;
      ends.push_back(e.y_star);
    }
    for (const auto& a : ends) {
      for (const auto& b : ends) {
        double d = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
        worst = std::max(worst, std::sqrt(d) / scale);
      }
    }
  }
  return {stable && converged && worst < 1e-6,
          fmt::format("{} parameter sets: conditions hold: {}; all runs converged: {}; max "
                      "pairwise distance {:.1e} x max lambda_k",
                      games.size(), stable ? "yes" : "no", converged ? "yes" : "no", worst)};
}

// 9. Buyer coverage at the clearing price against the number of sellers.
Outcome clearing() {
  const auto c = experiment::load_preset("fig9");
  const auto all = market::make_sellers(c.market_sellers);
  bool ok = true;
  std::string detail;
  for (double l0 : c.sweep) {
    std::vector<double> cov;
    for (std::size_t n : {3u, 4u, 5u}) {
      buyer::PurchaseProblem p;
      p.buyer_intensity = l0;
      p.radio = c.radio;
      p.qos = c.qos;
      const auto res = market::clear_market(
          {all.begin(), all.begin() + static_cast<long>(n)}, c.price_curve, p);
      cov.push_back(res.coverage);
    }
    for (std::size_t i = 1; i < cov.size(); ++i) ok = ok && cov[i] >= cov[i - 1];
    detail += fmt::format("{}lambda0={:.0f}: {:.4f}", detail.empty() ? "" : "; ",
                          units::per_m2_to_per_disk(l0), fmt::join(cov, "/"));
  }
  return {ok, "coverage with 3/4/5 sellers, " + detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"MC vs analytic coverage", mc_agreement},
      {"saturation at 1/beta", saturation},
      {"approximation within 10%", approximation},
      {"minimum-power self-consistency", min_power},
      {"areal power shape and minimiser", areal_power},
      {"greedy demand over epsilon", greedy},
      {"Cournot equilibrium", cournot},
      {"stability", stability},
      {"market clearing vs seller count", clearing},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
