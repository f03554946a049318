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


#include "infrashare/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "infrashare/buyer.hpp"
#include "infrashare/coverage.hpp"
#include "infrashare/errors.hpp"
#include "infrashare/market.hpp"
#include "infrashare/ppp_sim.hpp"
#include "infrashare/tradeoff.hpp"
#include "infrashare/units.hpp"

namespace infrashare::experiment {

using config::ExperimentConfig;
using config::ExperimentKind;
using config::Series;

namespace {

double counts(double per_m2) { return units::per_m2_to_per_disk(per_m2); }

ResultTable make_table(const ExperimentConfig& c) {
  ResultTable t;
  t.metadata["kind"] = std::string(config::to_string(c.kind));
  t.metadata["name"] = c.name;
  t.metadata["config_hash"] = config_hash(c.source);
  t.metadata["seed"] = c.seed;
  t.metadata["version"] = INFRASHARE_VERSION;
  t.metadata["intensity_unit"] = "BS per disk of radius 500 m";
  return t;
}

std::vector<buyer::SellerOffer> series_offers(const ExperimentConfig& c, const Series& s) {
  std::vector<buyer::SellerOffer> out = c.sellers;
  if (s.seller_count) out.resize(*s.seller_count);
  if (s.seller_intensity) {
    for (auto& o : out) o.intensity = *s.seller_intensity;
  }
  return out;
}

buyer::PurchaseProblem series_problem(const ExperimentConfig& c, const Series& s, double lambda0,
                                      const RadioParams& radio) {
  buyer::PurchaseProblem p;
  p.buyer_intensity = lambda0;
  p.sellers = series_offers(c, s);
  p.radio = radio;
  p.qos = {s.epsilon.value_or(c.qos.epsilon)};
  p.convention = c.convention;
  return p;
}

struct SeriesPoint {
  double coverage = 0.0;
  double bought = 0.0;  ///< per m^2
  double fraction = 0.0;
  bool feasible = true;
};

// Coverage of one series at one sweep point. Purchasing series run the greedy
// buyer; the others share every listed seller in full.
SeriesPoint evaluate_series(const ExperimentConfig& c, const Series& s, double lambda0,
                            const RadioParams& radio) {
  const Assumption assumption = s.assumption.value_or(c.assumption);
  SeriesPoint out;
  std::vector<SharedSeller> shared;
  if (s.purchase) {
    const auto problem = series_problem(c, s, lambda0, radio);
    const auto sol = buyer::greedy_select(problem);
    for (const auto& o : problem.sellers) {
      auto it = sol.fractions.find(o.id);
      if (it != sol.fractions.end()) {
        shared.push_back({{o.id, o.intensity}, it->second});
        out.fraction += it->second;
      }
    }
    out.bought = sol.purchased_intensity;
    out.feasible = sol.feasible;
  } else if (s.seller_count) {
    for (const auto& o : series_offers(c, s)) shared.push_back({{o.id, o.intensity}, 1.0});
  }
  const SharingScenario sc(lambda0, shared, assumption);
  out.coverage = sc.association_intensity() > 0.0 ? coverage::approx(sc, radio) : 0.0;
  return out;
}

ResultTable coverage_sweep(const ExperimentConfig& c) {
  ResultTable t = make_table(c);
  t.columns.push_back("lambda0");
  for (const auto& s : c.series) {
    t.columns.push_back(s.label);
    if (s.purchase) t.columns.push_back(s.label + "_bought");
  }
  t.columns.push_back("inv_beta");
  const double inv_beta = 1.0 / coverage::beta(c.radio);
  for (double x : c.sweep) {
    std::vector<double> row{counts(x)};
    for (const auto& s : c.series) {
      const auto pt = evaluate_series(c, s, x, c.radio);
      row.push_back(pt.coverage);
      if (s.purchase) row.push_back(counts(pt.bought));
    }
    row.push_back(inv_beta);
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable power_sweep(const ExperimentConfig& c) {
  ResultTable t = make_table(c);
  t.columns.push_back("tx_power_dbm");
  for (const auto& s : c.series) t.columns.push_back(s.label);
  t.columns.push_back("inv_beta");
  const double inv_beta = 1.0 / coverage::beta(c.radio);
  for (double p : c.sweep) {
    RadioParams r = c.radio;
    r.tx_power = p;
    r.max_power = std::max(r.max_power, p);
    std::vector<double> row{units::watts_to_dbm(p)};
    for (const auto& s : c.series) {
      row.push_back(evaluate_series(c, s, s.buyer_intensity.value_or(c.buyer_intensity), r).coverage);
    }
    row.push_back(inv_beta);
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable epsilon_sweep(const ExperimentConfig& c) {
  ResultTable t = make_table(c);
  t.columns = {"epsilon", "target", "own_coverage"};
  for (const auto& s : c.series) {
    t.columns.push_back(s.label + "_fraction");
    t.columns.push_back(s.label + "_coverage");
    t.columns.push_back(s.label + "_feasible");
  }
  const double own =
      c.buyer_intensity > 0.0
          ? coverage::approx(SharingScenario::own_network(c.buyer_intensity), c.radio)
          : 0.0;
  for (double eps : c.sweep) {
    std::vector<double> row{eps, 1.0 - eps, own};
    for (Series s : c.series) {
      s.purchase = true;
      s.epsilon = eps;
      const auto pt = evaluate_series(c, s, s.buyer_intensity.value_or(c.buyer_intensity), c.radio);
      row.push_back(pt.fraction);
      row.push_back(pt.coverage);
      row.push_back(pt.feasible ? 1.0 : 0.0);
    }
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable areal_power(const ExperimentConfig& c) {
  ResultTable t = make_table(c);
  t.columns.push_back("lambda");
  const auto sellers = market::make_sellers(c.market_sellers);
  nlohmann::json info = nlohmann::json::array();
  for (const auto& s : sellers) {
    t.columns.push_back("S_" + std::to_string(s.id()));
    t.columns.push_back("p_" + std::to_string(s.id()));
    const auto m = tradeoff::areal_power_minimizer(s.profile().cost, s.profile().radio,
                                                   s.profile().qos);
    info.push_back({{"id", s.id()},
                    {"lambda_th", counts(s.power().threshold_intensity())},
                    {"minimizer", counts(m.intensity)},
                    {"coefficient", s.power().coefficient()}});
  }
  t.metadata["sellers"] = info;
  t.metadata["power_unit"] = "S in W per m^2, p in W per BS";
  for (double x : c.sweep) {
    std::vector<double> row{counts(x)};
    for (const auto& s : sellers) {
      const auto& m = s.power();
      row.push_back(m.value(x));
      row.push_back(x > 0.0 ? m.value(x) / x - m.circuit_power()
                            : m.max_power());
    }
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable market_equilibrium(const ExperimentConfig& c) {
  ResultTable t = make_table(c);
  t.columns = {"case", "eta"};
  for (const auto& s : c.market_sellers) t.columns.push_back("lambda_" + std::to_string(s.op.id));
  for (const auto& s : c.market_sellers) t.columns.push_back("y_" + std::to_string(s.op.id));
  for (const char* n : {"y_total", "q_star", "iterations", "converged", "residual", "stable"}) {
    t.columns.push_back(n);
  }
  t.metadata["theta"] = c.price_curve.theta;
  std::vector<config::MarketCase> cases = c.cases;
  if (cases.empty()) {
    config::MarketCase base;
    for (const auto& s : c.market_sellers) base.intensities.push_back(s.op.intensity);
    cases.push_back(base);
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto profiles = c.market_sellers;
    for (std::size_t k = 0; k < profiles.size(); ++k) {
      profiles[k].op.intensity = cases[i].intensities[k];
    }
    const auto sellers = market::make_sellers(profiles);
    market::PriceCurve curve = c.price_curve;
    if (cases[i].eta) curve.eta = *cases[i].eta;
    const auto eq = market::find_equilibrium(sellers, curve);
    const auto st = market::check_stability(sellers, curve);
    std::vector<double> row{static_cast<double>(i), curve.eta};
    for (const auto& p : profiles) row.push_back(counts(p.op.intensity));
    for (double y : eq.y_star) row.push_back(counts(y));
    row.push_back(counts(eq.y_total));
    row.push_back(eq.q_star);
    row.push_back(static_cast<double>(eq.iterations));
    row.push_back(eq.converged ? 1.0 : 0.0);
    row.push_back(eq.fixed_point_residual);
    row.push_back(st.stable ? 1.0 : 0.0);
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable full_clearing(const ExperimentConfig& c) {
  ResultTable t = make_table(c);
  t.columns = {"sellers", "lambda0", "y_total", "q_star",  "bought",
               "cost",    "coverage", "feasible", "own_coverage"};
  t.metadata["epsilon"] = c.qos.epsilon;
  std::vector<std::size_t> ns = c.seller_counts;
  if (ns.empty()) ns.push_back(c.market_sellers.size());
  const auto all = market::make_sellers(c.market_sellers);
  for (std::size_t n : ns) {
    const std::vector<market::Seller> sellers(all.begin(), all.begin() + static_cast<long>(n));
    for (double x : c.sweep) {
      buyer::PurchaseProblem p;
      p.buyer_intensity = x;
      p.radio = c.radio;
      p.qos = c.qos;
      p.convention = c.convention;
      const auto res = market::clear_market(sellers, c.price_curve, p);
      const double own =
          x > 0.0 ? coverage::approx(SharingScenario::own_network(x), c.radio) : 0.0;
      t.add_row({static_cast<double>(n), counts(x), counts(res.equilibrium.y_total),
                 res.equilibrium.q_star, counts(res.purchase.purchased_intensity),
                 res.purchase.total_cost, res.coverage, res.purchase.feasible ? 1.0 : 0.0, own});
    }
  }
  return t;
}

ResultTable monte_carlo(const ExperimentConfig& c, const std::vector<config::McScenario>& list) {
  ResultTable t = make_table(c);
  t.columns = {"scenario", "analytic", "approx", "mc", "ci", "pass", "trials"};
  t.metadata["trials"] = c.trials;
  t.metadata["region_radius"] = c.region_radius;
  nlohmann::json labels = nlohmann::json::array();
  sim::SimRegion region;
  region.radius = c.region_radius;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& s = list[i];
    labels.push_back(s.label);
    const SharingScenario sc(s.buyer_intensity, s.sellers, s.assumption);
    const double exact = coverage::exact(sc, s.radio);
    const double approx = coverage::approx(sc, s.radio);
    const auto est = sim::estimate_coverage(sc, s.radio, region, c.trials, c.seed + i, c.threads);
    const bool pass = std::abs(est.p_hat - exact) <= est.ci_halfwidth;
    t.add_row({static_cast<double>(i), exact, approx, est.p_hat, est.ci_halfwidth,
               pass ? 1.0 : 0.0, static_cast<double>(est.trials)});
  }
  t.metadata["scenarios"] = labels;
  return t;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::CoverageSweep: return coverage_sweep(c);
    case ExperimentKind::PowerSweep: return power_sweep(c);
    case ExperimentKind::EpsilonSweep: return epsilon_sweep(c);
    case ExperimentKind::ArealPower: return areal_power(c);
    case ExperimentKind::MarketEquilibrium: return market_equilibrium(c);
    case ExperimentKind::FullClearing: return full_clearing(c);
    case ExperimentKind::McValidate: return run_validation(c);
  }
  throw ParameterError("unknown experiment kind");
}

ResultTable run_validation(const ExperimentConfig& c) {
  if (!c.scenarios.empty()) return monte_carlo(c, c.scenarios);
  std::vector<SharedSeller> sellers;
  for (const auto& s : c.sellers) sellers.push_back({{s.id, s.intensity}, 1.0});
  if (sellers.empty()) {
    for (const auto& s : c.market_sellers) sellers.push_back({s.op, 1.0});
  }
  const double lambda0 = c.buyer_intensity > 0.0 ? c.buyer_intensity
                         : !c.sweep.empty() && c.kind != ExperimentKind::EpsilonSweep &&
                                 c.kind != ExperimentKind::PowerSweep
                             ? c.sweep.front()
                             : 0.0;
  std::vector<config::McScenario> list;
  if (lambda0 > 0.0) list.push_back({"own-network", c.radio, lambda0, {}, Assumption::AllBsServe});
  if (!sellers.empty()) {
    list.push_back({"all-serve", c.radio, lambda0, sellers, Assumption::AllBsServe});
    list.push_back({"fractional", c.radio, lambda0, sellers, Assumption::FractionalActivity});
  }
  if (list.empty()) {
    throw ConfigError("buyer.intensity", "nothing to validate: no buyer intensity or sellers");
  }
  return monte_carlo(c, list);
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

std::string preset_path(std::string_view name) {
  const char* env = std::getenv("INFRASHARE_PRESET_DIR");
  const std::filesystem::path dir = env && *env ? env : INFRASHARE_PRESET_DIR;
  return (dir / (std::string(name) + ".json")).string();
}

config::ExperimentConfig load_preset(std::string_view name) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "' (fig2..fig9)");
  }
  return config::load_config(preset_path(name));
}

}  // namespace infrashare::experiment
