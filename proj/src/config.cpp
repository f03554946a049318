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


#include "infrashare/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>

#include "infrashare/errors.hpp"
#include "infrashare/units.hpp"

namespace infrashare::config {

using nlohmann::json;

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Object view that remembers which keys were read, so leftovers can be
// rejected as unknown.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(std::string_view key) const { return join(path_, key); }

  const json* get(std::string_view key) {
    used_.emplace(key);
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  const json& req(std::string_view key) {
    const json* v = get(key);
    if (v == nullptr) throw ConfigError(at(key), "missing required field");
    return *v;
  }

  double number(std::string_view key, std::optional<double> fallback = std::nullopt) {
    const json* v = get(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required field");
    }
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    return v->get<double>();
  }

  double quantity(std::string_view key, std::string_view kind,
                  std::optional<double> fallback = std::nullopt) {
    const json* v = get(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required field");
    }
    return parse_quantity(*v, kind, at(key));
  }

  std::string string(std::string_view key, std::optional<std::string> fallback = std::nullopt) {
    const json* v = get(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required field");
    }
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }

  std::uint64_t unsigned_int(std::string_view key, std::uint64_t fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_unsigned()) {
      if (v->is_number_integer() && v->get<std::int64_t>() >= 0) return v->get<std::uint64_t>();
      throw ConfigError(at(key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  void finish() const {
    for (const auto& [k, _] : j_.items()) {
      if (!used_.count(k)) throw ConfigError(join(path_, k), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Assumption parse_assumption(const std::string& s, const std::string& path) {
  if (s == "all-serve") return Assumption::AllBsServe;
  if (s == "fractional") return Assumption::FractionalActivity;
  throw ConfigError(path, "unknown assumption '" + s + "' (all-serve | fractional)");
}

Fading parse_fading(const std::string& s, const std::string& path) {
  if (s == "rayleigh") return Fading::Rayleigh;
  if (s == "nakagami") return Fading::Nakagami;
  throw ConfigError(path, "unknown fading '" + s + "' (rayleigh | nakagami)");
}

// Reads radio fields on top of `base`.
RadioParams parse_radio(const json& j, const std::string& path, RadioParams base,
                        bool require_all) {
  Obj o(j, path);
  auto opt = [&](double current) -> std::optional<double> {
    if (require_all) return std::nullopt;
    return current;
  };
  base.alpha = o.number("alpha", opt(base.alpha));
  base.threshold = o.quantity("threshold", "ratio", opt(base.threshold));
  base.noise_power = o.quantity("noise", "power", opt(base.noise_power));
  base.tx_power = o.quantity("tx_power", "power", opt(base.tx_power));
  base.max_power = o.quantity("max_power", "power",
                              require_all ? std::numeric_limits<double>::infinity()
                                          : base.max_power);
  if (const json* f = o.get("fading")) {
    if (!f->is_string()) throw ConfigError(o.at("fading"), "expected a string");
    base.fading = parse_fading(f->get<std::string>(), o.at("fading"));
  }
  o.finish();
  wrap(path, [&] {
    base.validate();
    return 0;
  });
  return base;
}

std::vector<double> parse_sweep(const json& j, std::string_view kind, const std::string& path) {
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(parse_quantity(j[i], kind, index(path, i)));
    }
    return out;
  }
  Obj o(j, path);
  const double from = o.quantity("from", kind);
  const double to = o.quantity("to", kind);
  const auto steps = o.unsigned_int("steps", 0);
  const std::string spacing = o.string("spacing", "linear");
  o.finish();
  if (steps < 2) throw ConfigError(o.at("steps"), "need at least 2 steps");
  if (spacing != "linear" && spacing != "log") {
    throw ConfigError(o.at("spacing"), "expected 'linear' or 'log'");
  }
  if (spacing == "log" && !(from > 0.0 && to > 0.0)) {
    throw ConfigError(path, "log spacing needs positive endpoints");
  }
  for (std::uint64_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    out.push_back(spacing == "linear"
                      ? from + t * (to - from)
                      : std::exp(std::log(from) + t * (std::log(to) - std::log(from))));
  }
  return out;
}

buyer::SellerOffer parse_offer(const json& j, const std::string& path, std::size_t i) {
  Obj o(j, path);
  buyer::SellerOffer s;
  s.id = static_cast<int>(o.unsigned_int("id", i + 1));
  s.intensity = o.quantity("intensity", "intensity");
  s.price = o.number("price");
  o.finish();
  return s;
}

market::SellerProfile parse_market_seller(const json& j, const std::string& path, std::size_t i,
                                          const RadioParams& radio) {
  Obj o(j, path);
  market::SellerProfile s;
  s.op.id = static_cast<int>(o.unsigned_int("id", i + 1));
  s.op.intensity = o.quantity("intensity", "intensity");
  s.cost.threshold = o.quantity("threshold", "ratio");
  s.cost.circuit_power = o.quantity("circuit_power", "power");
  s.cost.power_price = o.number("power_price");
  s.cost.fixed_cost = o.number("fixed_cost", 0.0);
  s.cost.max_power = o.quantity("max_power", "power", radio.tx_power);
  s.qos.epsilon = o.number("epsilon", 0.6);
  s.radio = radio;
  o.finish();
  wrap(path, [&] {
    s.qos.validate();
    return market::Seller(s).capacity();
  });
  return s;
}

Series parse_series(const json& j, const std::string& path) {
  Obj o(j, path);
  Series s;
  s.label = o.string("label");
  if (s.label.empty()) throw ConfigError(o.at("label"), "must not be empty");
  if (const json* v = o.get("purchase")) {
    if (!v->is_boolean()) throw ConfigError(o.at("purchase"), "expected true or false");
    s.purchase = v->get<bool>();
  }
  if (o.get("epsilon")) s.epsilon = o.number("epsilon");
  if (o.get("buyer_intensity")) s.buyer_intensity = o.quantity("buyer_intensity", "intensity");
  if (o.get("seller_intensity")) s.seller_intensity = o.quantity("seller_intensity", "intensity");
  if (o.get("seller_count")) s.seller_count = o.unsigned_int("seller_count", 0);
  if (o.get("assumption")) {
    s.assumption = parse_assumption(o.string("assumption"), o.at("assumption"));
  }
  o.finish();
  return s;
}

McScenario parse_mc_scenario(const json& j, const std::string& path, const RadioParams& radio,
                             std::size_t i) {
  Obj o(j, path);
  McScenario s;
  s.label = o.string("label", "scenario-" + std::to_string(i));
  s.radio = radio;
  if (const json* r = o.get("radio")) s.radio = parse_radio(*r, o.at("radio"), radio, false);
  s.buyer_intensity = o.quantity("buyer_intensity", "intensity");
  s.assumption = parse_assumption(o.string("assumption", "all-serve"), o.at("assumption"));
  if (const json* arr = o.get("sellers")) {
    const std::string p = o.at("sellers");
    array_at(*arr, p);
    for (std::size_t k = 0; k < arr->size(); ++k) {
      Obj so((*arr)[k], index(p, k));
      SharedSeller ss;
      ss.op.id = static_cast<int>(so.unsigned_int("id", k + 1));
      ss.op.intensity = so.quantity("intensity", "intensity");
      ss.fraction = so.number("fraction", 1.0);
      so.finish();
      s.sellers.push_back(ss);
    }
  }
  o.finish();
  wrap(path, [&] {
    return SharingScenario(s.buyer_intensity, s.sellers, s.assumption).association_intensity();
  });
  return s;
}

std::string_view sweep_unit(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PowerSweep: return "power";
    case ExperimentKind::EpsilonSweep: return "ratio";
    default: return "intensity";
  }
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

}  // namespace

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::CoverageSweep: return "coverage-sweep";
    case ExperimentKind::PowerSweep: return "power-sweep";
    case ExperimentKind::EpsilonSweep: return "epsilon-sweep";
    case ExperimentKind::ArealPower: return "areal-power";
    case ExperimentKind::MarketEquilibrium: return "market-equilibrium";
    case ExperimentKind::FullClearing: return "full-clearing";
    case ExperimentKind::McValidate: return "mc-validate";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view s) {
  for (auto k : {ExperimentKind::CoverageSweep, ExperimentKind::PowerSweep,
                 ExperimentKind::EpsilonSweep, ExperimentKind::ArealPower,
                 ExperimentKind::MarketEquilibrium, ExperimentKind::FullClearing,
                 ExperimentKind::McValidate}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("kind", "unknown experiment kind '" + std::string(s) + "'");
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("format", "unknown output format '" + std::string(s) + "' (csv | json)");
}

double parse_quantity(const json& v, std::string_view unit_kind, const std::string& path) {
  const bool intensity = unit_kind == "intensity";
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "value must be finite");
    return intensity ? units::per_disk_to_per_m2(x) : x;
  }
  if (!v.is_string()) throw ConfigError(path, "expected a number or a string with a unit");
  const std::string s = v.get<std::string>();
  const char* begin = s.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(x)) {
    throw ConfigError(path, "cannot parse quantity '" + s + "'");
  }
  std::string unit(end);
  unit.erase(0, unit.find_first_not_of(' '));
  unit.erase(unit.find_last_not_of(' ') + 1);
  auto bad = [&] {
    return ConfigError(path, "unit '" + unit + "' is not valid for a " + std::string(unit_kind) +
                                 " quantity");
  };
  if (unit_kind == "power") {
    if (unit.empty() || unit == "W") return x;
    if (unit == "mW") return 1e-3 * x;
    if (unit == "dBm") return units::dbm_to_watts(x);
    if (unit == "dBW") return units::db_to_linear(x);
    throw bad();
  }
  if (unit_kind == "ratio") {
    if (unit.empty()) return x;
    if (unit == "dB") return units::db_to_linear(x);
    throw bad();
  }
  if (intensity) {
    if (unit.empty() || unit == "per-disk") return units::per_disk_to_per_m2(x);
    if (unit == "/m2") return x;
    if (unit == "/km2") return x * 1e-6;
    throw bad();
  }
  throw ConfigError(path, "internal: unknown quantity kind");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  c.source = doc;
  Obj root(doc, "");
  c.kind = parse_kind(root.string("kind"));
  c.name = root.string("name", std::string(to_string(c.kind)));

  const bool mc = c.kind == ExperimentKind::McValidate;
  if (const json* r = root.get("radio")) {
    c.radio = parse_radio(*r, "radio", RadioParams{}, true);
  } else if (!mc || !root.get("scenarios")) {
    throw ConfigError("radio", "missing required field");
  }

  if (const json* q = root.get("qos")) {
    Obj o(*q, "qos");
    c.qos.epsilon = o.number("epsilon");
    o.finish();
    wrap("qos.epsilon", [&] {
      c.qos.validate();
      return 0;
    });
  }
  if (const json* a = root.get("assumption")) {
    if (!a->is_string()) throw ConfigError("assumption", "expected a string");
    c.assumption = parse_assumption(a->get<std::string>(), "assumption");
  }
  if (const json* b = root.get("buyer")) {
    Obj o(*b, "buyer");
    c.buyer_intensity = o.quantity("intensity", "intensity");
    const std::string conv = o.string("convention", "effective");
    if (conv == "effective") {
      c.convention = buyer::IntensityConvention::Effective;
    } else if (conv == "nominal") {
      c.convention = buyer::IntensityConvention::Nominal;
    } else {
      throw ConfigError(o.at("convention"), "expected 'effective' or 'nominal'");
    }
    o.finish();
    require(c.buyer_intensity >= 0.0, "buyer.intensity", "must be non-negative");
  }
  if (const json* s = root.get("sellers")) {
    array_at(*s, "sellers");
    std::set<int> ids;
    for (std::size_t i = 0; i < s->size(); ++i) {
      c.sellers.push_back(parse_offer((*s)[i], index("sellers", i), i));
      if (!ids.insert(c.sellers.back().id).second) {
        throw ConfigError(index("sellers", i) + ".id", "duplicate seller id");
      }
      require(c.sellers.back().price > 0.0, index("sellers", i) + ".price", "must be positive");
      require(c.sellers.back().intensity >= 0.0, index("sellers", i) + ".intensity",
              "must be non-negative");
    }
  }
  if (const json* m = root.get("market")) {
    Obj o(*m, "market");
    c.price_curve.theta = o.number("theta", c.price_curve.theta);
    c.price_curve.eta = o.quantity("eta", "ratio");
    wrap("market", [&] {
      c.price_curve.validate();
      return 0;
    });
    if (const json* s = o.get("sellers")) {
      array_at(*s, "market.sellers");
      std::set<int> ids;
      for (std::size_t i = 0; i < s->size(); ++i) {
        c.market_sellers.push_back(
            parse_market_seller((*s)[i], index("market.sellers", i), i, c.radio));
        if (!ids.insert(c.market_sellers.back().op.id).second) {
          throw ConfigError(index("market.sellers", i) + ".id", "duplicate seller id");
        }
      }
    }
    o.finish();
  }
  if (const json* s = root.get("sweep")) c.sweep = parse_sweep(*s, sweep_unit(c.kind), "sweep");
  if (const json* s = root.get("series")) {
    array_at(*s, "series");
    for (std::size_t i = 0; i < s->size(); ++i) {
      c.series.push_back(parse_series((*s)[i], index("series", i)));
    }
  }
  if (const json* s = root.get("cases")) {
    array_at(*s, "cases");
    for (std::size_t i = 0; i < s->size(); ++i) {
      const std::string p = index("cases", i);
      Obj o((*s)[i], p);
      MarketCase mc_case;
      const json& arr = array_at(o.req("intensities"), o.at("intensities"));
      for (std::size_t k = 0; k < arr.size(); ++k) {
        mc_case.intensities.push_back(
            parse_quantity(arr[k], "intensity", index(o.at("intensities"), k)));
      }
      if (o.get("eta")) mc_case.eta = o.quantity("eta", "ratio");
      o.finish();
      c.cases.push_back(std::move(mc_case));
    }
  }
  if (const json* s = root.get("seller_counts")) {
    array_at(*s, "seller_counts");
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (!(*s)[i].is_number_unsigned() || (*s)[i].get<std::size_t>() == 0) {
        throw ConfigError(index("seller_counts", i), "expected a positive integer");
      }
      c.seller_counts.push_back((*s)[i].get<std::size_t>());
    }
  }
  if (const json* s = root.get("scenarios")) {
    array_at(*s, "scenarios");
    for (std::size_t i = 0; i < s->size(); ++i) {
      c.scenarios.push_back(parse_mc_scenario((*s)[i], index("scenarios", i), c.radio, i));
    }
  }
  if (const json* s = root.get("simulation")) {
    Obj o(*s, "simulation");
    c.trials = o.unsigned_int("trials", c.trials);
    c.seed = o.unsigned_int("seed", c.seed);
    c.region_radius = o.quantity("radius", "ratio", c.region_radius);
    c.threads = static_cast<unsigned>(o.unsigned_int("threads", 0));
    o.finish();
    require(c.trials > 0, "simulation.trials", "must be positive");
    require(c.region_radius > 0.0, "simulation.radius", "must be positive");
  }
  if (const json* s = root.get("output")) {
    Obj o(*s, "output");
    c.output = o.string("path", "");
    if (o.get("format")) {
      try {
        c.format = parse_format(o.string("format"));
      } catch (const ConfigError& e) {
        throw ConfigError("output.format", e.what());
      }
    }
    o.finish();
  }
  root.finish();

  // Per-kind requirements.
  using K = ExperimentKind;
  const bool needs_sweep = c.kind == K::CoverageSweep || c.kind == K::PowerSweep ||
                           c.kind == K::EpsilonSweep || c.kind == K::ArealPower ||
                           c.kind == K::FullClearing;
  if (needs_sweep) require(!c.sweep.empty(), "sweep", "missing required field");
  if (c.kind == K::CoverageSweep || c.kind == K::PowerSweep || c.kind == K::EpsilonSweep) {
    require(!c.series.empty(), "series", "missing required field");
  }
  for (std::size_t i = 0; i < c.series.size(); ++i) {
    const auto& s = c.series[i];
    if (s.purchase) require(!c.sellers.empty(), "sellers", "missing required field");
    if (s.seller_count) {
      require(*s.seller_count <= c.sellers.size(), index("series", i) + ".seller_count",
              "exceeds the number of sellers");
    }
    if (s.epsilon) {
      require(*s.epsilon > 0.0 && *s.epsilon < 1.0, index("series", i) + ".epsilon",
              "must lie in (0, 1)");
    }
  }
  if (c.kind == K::EpsilonSweep) {
    require(!c.sellers.empty(), "sellers", "missing required field");
    for (std::size_t i = 0; i < c.sweep.size(); ++i) {
      require(c.sweep[i] > 0.0 && c.sweep[i] < 1.0, index("sweep", i), "must lie in (0, 1)");
    }
  }
  if (c.kind == K::ArealPower || c.kind == K::MarketEquilibrium || c.kind == K::FullClearing) {
    require(doc.contains("market"), "market", "missing required field");
    require(!c.market_sellers.empty(), "market.sellers", "missing required field");
  }
  for (std::size_t i = 0; i < c.cases.size(); ++i) {
    require(c.cases[i].intensities.size() == c.market_sellers.size(),
            index("cases", i) + ".intensities", "needs one entry per market seller");
  }
  if (c.kind == K::FullClearing) {
    for (std::size_t i = 0; i < c.seller_counts.size(); ++i) {
      require(c.seller_counts[i] <= c.market_sellers.size(), index("seller_counts", i),
              "exceeds the number of market sellers");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig with_overrides(const ExperimentConfig& config, std::optional<std::uint64_t> seed,
                                std::optional<std::size_t> trials) {
  if (!seed && !trials) return config;
  json doc = config.source;
  if (seed) doc["simulation"]["seed"] = *seed;
  if (trials) doc["simulation"]["trials"] = *trials;
  return parse_config(doc);
}

}  // namespace infrashare::config
