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


#ifndef INFRASHARE_CONFIG_HPP
#define INFRASHARE_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "infrashare/buyer.hpp"
#include "infrashare/market.hpp"
#include "infrashare/scenario.hpp"

/// JSON experiment configuration.
///
/// Quantities may be plain numbers (SI units, linear ratios) or strings with a
/// unit: "20 dB", "-150 dBm", "30 mW", "0.01 W". BS intensities are plain
/// numbers counting BSs per disk of radius 500 m, or strings such as
/// "1.2e-5 /m2".
namespace infrashare::config {

enum class ExperimentKind {
  CoverageSweep,
  PowerSweep,
  EpsilonSweep,
  ArealPower,
  MarketEquilibrium,
  FullClearing,
  McValidate,
};

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_kind(std::string_view s);

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view s);

/// One curve of a sweep. Unset fields fall back to the experiment defaults.
struct Series {
  std::string label;
  bool purchase = false;  ///< buy from sellers (greedy) or use own network
  std::optional<double> epsilon;
  std::optional<double> buyer_intensity;   ///< per m^2
  std::optional<double> seller_intensity;  ///< per m^2, applied to every seller
  std::optional<std::size_t> seller_count;  ///< first n sellers
  std::optional<Assumption> assumption;
};

/// One sellers' game: per-seller capacities and optionally another eta.
struct MarketCase {
  std::vector<double> intensities;  ///< per m^2, one per market seller
  std::optional<double> eta;
};

struct McScenario {
  std::string label;
  RadioParams radio;
  double buyer_intensity = 0.0;  ///< per m^2
  std::vector<SharedSeller> sellers;
  Assumption assumption = Assumption::AllBsServe;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::CoverageSweep;
  std::string name;

  RadioParams radio;
  tradeoff::QosTarget qos;
  Assumption assumption = Assumption::FractionalActivity;
  double buyer_intensity = 0.0;  ///< per m^2
  buyer::IntensityConvention convention = buyer::IntensityConvention::Effective;
  std::vector<buyer::SellerOffer> sellers;

  market::PriceCurve price_curve;
  std::vector<market::SellerProfile> market_sellers;

  /// Sweep abscissa in SI units: intensities per m^2, epsilon, or watts.
  std::vector<double> sweep;
  std::vector<Series> series;
  std::vector<MarketCase> cases;
  std::vector<std::size_t> seller_counts;
  std::vector<McScenario> scenarios;

  std::size_t trials = 20000;
  std::uint64_t seed = 1;
  double region_radius = 2500.0;  ///< metres
  unsigned threads = 0;

  std::string output;
  std::optional<OutputFormat> format;

  /// The document this config was loaded from, after overrides. Hashed into
  /// result metadata.
  nlohmann::json source;
};

/// Parses a physical quantity. `unit_kind` is "power" (W), "ratio" (linear)
/// or "intensity" (per m^2). Throws ConfigError naming `path`.
double parse_quantity(const nlohmann::json& v, std::string_view unit_kind,
                      const std::string& path);

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// Re-parses `config.source` with seed/trials replaced.
ExperimentConfig with_overrides(const ExperimentConfig& config, std::optional<std::uint64_t> seed,
                                std::optional<std::size_t> trials);

}  // namespace infrashare::config

#endif  // INFRASHARE_CONFIG_HPP
