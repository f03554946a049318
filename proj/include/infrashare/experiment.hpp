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


#ifndef INFRASHARE_EXPERIMENT_HPP
#define INFRASHARE_EXPERIMENT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "infrashare/config.hpp"
#include "infrashare/result_table.hpp"

/// Experiment orchestration. Intensity columns are BS per disk of radius
/// 500 m; powers are watts unless the column name says dBm.
///
/// Columns per kind:
///   coverage-sweep      lambda0, <series>[, <series>_bought], inv_beta
///   power-sweep         tx_power_dbm, <series>..., inv_beta
///   epsilon-sweep       epsilon, target, own_coverage,
///                       <series>_fraction, <series>_coverage, <series>_feasible
///   areal-power         lambda, S_<id>, p_<id> per market seller
///   market-equilibrium  case, eta, lambda_<id>..., y_<id>..., y_total, q_star,
///                       iterations, converged, residual, stable
///   full-clearing       sellers, lambda0, y_total, q_star, bought, cost,
///                       coverage, feasible, own_coverage
///   mc-validate         scenario, analytic, approx, mc, ci, pass, trials
namespace infrashare::experiment {

ResultTable run_experiment(const config::ExperimentConfig& config);

/// Monte Carlo cross-check of the config's base scenario: own network and,
/// when sellers are present, full sharing under both assumptions. An
/// mc-validate config runs its own scenario list.
ResultTable run_validation(const config::ExperimentConfig& config);

std::vector<std::string> preset_names();

/// $INFRASHARE_PRESET_DIR/<name>.json, else the presets/ directory of the
/// source tree.
std::string preset_path(std::string_view name);

config::ExperimentConfig load_preset(std::string_view name);

}  // namespace infrashare::experiment

#endif  // INFRASHARE_EXPERIMENT_HPP
