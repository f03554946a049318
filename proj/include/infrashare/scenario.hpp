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

#ifndef INFRASHARE_SCENARIO_HPP
#define INFRASHARE_SCENARIO_HPP

#include <limits>
#include <string_view>
#include <vector>

namespace infrashare {

/// How much of a shared network interferes with the buyer's users.
enum class Assumption {
  /// Every shared BS serves some buyer user: interferers = association set.
  AllBsServe,
  /// Only an activity-weighted fraction of each operator's BSs is active on
  /// the buyer's spectrum.
  FractionalActivity,
};

enum class Fading {
  Rayleigh,
  /// Tag only; coverage formulas for it are not implemented.
  Nakagami,
};

std::string_view to_string(Assumption a);
std::string_view to_string(Fading f);

/// Link-level parameters of the buyer's downlink. All values are SI/linear.
struct RadioParams {
  double threshold = 1.0;     ///< SINR threshold T (linear ratio)
  double alpha = 4.0;         ///< path-loss exponent
  double noise_power = 0.0;   ///< sigma^2, watts
  double tx_power = 1.0;      ///< p, watts
  double max_power = std::numeric_limits<double>::infinity();  ///< p_max, watts
  Fading fading = Fading::Rayleigh;

  /// Throws ParameterError unless alpha > 2, T > 0, sigma^2 >= 0 and
  /// 0 < p <= p_max.
  void validate() const;
};

/// One operator's BS deployment: an id and its intensity in BSs per m^2.
struct OperatorProfile {
  int id = 0;
  double intensity = 0.0;
};

/// A seller in a sharing arrangement and the fraction x_k of its BSs the buyer
/// may associate with.
struct SharedSeller {
  OperatorProfile op;
  double fraction = 1.0;

  double shared_intensity() const { return op.intensity * fraction; }
};

/// The buyer's deployment plus the sellers it shares with.
///
/// Association intensity: lambda_A = lambda_0 + sum_k lambda_k x_k.
/// Interference intensity: lambda_I = lambda_A under AllBsServe, or
/// sum_k w_k lambda_k x_k with activity w_k = lambda_k x_k / lambda_A under
/// FractionalActivity (the buyer's own network counts as k = 0 with x_0 = 1).
class SharingScenario {
 public:
  SharingScenario() = default;
  SharingScenario(double buyer_intensity, std::vector<SharedSeller> sellers,
                  Assumption assumption);

  /// A buyer using only its own network.
  static SharingScenario own_network(double buyer_intensity,
                                     Assumption assumption = Assumption::AllBsServe);

  double buyer_intensity() const { return buyer_intensity_; }
  const std::vector<SharedSeller>& sellers() const { return sellers_; }
  Assumption assumption() const { return assumption_; }

  double association_intensity() const;
  double interference_intensity() const;

  /// w_0 (buyer) followed by w_k for each seller; sums to one when
  /// lambda_A > 0, all zero otherwise.
  std::vector<double> activity_weights() const;

  /// Same scenario with a different sharing assumption.
  SharingScenario with_assumption(Assumption assumption) const;

 private:
  double buyer_intensity_ = 0.0;
  std::vector<SharedSeller> sellers_;
  Assumption assumption_ = Assumption::AllBsServe;
};

}  // namespace infrashare

#endif  // INFRASHARE_SCENARIO_HPP
