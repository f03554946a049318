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

#ifndef INFRASHARE_PPP_SIM_HPP
#define INFRASHARE_PPP_SIM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "infrashare/scenario.hpp"

/// Monte Carlo estimation of SINR coverage over Poisson BS deployments.
///
/// The typical user sits at the origin of a disk. Each operator's BSs are an
/// independent PPP restricted to the disk, all links see unit-mean exponential
/// power gains and the user attaches to the nearest associable BS.
namespace infrashare::sim {

struct SimRegion {
  double radius = 2500.0;  ///< meters
  /// Add the mean interference from outside the disk,
  /// p lambda_I 2 pi R^{2-alpha} / (alpha - 2).
  bool far_field_correction = true;
  /// Redraw realizations with no associable BS instead of scoring an outage.
  bool resample_empty = false;

  void validate() const;
  double area() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PointPattern {
  std::vector<Point> points;
  double intensity = 0.0;  ///< per m^2
};

/// One BS as seen from the typical user.
struct Transmitter {
  double distance = 0.0;  ///< meters
  int op = 0;             ///< 0 = buyer, k = k-th seller in scenario order
  double gain = 1.0;      ///< fading power gain towards the user
  bool active = true;     ///< transmits on the buyer's band (interferer if not serving)
};

struct SinrSample {
  double serving_distance = 0.0;
  double signal = 0.0;        ///< watts
  double interference = 0.0;  ///< watts
  double sinr = 0.0;
  bool served = false;        ///< false when no BS was associable
  std::size_t interferer_count = 0;
};

struct CoverageEstimate {
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;  ///< 1.96 sqrt(p (1 - p) / n)
  std::uint64_t trials = 0;
  std::uint64_t covered = 0;
};

/// Independent generator for trial `trial` of run `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Homogeneous PPP on the disk. Throws ParameterError on negative intensity.
PointPattern sample_ppp(double intensity, const SimRegion& region, std::uint64_t seed);
PointPattern sample_ppp(double intensity, const SimRegion& region, std::mt19937_64& rng);

/// Draws every associable BS of the scenario with its gain and activity flag.
/// Under FractionalActivity a BS of operator k is active with probability w_k;
/// otherwise all BSs are active.
std::vector<Transmitter> draw_realization(const SharingScenario& scenario,
                                          const SimRegion& region, std::mt19937_64& rng);

/// SINR at the origin given a realization: serve from the nearest BS, sum the
/// active others as interference and add `tail_interference`.
SinrSample evaluate(const std::vector<Transmitter>& bss, const RadioParams& radio,
                    double tail_interference = 0.0);

/// Mean interference from the scenario's interferers beyond the disk edge.
double far_field_interference(const SharingScenario& scenario, const RadioParams& radio,
                              const SimRegion& region);

SinrSample simulate_trial(const SharingScenario& scenario, const RadioParams& radio,
                          const SimRegion& region, std::mt19937_64& rng);
SinrSample simulate_trial(const SharingScenario& scenario, const RadioParams& radio,
                          const SimRegion& region, std::uint64_t seed);

/// Coverage over `trials` independent trials. Result depends only on the seed,
/// not on `threads` (0 picks the hardware concurrency).
CoverageEstimate estimate_coverage(const SharingScenario& scenario, const RadioParams& radio,
                                   const SimRegion& region, std::uint64_t trials,
                                   std::uint64_t seed, unsigned threads = 0);

}  // namespace infrashare::sim

#endif  // INFRASHARE_PPP_SIM_HPP
