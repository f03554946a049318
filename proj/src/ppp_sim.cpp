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

#include "infrashare/ppp_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "infrashare/errors.hpp"

namespace infrashare::sim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxResample = 1000;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t poisson_count(double mean, std::mt19937_64& rng) {
  if (mean <= 0.0) {
    return 0;
  }
  std::poisson_distribution<std::uint64_t> d(mean);
  return d(rng);
}

void append_operator(std::vector<Transmitter>& out, int op, double intensity, double activity,
                     const SimRegion& region, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  const std::uint64_t n = poisson_count(intensity * region.area(), rng);
  for (std::uint64_t i = 0; i < n; ++i) {
    Transmitter t;
    t.distance = region.radius * std::sqrt(unit(rng));
    t.op = op;
    t.gain = fading(rng);
    t.active = activity >= 1.0 || unit(rng) < activity;
    out.push_back(t);
  }
}

}  // namespace

void SimRegion::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ParameterError("simulation radius must be positive");
  }
}

double SimRegion::area() const { return std::numbers::pi * radius * radius; }

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

PointPattern sample_ppp(double intensity, const SimRegion& region, std::mt19937_64& rng) {
  region.validate();
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw ParameterError("PPP intensity must be non-negative");
  }
  PointPattern out;
  out.intensity = intensity;
  const std::uint64_t n = poisson_count(intensity * region.area(), rng);
  out.points.reserve(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = region.radius * std::sqrt(unit(rng));
    const double phi = kTwoPi * unit(rng);
    out.points.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return out;
}

PointPattern sample_ppp(double intensity, const SimRegion& region, std::uint64_t seed) {
  auto rng = trial_rng(seed, 0);
  return sample_ppp(intensity, region, rng);
}

std::vector<Transmitter> draw_realization(const SharingScenario& scenario,
                                          const SimRegion& region, std::mt19937_64& rng) {
  region.validate();
  const bool thin = scenario.assumption() == Assumption::FractionalActivity;
  const std::vector<double> w = scenario.activity_weights();
  std::vector<Transmitter> out;
  append_operator(out, 0, scenario.buyer_intensity(), thin ? w[0] : 1.0, region, rng);
  const auto& sellers = scenario.sellers();
  for (std::size_t k = 0; k < sellers.size(); ++k) {
    append_operator(out, static_cast<int>(k + 1), sellers[k].shared_intensity(),
                    thin ? w[k + 1] : 1.0, region, rng);
  }
  return out;
}

SinrSample evaluate(const std::vector<Transmitter>& bss, const RadioParams& radio,
                    double tail_interference) {
  SinrSample s;
  if (bss.empty()) {
    return s;
  }
  const auto serving = std::min_element(
      bss.begin(), bss.end(),
      [](const Transmitter& a, const Transmitter& b) { return a.distance < b.distance; });
  s.served = true;
  s.serving_distance = serving->distance;
  s.signal = radio.tx_power * serving->gain * std::pow(serving->distance, -radio.alpha);
  double interference = 0.0;
  for (auto it = bss.begin(); it != bss.end(); ++it) {
    if (it == serving || !it->active) {
      continue;
    }
    interference += it->gain * std::pow(it->distance, -radio.alpha);
    ++s.interferer_count;
  }
  s.interference = radio.tx_power * interference + tail_interference;
  const double denominator = s.interference + radio.noise_power;
  s.sinr = denominator > 0.0 ? s.signal / denominator : std::numeric_limits<double>::infinity();
  return s;
}

double far_field_interference(const SharingScenario& scenario, const RadioParams& radio,
                              const SimRegion& region) {
  if (!region.far_field_correction) {
    return 0.0;
  }
  return radio.tx_power * scenario.interference_intensity() * kTwoPi *
         std::pow(region.radius, 2.0 - radio.alpha) / (radio.alpha - 2.0);
}

SinrSample simulate_trial(const SharingScenario& scenario, const RadioParams& radio,
                          const SimRegion& region, std::mt19937_64& rng) {
  radio.validate();
  const double tail = far_field_interference(scenario, radio, region);
  auto bss = draw_realization(scenario, region, rng);
  for (int attempt = 0; bss.empty() && region.resample_empty && attempt < kMaxResample;
       ++attempt) {
    bss = draw_realization(scenario, region, rng);
  }
  return evaluate(bss, radio, tail);
}

SinrSample simulate_trial(const SharingScenario& scenario, const RadioParams& radio,
                          const SimRegion& region, std::uint64_t seed) {
  auto rng = trial_rng(seed, 0);
  return simulate_trial(scenario, radio, region, rng);
}

CoverageEstimate estimate_coverage(const SharingScenario& scenario, const RadioParams& radio,
                                   const SimRegion& region, std::uint64_t trials,
                                   std::uint64_t seed, unsigned threads) {
  if (trials == 0) {
    throw ParameterError("trials must be at least 1");
  }
  radio.validate();
  region.validate();
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::vector<std::uint64_t> covered(threads, 0);
  auto work = [&](unsigned worker) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = worker; i < trials; i += threads) {
      auto rng = trial_rng(seed, i);
      const SinrSample s = simulate_trial(scenario, radio, region, rng);
      hits += (s.served && s.sinr > radio.threshold) ? 1 : 0;
    }
    covered[worker] = hits;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(work, t);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  CoverageEstimate out;
  out.trials = trials;
  for (auto c : covered) {
    out.covered += c;
  }
  out.p_hat = static_cast<double>(out.covered) / static_cast<double>(trials);
  out.ci_halfwidth = 1.96 * std::sqrt(out.p_hat * (1.0 - out.p_hat) / static_cast<double>(trials));
  return out;
}

}  // namespace infrashare::sim
