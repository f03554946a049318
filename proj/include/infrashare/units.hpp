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

#ifndef INFRASHARE_UNITS_HPP
#define INFRASHARE_UNITS_HPP

#include <cmath>
#include <numbers>

// Everything inside the library is SI: watts, meters, base stations per m^2.
// Conversions below are meant for the configuration and output layers only.

namespace infrashare::units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

/// Radius of the reference disk that intensities are quoted against.
inline constexpr double kReferenceRadius = 500.0;

/// Area of a disk, m^2.
inline double disk_area(double radius) { return std::numbers::pi * radius * radius; }

/// "n base stations per disk of radius r" -> base stations per m^2.
inline double per_disk_to_per_m2(double count, double radius = kReferenceRadius) {
  return count / disk_area(radius);
}

inline double per_m2_to_per_disk(double intensity, double radius = kReferenceRadius) {
  return intensity * disk_area(radius);
}

}  // namespace infrashare::units

#endif  // INFRASHARE_UNITS_HPP
