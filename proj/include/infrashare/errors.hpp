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

#ifndef INFRASHARE_ERRORS_HPP
#define INFRASHARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace infrashare {

/// A model parameter violates its documented precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested model variant exists as a tag but has no implementation.
class UnimplementedModel : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The QoS target lies above what power control alone can reach.
///
/// `bound()` is the saturation ceiling on coverage (1/beta, or 1/beta' when
/// association and interference are decoupled), so callers can report the
/// best attainable value.
class Infeasible : public std::runtime_error {
 public:
  Infeasible(const std::string& what, double bound)
      : std::runtime_error(what), bound_(bound) {}

  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

/// A configuration document is malformed. `path()` names the offending field,
/// e.g. "sellers[2].price".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace infrashare

#endif  // INFRASHARE_ERRORS_HPP
