// Copyright 2026 The eprlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eprlab {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double x = 0;
  double y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0;
  double y = 0;
  double z = 0;

  friend bool operator==(const Vec3&, const Vec3&) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Error hierarchy. The C API and the CLI map each category onto an exit
// status, so every throw site picks the category that names the failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (config files, angle literals).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input whose values violate a contract. `field` is a dotted path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

// Not enough data for a requested statistic, or too few settings.
class StatisticsError : public Error {
 public:
  using Error::Error;
};

// Inputs to an inequality statistic came from incompatible runs.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

// An oracle was asked about a model it cannot evaluate exactly.
class OracleError : public Error {
 public:
  using Error::Error;
};

// A requested discretization or allocation is too large.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eprlab
