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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eprlab/engine.hpp"

namespace eprlab {

enum class SettingsKind { none, pair, quad, list };

/*!
 * Parsed experiment configuration file.
 *
 * The file is a JSON object with optional sections `source`, `geometry`,
 * `lattice`, `model`, `run` and `settings`. Unknown keys are rejected and
 * every angle is a string with an explicit unit, e.g. "22.5 deg" or
 * "0.3927 rad".
 */
struct ExperimentConfig {
  ExperimentGeometry geometry;
  ModelSpec model1;
  ModelSpec model2;
  std::uint64_t events = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  SettingsKind settings_kind = SettingsKind::none;
  // pair: {alpha, beta}; quad: {a, a', b, b'}; list: any length.
  std::vector<double> settings;

  void validate() const;

  RunConfig run_config() const;
  SettingsQuad quad() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// "<number> deg" or "<number> rad" (whitespace optional) to radians.
// Throws ConfigError naming `field` on anything else.
double parse_angle(std::string_view text, const std::string& field);

// Radians as a unit-suffixed literal that parses back bit-exactly.
std::string format_angle(double radians);

// Throws ParseError (with line and column) for malformed JSON and
// ConfigError (with the field path) for invalid content.
ExperimentConfig parse_config(std::string_view text);

// As parse_config; unreadable files raise ParseError.
ExperimentConfig load_config(const std::filesystem::path& path);

// Normalized form that parse_config maps back to an equal config.
nlohmann::ordered_json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);

}  // namespace eprlab
