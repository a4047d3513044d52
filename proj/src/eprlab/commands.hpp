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

// Orchestration behind the CLI subcommands. Each function computes its
// output document; writing files is left to the caller.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eprlab/config.hpp"
#include "eprlab/inequalities.hpp"
#include "eprlab/report.hpp"

namespace eprlab {

// $EPRLAB_OUTPUT_DIR if set and non-empty, else the working directory.
std::filesystem::path default_output_dir();

// Pair settings run one coincidence run; quad settings run a full quad
// (the entangled reference when the model is qm-reference).
Json simulate(const ExperimentConfig& config);

// Residual for the configured quad (or `quad` when given). The quadrature
// oracle value is attached whenever the geometry allows one.
Json residual(const ExperimentConfig& config,
              std::optional<SettingsQuad> quad = std::nullopt);

struct HistOutput {
  std::vector<std::pair<double, ImpactHistogram>> histograms;
  // Present when at least two settings were given.
  std::optional<Condition10Report> condition10;
};

// Histograms of device-1 reduced impacts, config.events per setting.
HistOutput hist(const ExperimentConfig& config,
                const std::vector<double>& settings, int bins = 32);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOutcome {
  std::vector<VerifyCheck> checks;
  bool pass() const;
};

/*!
 * Built-in self-test: deterministic-strategy enumeration, Monte Carlo vs
 * quadrature for the impact-independent Malus models, and impact-distribution
 * discrimination on a broad and a point source.
 *
 * When a report fixture is given it must be internally consistent and its
 * recorded counts must be reproduced by re-running its echoed config.
 * A missing or unreadable fixture throws IoError.
 */
VerifyOutcome verify(const std::optional<std::filesystem::path>& fixture,
                     unsigned threads = 1);

// Consistency and reproduction checks for one saved report.
std::vector<VerifyCheck> verify_report(const nlohmann::json& report,
                                       unsigned threads = 1);

}  // namespace eprlab
