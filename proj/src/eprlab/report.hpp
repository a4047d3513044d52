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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eprlab/config.hpp"
#include "eprlab/engine.hpp"
#include "eprlab/inequalities.hpp"

namespace eprlab {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "eprlab.report/1";

Json counts_json(const CoincidenceResult& r);
Json counts_json(const SinglesResult& r);
Json estimates_json(const CoincidenceResult& r);
Json estimates_json(const SinglesResult& r);
Json statistic_json(const Statistic& s);
Json inequality_json(const InequalityReport& r);
Json condition10_json(const Condition10Report& r);

// Report of a single coincidence run.
Json coincidence_report(const ExperimentConfig& config,
                        const CoincidenceResult& result);

// Report of a quad: four pairs, four singles runs, inequality statistics.
Json quad_report(const ExperimentConfig& config, const QuadResult& result);

Json residual_report(const ExperimentConfig& config, const SettingsQuad& quad,
                     const ResidualEstimate& estimate,
                     std::optional<double> oracle_value);

// Columns: bin_x_center,bin_y_center,frequency.
std::string histogram_csv(const ImpactHistogram& h);

// Columns: alpha,alpha_prime,beta,beta_prime,statistic,value,se (radians).
std::string scan_csv(const ScanResult& scan, StatisticChoice statistic);

// One row per coincidence run.
std::string summary_csv(const QuadResult& result);

// Writes `content` to a sibling temporary file, then renames it over
// `path`. Throws IoError on failure; `path` is untouched in that case.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace eprlab
