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

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "eprlab/engine.hpp"
#include "eprlab/statistics.hpp"

namespace eprlab {

// A combination of estimates compared against a local-realist bound.
struct Statistic {
  double value = 0;
  double se = 0;
  double bound = 0;

  // (value - bound) / se; +-inf when se is zero and value is off the bound.
  double excess_in_se() const;
};

// p1 + p2 + p3 - p4 against bound 2; SEs added in quadrature.
Statistic chsh(const std::array<Estimate, 4>& p);

// paper:    P(a,b) - P(a,b') + P(a',b) + P(a',b') - P1(a)  - P2(b)
// standard: P(a,b) - P(a,b') + P(a',b) + P(a',b') - P1(a') - P2(b)
enum class ChConvention { paper, standard };

std::string_view to_string(ChConvention c);
ChConvention ch_convention_from_string(std::string_view text);

Statistic ch_statistic(const std::array<Estimate, 4>& coincidences,
                       Estimate p1_alpha, Estimate p1_alpha_prime,
                       Estimate p2_beta, ChConvention convention);

// Uses the quad's joint probabilities and its singles runs. Throws
// AnalysisError if the runs do not share one configuration.
Statistic ch_statistic(const QuadResult& quad, ChConvention convention);

struct InequalityReport {
  Statistic s_joint;
  Statistic s_equal;
  Statistic s_corr;  // 2 s_equal - 2, bound 2
  Statistic ch_paper;
  Statistic ch_standard;
};

InequalityReport analyze(const QuadResult& quad);

struct ResidualEstimate {
  double value = 0;
  double se = 0;
  std::uint64_t events = 0;
};

/*!
 * Monte Carlo estimate of the residual expression of Bell's derivation.
 *
 * Each event supplies one hidden-variable draw shared by both terms
 * (common random numbers). Device 1 enters through its impact reduced
 * under alpha; device 2 through its impact reduced under beta in the
 * first term and under beta' in the second:
 *
 *   p1(a, b1_a) p1(a', b1_a) [p2(b, b2_b) p2(b', b2_b)
 *                             - p2(b, b2_b') p2(b', b2_b')]
 *
 * For impact-independent models the bracket is identically zero.
 * Streams are keyed by (seed, config.label); config.events is ignored.
 */
ResidualEstimate bell_residual(const RunConfig& config,
                               const SettingsQuad& quad, std::uint64_t events,
                               std::uint64_t seed);

struct PairwiseTest {
  double gamma_a = 0;
  double gamma_b = 0;
  stats::TestResult chi_squared;
  stats::TestResult ks_x;
  stats::TestResult ks_y;
  bool pass = false;
};

struct Condition10Report {
  double significance = 1e-3;
  int bins = 16;
  std::uint64_t events = 0;
  std::vector<PairwiseTest> pairs;
  bool pass = false;
};

/*!
 * Tests whether device-1 effective impact distributions are the same at
 * every listed setting: pairwise two-sample chi-squared on a bins x bins
 * histogram plus two-sample KS on each component. A pair passes when all
 * three p-values are at least `significance`.
 *
 * Each setting draws from its own substream. Throws StatisticsError for
 * fewer than two settings or fewer than kMinHistogramEvents events.
 */
Condition10Report condition10_test(const ExperimentGeometry& geometry,
                                   const std::vector<double>& settings,
                                   std::uint64_t events, std::uint64_t seed,
                                   double significance = 1e-3, int bins = 16);

enum class StatisticChoice { s_joint, s_equal, s_corr, ch_standard, ch_paper };

std::string_view to_string(StatisticChoice s);
StatisticChoice statistic_choice_from_string(std::string_view text);

enum class SearchMethod { grid, coordinate_descent };

std::string_view to_string(SearchMethod m);
SearchMethod search_method_from_string(std::string_view text);

struct ScanOptions {
  StatisticChoice statistic = StatisticChoice::s_equal;
  SearchMethod method = SearchMethod::grid;
  double grid_step = kPi / 16;
  // Maximum number of quad evaluations, grid and refinement together.
  std::uint64_t budget = 1'000'000;
  // Closed forms / quadrature instead of sampling.
  bool exact = false;
  std::uint64_t events_per_pair = 100'000;
};

struct ScanRow {
  SettingsQuad quad;
  Statistic statistic;
};

struct ScanResult {
  SettingsQuad best_quad;
  Statistic best;
  // Sorted lexicographically by (alpha, alpha', beta, beta').
  std::vector<ScanRow> rows;
  std::uint64_t evaluations = 0;
};

/*!
 * Searches settings quads for the largest value of a statistic.
 *
 * The grid covers [0, pi) in steps of grid_step and visits quads with
 * alpha != alpha' and beta != beta' in lexicographic order until the budget
 * is spent. Coordinate descent then refines the best grid quad with
 * halving steps. Per-pair probabilities are cached, and every Monte Carlo
 * pair draws from a substream labelled by its angles, so results depend
 * only on the seed and the options.
 */
ScanResult maximize_settings(const RunConfig& config,
                             const ScanOptions& options);

}  // namespace eprlab
