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

// Exact verifiers that never touch the random streams: strategy enumeration
// for the CHSH bound and deterministic integration over the hidden
// variables.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "eprlab/detection_models.hpp"
#include "eprlab/engine.hpp"
#include "eprlab/geometry.hpp"

namespace eprlab::oracle {

// Which per-pair probability the CHSH combination is applied to.
enum class StatisticForm { joint, equal_outcome };

// (a, a', b, b') outcome bits of a deterministic local strategy.
using Strategy = std::array<int, 4>;

struct EnumerationResult {
  int maximum = 0;
  int minimum = 0;
  std::vector<Strategy> maximizers;
  std::vector<Strategy> minimizers;
};

// All 16 deterministic strategies, evaluated exactly.
EnumerationResult enumerate_deterministic_max(StatisticForm form);

struct QuadraturePair {
  double joint = 0;     // P(++)
  double equal = 0;     // P(++) + P(--)
  double singles1 = 0;  // P1(alpha)
  double singles2 = 0;  // P2(beta)
};

inline constexpr double kQuadratureTolerance = 1e-10;

/*!
 * Lambda-average of p1(alpha) p2(beta) (and companions) for two
 * impact-independent models, by composite midpoint rule with Richardson
 * extrapolation on each interval between the models' jump points.
 *
 * Throws OracleError when either model uses the impact parameter.
 */
QuadraturePair quadrature_coincidence(const DetectionModel& model1,
                                      const DetectionModel& model2,
                                      double alpha, double beta,
                                      double tolerance = kQuadratureTolerance);

// Closed-form entangled-pair values at one setting pair.
QuadraturePair qm_reference_probabilities(double alpha, double beta);

/*!
 * Residual term added in Bell's derivation, integrated over lambda for a
 * fixed emission point and direction (point source, zero cone):
 *
 *   <p1(a, b1_a) p1(a', b1_a) [p2(b, b2_b) p2(b', b2_b)
 *                              - p2(b, b2_b') p2(b', b2_b')]>_lambda
 *
 * Throws OracleError unless the source is a point with zero cone.
 */
double quadrature_residual(const ExperimentGeometry& geometry,
                           const DetectionModel& model1,
                           const DetectionModel& model2,
                           const SettingsQuad& quad,
                           double tolerance = kQuadratureTolerance);

struct DiscretizedBound {
  double s_joint = 0;
  double s_equal = 0;
  std::array<double, 4> joint{};
  std::array<double, 4> equal{};
  std::uint64_t cells = 0;
};

inline constexpr std::uint64_t kMaxDiscretizedCells = 10'000'000;

/*!
 * Exact CHSH sums over a discretized product measure: lambda_bins midpoints
 * on [0, pi) times a lattice_bins x lattice_bins grid of emission points
 * (one lattice cell for a point source, +-4 sigma for a gaussian, the
 * bounding square of a disc) with weights from the source density. Rays
 * travel along the axis.
 *
 * Throws ConfigError for fewer than 2 bins, ResourceError beyond
 * kMaxDiscretizedCells.
 */
DiscretizedBound discretized_bound_check(const ExperimentGeometry& geometry,
                                         const DetectionModel& model1,
                                         const DetectionModel& model2,
                                         int lattice_bins, int lambda_bins,
                                         const SettingsQuad& quad);

}  // namespace eprlab::oracle
