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
#include <utility>

#include "eprlab/detection_models.hpp"
#include "eprlab/geometry.hpp"
#include "eprlab/random.hpp"

namespace eprlab {

struct Estimate {
  double value = 0;
  double se = 0;
};

// k successes out of n Bernoulli trials, SE = sqrt(p (1 - p) / n).
Estimate binomial_estimate(std::uint64_t k, std::uint64_t n);

/*!
 * One coincidence run: geometry, a model per device, the two settings and
 * the stream identity.
 *
 * `label` selects the substream of `seed`; run_quad and the settings scan
 * derive labels of their own from it.
 */
struct RunConfig {
  ExperimentGeometry geometry;
  ModelSpec model1;
  ModelSpec model2;
  double alpha = 0;
  double beta = 0;
  std::uint64_t events = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t label = 0;
  unsigned threads = 1;

  void validate() const;

  // Hash of everything except settings, seed, label, events and threads.
  // Runs that may be combined into one inequality share it.
  std::uint64_t fingerprint() const;

  bool is_qm_reference() const {
    return model1.kind == ModelKind::qm_reference ||
           model2.kind == ModelKind::qm_reference;
  }
};

struct CoincidenceResult {
  double alpha = 0;
  double beta = 0;
  std::uint64_t seed = 0;
  std::uint64_t label = 0;
  std::uint64_t fingerprint = 0;

  std::uint64_t events = 0;
  std::uint64_t n1_plus = 0;
  std::uint64_t n2_plus = 0;
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t clamp_events = 0;

  Estimate singles1() const { return binomial_estimate(n1_plus, events); }
  Estimate singles2() const { return binomial_estimate(n2_plus, events); }
  Estimate joint() const { return binomial_estimate(n_pp, events); }
  Estimate equal() const { return binomial_estimate(n_pp + n_mm, events); }

  friend bool operator==(const CoincidenceResult&,
                         const CoincidenceResult&) = default;
};

// A run in which only one device is evaluated.
struct SinglesResult {
  int device = 1;
  double setting = 0;
  std::uint64_t seed = 0;
  std::uint64_t label = 0;
  std::uint64_t fingerprint = 0;
  std::uint64_t events = 0;
  std::uint64_t n_plus = 0;
  std::uint64_t clamp_events = 0;

  Estimate estimate() const { return binomial_estimate(n_plus, events); }

  friend bool operator==(const SinglesResult&, const SinglesResult&) = default;
};

struct SettingsQuad {
  double alpha = 0;
  double alpha_prime = 0;
  double beta = 0;
  double beta_prime = 0;

  void validate() const;

  // (alpha, beta), (alpha, beta'), (alpha', beta), (alpha', beta').
  std::array<std::pair<double, double>, 4> pairs() const;

  friend bool operator==(const SettingsQuad&, const SettingsQuad&) = default;
};

struct QuadResult {
  SettingsQuad quad;
  // Ordered as SettingsQuad::pairs().
  std::array<CoincidenceResult, 4> pairs;
  // Device 1 at alpha, alpha'; device 2 at beta, beta'.
  std::array<SinglesResult, 2> singles1;
  std::array<SinglesResult, 2> singles2;

  friend bool operator==(const QuadResult&, const QuadResult&) = default;
};

// Everything that happened in one simulated event.
struct EventRecord {
  HiddenVariableSample sample;
  EffectiveImpactParameter impact1;
  EffectiveImpactParameter impact2;
  double p1 = 0;
  double p2 = 0;
  bool clamped = false;
  bool outcome1 = false;
  bool outcome2 = false;
};

/*!
 * Per-event simulation of a local hidden-variable run.
 *
 * Samples the hidden variables, propagates, reduces into each device's
 * grid, evaluates both local models and draws two independent Bernoulli
 * outcomes. The coincidence probability factorizes by construction.
 */
class CoincidenceKernel {
 public:
  explicit CoincidenceKernel(const RunConfig& config);

  EventRecord operator()(std::uint64_t event) const;

 private:
  SourceDistribution source_;
  ArmGeometry arms_;
  GridFrame frame1_;
  GridFrame frame2_;
  ModelPtr model1_;
  ModelPtr model2_;
  double alpha_;
  double beta_;
  StreamKey key_;
};

// Throws ConfigError for invalid configs and GeometryError (with the event
// index) if an event cannot be propagated.
CoincidenceResult run_coincidence(const RunConfig& config);

// Only `device` (1 or 2) is evaluated, at `setting`, on config.label.
SinglesResult run_singles(const RunConfig& config, int device, double setting);

// Four coincidence runs plus four singles runs on disjoint substreams
// derived from base.label.
QuadResult run_quad(const RunConfig& base, const SettingsQuad& quad,
                    std::uint64_t events_per_pair);

// Entangled-pair reference (nonlocal): per event the joint outcome is drawn
// from P(++) = P(--) = cos^2(a - b) / 2, P(+-) = P(-+) = sin^2(a - b) / 2.
CoincidenceResult run_qm_pair(double alpha, double beta, std::uint64_t events,
                              StreamKey key, unsigned threads = 1);

QuadResult run_qm_reference(const SettingsQuad& quad, std::uint64_t events,
                            std::uint64_t seed, unsigned threads = 1,
                            std::uint64_t label = 0);

// Substream label of member k (0..7) of a quad derived from base_label.
std::uint64_t quad_label(std::uint64_t base_label, unsigned member);

}  // namespace eprlab
