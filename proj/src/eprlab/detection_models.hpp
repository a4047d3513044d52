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

#include <memory>
#include <string_view>
#include <vector>

#include "eprlab/geometry.hpp"
#include "eprlab/hidden_variables.hpp"

namespace eprlab {

enum class RadialProfile { constant, linear, gaussian };

std::string_view to_string(RadialProfile profile);
RadialProfile radial_profile_from_string(std::string_view text);

// g(r): constant 1, min(r / scale, 1), or exp(-r^2 / (2 scale^2)).
struct RadialShape {
  RadialProfile profile = RadialProfile::constant;
  double scale = 0.25;

  double operator()(double r) const;

  friend bool operator==(const RadialShape&, const RadialShape&) = default;
};

struct Evaluation {
  double probability = 0;
  // The unclamped value fell outside [0, 1].
  bool clamped = false;
};

/*!
 * Local transmission probability of one polarizer.
 *
 * Implementations are immutable and pure, so one instance may be shared by
 * any number of worker threads.
 */
class DetectionModel {
 public:
  virtual ~DetectionModel() = default;

  virtual Evaluation evaluate(PolarizationState polarization,
                              EffectiveImpactParameter impact,
                              double gamma) const = 0;

  double probability(PolarizationState polarization,
                     EffectiveImpactParameter impact, double gamma) const {
    return evaluate(polarization, impact, gamma).probability;
  }

  virtual bool uses_impact_parameter() const = 0;
  virtual bool uses_polarization_orientation() const = 0;

  // Values of lambda in [0, pi) where the output jumps at this setting.
  // Used by quadrature to split the integration range.
  virtual std::vector<double> lambda_breakpoints(double /*gamma*/) const {
    return {};
  }

  virtual std::string_view name() const = 0;
};

using ModelPtr = std::shared_ptr<const DetectionModel>;

enum class ModelKind {
  malus_probabilistic,
  malus_deterministic,
  impact_modulated,
  scalar_particle,
  // Not a DetectionModel: selects the entangled-pair reference sampler.
  qm_reference,
};

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view text);

// Value description of a model, as it appears in a run configuration.
// epsilon is used by impact-modulated, amplitude by scalar-particle.
struct ModelSpec {
  ModelKind kind = ModelKind::malus_probabilistic;
  double epsilon = 0;
  double amplitude = 1;
  RadialShape shape;

  void validate(const std::string& field) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Throws ConfigError for qm_reference or out-of-range parameters.
ModelPtr make_model(const ModelSpec& spec);

class MalusProbabilistic final : public DetectionModel {
 public:
  Evaluation evaluate(PolarizationState, EffectiveImpactParameter,
                      double gamma) const override;
  bool uses_impact_parameter() const override { return false; }
  bool uses_polarization_orientation() const override { return true; }
  std::string_view name() const override { return "malus-probabilistic"; }
};

class MalusDeterministic final : public DetectionModel {
 public:
  Evaluation evaluate(PolarizationState, EffectiveImpactParameter,
                      double gamma) const override;
  bool uses_impact_parameter() const override { return false; }
  bool uses_polarization_orientation() const override { return true; }
  std::vector<double> lambda_breakpoints(double gamma) const override;
  std::string_view name() const override { return "malus-deterministic"; }
};

// cos^2(lambda - gamma) + epsilon cos(2 (phi_b - lambda)) g(|b|), clamped.
// phi_b is the orientation of b in the grid frame of the device.
class ImpactModulated final : public DetectionModel {
 public:
  ImpactModulated(double epsilon, RadialShape shape);

  Evaluation evaluate(PolarizationState, EffectiveImpactParameter,
                      double gamma) const override;
  bool uses_impact_parameter() const override { return epsilon_ != 0; }
  bool uses_polarization_orientation() const override { return true; }
  std::string_view name() const override { return "impact-modulated"; }

 private:
  double epsilon_;
  RadialShape shape_;
};

// amplitude * g(|b|): a device that ignores polarization and setting.
class ScalarParticle final : public DetectionModel {
 public:
  ScalarParticle(double amplitude, RadialShape shape);

  Evaluation evaluate(PolarizationState, EffectiveImpactParameter,
                      double gamma) const override;
  bool uses_impact_parameter() const override {
    return shape_.profile != RadialProfile::constant;
  }
  bool uses_polarization_orientation() const override { return false; }
  std::string_view name() const override { return "scalar-particle"; }

 private:
  double amplitude_;
  RadialShape shape_;
};

}  // namespace eprlab
