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

#include "eprlab/detection_models.hpp"

#include <cmath>
#include <string>

namespace eprlab {
namespace {

Evaluation clamp_unit(double p) {
  if (std::isnan(p)) return {0, true};
  if (p < 0) return {0, true};
  if (p > 1) return {1, true};
  return {p, false};
}

inline double cos2(double x) {
  const double c = std::cos(x);
  return c * c;
}

// x mod pi into [0, pi).
double wrap_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r = 0;
  return r;
}

}  // namespace

std::string_view to_string(RadialProfile profile) {
  switch (profile) {
    case RadialProfile::constant:
      return "constant";
    case RadialProfile::linear:
      return "linear";
    case RadialProfile::gaussian:
      return "gaussian";
  }
  return "?";
}

RadialProfile radial_profile_from_string(std::string_view text) {
  if (text == "constant") return RadialProfile::constant;
  if (text == "linear") return RadialProfile::linear;
  if (text == "gaussian") return RadialProfile::gaussian;
  throw ConfigError("profile",
                    "unknown radial profile '" + std::string(text) + "'");
}

double RadialShape::operator()(double r) const {
  switch (profile) {
    case RadialProfile::constant:
      return 1;
    case RadialProfile::linear:
      return std::min(r / scale, 1.0);
    case RadialProfile::gaussian:
      return std::exp(-r * r / (2 * scale * scale));
  }
  return 1;
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::malus_probabilistic:
      return "malus-probabilistic";
    case ModelKind::malus_deterministic:
      return "malus-deterministic";
    case ModelKind::impact_modulated:
      return "impact-modulated";
    case ModelKind::scalar_particle:
      return "scalar-particle";
    case ModelKind::qm_reference:
      return "qm-reference";
  }
  return "?";
}

ModelKind model_kind_from_string(std::string_view text) {
  for (auto kind :
       {ModelKind::malus_probabilistic, ModelKind::malus_deterministic,
        ModelKind::impact_modulated, ModelKind::scalar_particle,
        ModelKind::qm_reference}) {
    if (to_string(kind) == text) return kind;
  }
  throw ConfigError("model.kind", "unknown model '" + std::string(text) + "'");
}

void ModelSpec::validate(const std::string& field) const {
  if (!(epsilon >= 0 && epsilon <= 1)) {
    throw ConfigError(field + ".epsilon", "must lie in [0, 1]");
  }
  if (!(amplitude >= 0 && amplitude <= 1)) {
    throw ConfigError(field + ".amplitude", "must lie in [0, 1]");
  }
  if (!(std::isfinite(shape.scale) && shape.scale > 0)) {
    throw ConfigError(field + ".scale", "must be > 0");
  }
}

ModelPtr make_model(const ModelSpec& spec) {
  spec.validate("model");
  switch (spec.kind) {
    case ModelKind::malus_probabilistic:
      return std::make_shared<MalusProbabilistic>();
    case ModelKind::malus_deterministic:
      return std::make_shared<MalusDeterministic>();
    case ModelKind::impact_modulated:
      return std::make_shared<ImpactModulated>(spec.epsilon, spec.shape);
    case ModelKind::scalar_particle:
      return std::make_shared<ScalarParticle>(spec.amplitude, spec.shape);
    case ModelKind::qm_reference:
      break;
  }
  throw ConfigError("model.kind",
                    "qm-reference is a joint sampler, not a local model");
}

Evaluation MalusProbabilistic::evaluate(PolarizationState s,
                                        EffectiveImpactParameter,
                                        double gamma) const {
  return clamp_unit(cos2(s.lambda - gamma));
}

Evaluation MalusDeterministic::evaluate(PolarizationState s,
                                        EffectiveImpactParameter,
                                        double gamma) const {
  return {cos2(s.lambda - gamma) >= 0.5 ? 1.0 : 0.0, false};
}

std::vector<double> MalusDeterministic::lambda_breakpoints(
    double gamma) const {
  return {wrap_pi(gamma - kPi / 4), wrap_pi(gamma + kPi / 4)};
}

ImpactModulated::ImpactModulated(double epsilon, RadialShape shape)
    : epsilon_(epsilon), shape_(shape) {}

Evaluation ImpactModulated::evaluate(PolarizationState s,
                                     EffectiveImpactParameter b,
                                     double gamma) const {
  const double base = cos2(s.lambda - gamma);
  if (epsilon_ == 0) return clamp_unit(base);
  const double phi_b = std::atan2(b.reduced.y, b.reduced.x);
  return clamp_unit(base + epsilon_ * std::cos(2 * (phi_b - s.lambda)) *
                               shape_(b.reduced.norm()));
}

ScalarParticle::ScalarParticle(double amplitude, RadialShape shape)
    : amplitude_(amplitude), shape_(shape) {}

Evaluation ScalarParticle::evaluate(PolarizationState,
                                    EffectiveImpactParameter b, double) const {
  return clamp_unit(amplitude_ * shape_(b.reduced.norm()));
}

}  // namespace eprlab
