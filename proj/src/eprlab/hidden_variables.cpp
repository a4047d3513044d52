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

#include "eprlab/hidden_variables.hpp"

#include <cmath>
#include <string>

namespace eprlab {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::point:
      return "point";
    case SourceKind::gaussian:
      return "gaussian";
    case SourceKind::uniform_disc:
      return "uniform-disc";
  }
  return "?";
}

SourceKind source_kind_from_string(std::string_view text) {
  if (text == "point") return SourceKind::point;
  if (text == "gaussian") return SourceKind::gaussian;
  if (text == "uniform-disc") return SourceKind::uniform_disc;
  throw ConfigError("source.kind", "unknown source kind '" +
                                       std::string(text) + "'");
}

void SourceDistribution::validate() const {
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw ConfigError("source.center", "must be finite");
  }
  if (!std::isfinite(spread) || spread < 0) {
    throw ConfigError("source.spread", "must be a finite length >= 0");
  }
  if (!std::isfinite(cone_half_angle) || cone_half_angle < 0 ||
      cone_half_angle > kPi / 4) {
    throw ConfigError("source.cone_half_angle", "must lie in [0, pi/4]");
  }
  if (kind == SourceKind::point && spread != 0) {
    throw ConfigError("source.spread", "a point source has zero spread");
  }
}

HiddenVariableSample sample_hidden_variables(const SourceDistribution& dist,
                                             EventStream& stream) {
  HiddenVariableSample s;

  double lambda = kPi * stream.uniform(slot::kLambda);
  if (lambda >= kPi) lambda = 0;
  s.polarization.lambda = lambda;

  // Both position slots are always consumed.
  const double ua = stream.uniform(slot::kPositionA);
  const double ub = stream.uniform(slot::kPositionB);
  Vec2 offset;
  switch (dist.kind) {
    case SourceKind::point:
      break;
    case SourceKind::gaussian: {
      const double r = dist.spread * std::sqrt(-2.0 * std::log1p(-ua));
      const double phi = 2 * kPi * ub;
      offset = {r * std::cos(phi), r * std::sin(phi)};
      break;
    }
    case SourceKind::uniform_disc: {
      const double r = dist.spread * std::sqrt(ua);
      const double phi = 2 * kPi * ub;
      offset = {r * std::cos(phi), r * std::sin(phi)};
      break;
    }
  }
  s.source.position = {dist.center.x + offset.x, dist.center.y + offset.y, 0};

  // Uniform on the cap: 1 - cos(theta) uniform on [0, 1 - cos(cone)].
  const double half = std::sin(dist.cone_half_angle / 2);
  const double one_minus_cos =
      stream.uniform(slot::kDirectionA) * 2 * half * half;
  const double cos_theta = 1 - one_minus_cos;
  const double sin_theta = std::sqrt(one_minus_cos * (2 - one_minus_cos));
  const double phi = 2 * kPi * stream.uniform(slot::kDirectionB);
  s.source.direction = {sin_theta * std::cos(phi), sin_theta * std::sin(phi),
                        cos_theta};
  return s;
}

}  // namespace eprlab
