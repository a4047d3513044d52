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

#include <string_view>

#include "eprlab/random.hpp"
#include "eprlab/types.hpp"

namespace eprlab {

// Linear polarization direction; lambda in [0, pi).
struct PolarizationState {
  double lambda = 0;
};

// Pair source: emission point (units of the lattice constant) and the unit
// direction of photon 1. Photon 2 travels along -direction.
struct SourceState {
  Vec3 position;
  Vec3 direction{0, 0, 1};
};

// One event's shared hidden variables. No polarizer setting enters here.
struct HiddenVariableSample {
  PolarizationState polarization;
  SourceState source;
};

enum class SourceKind { point, gaussian, uniform_disc };

std::string_view to_string(SourceKind kind);
SourceKind source_kind_from_string(std::string_view text);

/*!
 * Distribution of the pair source.
 *
 * `spread` is the gaussian sigma or the disc radius; `center` offsets the
 * transverse emission point. Directions are uniform on the spherical cap of
 * half-angle `cone_half_angle` about +z.
 */
struct SourceDistribution {
  SourceKind kind = SourceKind::gaussian;
  Vec2 center;
  double spread = 5.0;
  double cone_half_angle = 1e-3;

  // Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const SourceDistribution&,
                         const SourceDistribution&) = default;
};

// Draws lambda, position and direction from fixed slots of the stream.
HiddenVariableSample sample_hidden_variables(const SourceDistribution& dist,
                                             EventStream& stream);

}  // namespace eprlab
