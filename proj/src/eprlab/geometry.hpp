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
#include <utility>
#include <vector>

#include "eprlab/hidden_variables.hpp"
#include "eprlab/random.hpp"
#include "eprlab/types.hpp"

namespace eprlab {

// Polarizer planes sit at z = +length1 (device 1) and z = -length2.
struct ArmGeometry {
  double length1 = 100;
  double length2 = 100;

  void validate() const;

  friend bool operator==(const ArmGeometry&, const ArmGeometry&) = default;
};

// Square grid of interaction centers; the polarizer setting rotates the grid
// rigidly about rotation_center.
struct Lattice {
  double constant = 1;
  Vec2 rotation_center;

  void validate() const;

  friend bool operator==(const Lattice&, const Lattice&) = default;
};

// Lab-frame hit point in a polarizer plane.
struct ImpactPoint {
  Vec2 lab;
};

// Displacement from the nearest interaction center, in the grid frame.
// Each component lies in [-d/2, d/2).
struct EffectiveImpactParameter {
  Vec2 reduced;
};

// Everything that maps an event to impact points; no settings, no models.
struct ExperimentGeometry {
  SourceDistribution source;
  ArmGeometry arms;
  Lattice lattice;

  void validate() const;

  friend bool operator==(const ExperimentGeometry&,
                         const ExperimentGeometry&) = default;
};

// Straight-line propagation to both polarizer planes. Throws GeometryError
// when photon 1 does not travel towards device 1.
std::pair<ImpactPoint, ImpactPoint> propagate(const SourceState& source,
                                              const ArmGeometry& arms);

// x reduced modulo d into [-d/2, d/2); the boundary maps to -d/2.
double reduce_into_cell(double x, double d);

// The grid seen by one device at one setting. Construct once per run.
class GridFrame {
 public:
  GridFrame(double gamma, const Lattice& lattice);

  EffectiveImpactParameter reduce(ImpactPoint point) const;

 private:
  double cos_;
  double sin_;
  double constant_;
  Vec2 center_;
};

EffectiveImpactParameter effective_impact(ImpactPoint point, double gamma,
                                          const Lattice& lattice);

// Reduced device-1 impacts for events [0, n) of the given substream.
std::vector<Vec2> reduced_impacts(const ExperimentGeometry& geometry,
                                  double gamma, std::uint64_t n,
                                  StreamKey key);

// Normalized 2-D histogram over the fundamental cell, row-major in y.
struct ImpactHistogram {
  int bins = 0;
  double cell = 1;
  std::uint64_t events = 0;
  std::vector<std::uint64_t> counts;

  double frequency(int ix, int iy) const;
  Vec2 bin_center(int ix, int iy) const;
};

inline constexpr std::uint64_t kMinHistogramEvents = 10'000;

ImpactHistogram histogram_of(const std::vector<Vec2>& reduced, double cell,
                             int bins);

// Throws StatisticsError when n < kMinHistogramEvents.
ImpactHistogram impact_histogram(const ExperimentGeometry& geometry,
                                 double gamma, std::uint64_t n,
                                 std::uint64_t seed, int bins = 32);

}  // namespace eprlab
