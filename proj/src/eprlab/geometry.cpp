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

#include "eprlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eprlab {

void ArmGeometry::validate() const {
  if (!(std::isfinite(length1) && length1 > 0)) {
    throw ConfigError("geometry.arm_length_1", "must be > 0");
  }
  if (!(std::isfinite(length2) && length2 > 0)) {
    throw ConfigError("geometry.arm_length_2", "must be > 0");
  }
}

void Lattice::validate() const {
  if (!(std::isfinite(constant) && constant > 0)) {
    throw ConfigError("lattice.constant", "must be > 0");
  }
  if (!std::isfinite(rotation_center.x) || !std::isfinite(rotation_center.y)) {
    throw ConfigError("lattice.rotation_center", "must be finite");
  }
}

void ExperimentGeometry::validate() const {
  source.validate();
  arms.validate();
  lattice.validate();
}

std::pair<ImpactPoint, ImpactPoint> propagate(const SourceState& source,
                                              const ArmGeometry& arms) {
  const Vec3& dir = source.direction;
  if (!(dir.z > 0) || !std::isfinite(dir.x) || !std::isfinite(dir.y)) {
    throw GeometryError("photon direction must have a positive z component");
  }
  const Vec2 slope{dir.x / dir.z, dir.y / dir.z};
  const Vec2 transverse{source.position.x, source.position.y};
  // Exact plane intersections; the sampler always emits from z = 0.
  const double reach1 = arms.length1 - source.position.z;
  const double reach2 = arms.length2 + source.position.z;
  return {ImpactPoint{transverse + reach1 * slope},
          ImpactPoint{transverse - reach2 * slope}};
}

double reduce_into_cell(double x, double d) {
  // fmod is exact, and so is each fold below, so edges are never misplaced.
  double r = std::fmod(x, d);
  const double half = d / 2;
  if (r >= half) r -= d;
  if (r < -half) r += d;
  return r;
}

GridFrame::GridFrame(double gamma, const Lattice& lattice)
    : cos_(std::cos(gamma)),
      sin_(std::sin(gamma)),
      constant_(lattice.constant),
      center_(lattice.rotation_center) {}

EffectiveImpactParameter GridFrame::reduce(ImpactPoint point) const {
  const Vec2 rel = point.lab - center_;
  // Rotation by -gamma takes lab coordinates into the grid frame.
  const double gx = cos_ * rel.x + sin_ * rel.y;
  const double gy = -sin_ * rel.x + cos_ * rel.y;
  return {{reduce_into_cell(gx, constant_), reduce_into_cell(gy, constant_)}};
}

EffectiveImpactParameter effective_impact(ImpactPoint point, double gamma,
                                          const Lattice& lattice) {
  return GridFrame(gamma, lattice).reduce(point);
}

std::vector<Vec2> reduced_impacts(const ExperimentGeometry& geometry,
                                  double gamma, std::uint64_t n,
                                  StreamKey key) {
  geometry.validate();
  const GridFrame frame(gamma, geometry.lattice);
  std::vector<Vec2> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    EventStream stream(key, i);
    const auto sample = sample_hidden_variables(geometry.source, stream);
    const auto impacts = propagate(sample.source, geometry.arms);
    out.push_back(frame.reduce(impacts.first).reduced);
  }
  return out;
}

double ImpactHistogram::frequency(int ix, int iy) const {
  if (events == 0) return 0;
  return static_cast<double>(counts[static_cast<std::size_t>(iy) * bins + ix]) /
         static_cast<double>(events);
}

Vec2 ImpactHistogram::bin_center(int ix, int iy) const {
  const double width = cell / bins;
  return {-cell / 2 + (ix + 0.5) * width, -cell / 2 + (iy + 0.5) * width};
}

ImpactHistogram histogram_of(const std::vector<Vec2>& reduced, double cell,
                             int bins) {
  ImpactHistogram h;
  h.bins = bins;
  h.cell = cell;
  h.events = reduced.size();
  h.counts.assign(static_cast<std::size_t>(bins) * bins, 0);
  auto index = [&](double v) {
    const int i = static_cast<int>(std::floor((v + cell / 2) / cell * bins));
    return std::clamp(i, 0, bins - 1);
  };
  for (const Vec2& b : reduced) {
    ++h.counts[static_cast<std::size_t>(index(b.y)) * bins + index(b.x)];
  }
  return h;
}

ImpactHistogram impact_histogram(const ExperimentGeometry& geometry,
                                 double gamma, std::uint64_t n,
                                 std::uint64_t seed, int bins) {
  if (n < kMinHistogramEvents) {
    throw StatisticsError("impact histogram needs at least " +
                          std::to_string(kMinHistogramEvents) + " events, got " +
                          std::to_string(n));
  }
  if (bins < 1) throw ConfigError("bins", "must be >= 1");
  return histogram_of(reduced_impacts(geometry, gamma, n, {seed, 0}),
                      geometry.lattice.constant, bins);
}

}  // namespace eprlab
