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

#include <cmath>
#include <set>
#include <utility>

#include "doctest.h"
#include "eprlab/geometry.hpp"

using namespace eprlab;

namespace {

// Independent trig oracle: rotate by -gamma, then wrap into [-1/2, 1/2).
Vec2 reduce_by_hand(Vec2 p, double gamma) {
  const double x = std::cos(gamma) * p.x + std::sin(gamma) * p.y;
  const double y = -std::sin(gamma) * p.x + std::cos(gamma) * p.y;
  auto wrap = [](double v) {
    while (v >= 0.5) v -= 1;
    while (v < -0.5) v += 1;
    return v;
  };
  return {wrap(x), wrap(y)};
}

}  // namespace

TEST_CASE("propagate: on-axis ray hits both centers") {
  const auto [p1, p2] = propagate({{0, 0, 0}, {0, 0, 1}}, ArmGeometry{});
  CHECK(p1.lab.x == 0.0);
  CHECK(p1.lab.y == 0.0);
  CHECK(p2.lab.x == 0.0);
  CHECK(p2.lab.y == 0.0);
}

TEST_CASE("propagate: parallel offset ray") {
  for (double L : {1.0, 37.5, 1000.0}) {
    const auto [p1, p2] = propagate({{1, 0, 0}, {0, 0, 1}}, {L, L});
    CHECK(p1.lab == Vec2{1, 0});
    CHECK(p2.lab == Vec2{1, 0});
  }
}

TEST_CASE("propagate: photon 2 travels the opposite way") {
  const double t = 0.01;
  const Vec3 dir{std::sin(t), 0, std::cos(t)};
  const auto [p1, p2] = propagate({{0, 0, 0}, dir}, {100, 50});
  CHECK(p1.lab.x == doctest::Approx(100 * std::tan(t)).epsilon(1e-12));
  CHECK(p2.lab.x == doctest::Approx(-50 * std::tan(t)).epsilon(1e-12));
}

TEST_CASE("propagate rejects backward photons") {
  CHECK_THROWS_AS(propagate({{0, 0, 0}, {0, 0, -1}}, ArmGeometry{}), GeometryError);
  CHECK_THROWS_AS(propagate({{0, 0, 0}, {1, 0, 0}}, ArmGeometry{}), GeometryError);
}

TEST_CASE("effective impact examples") {
  const Lattice unit;
  for (double g : {0.0, 0.3, kPi / 4, 2.0}) {
    const auto r = effective_impact({{0, 0}}, g, unit).reduced;
    CHECK(r.x == doctest::Approx(0).epsilon(1e-15));
    CHECK(r.y == doctest::Approx(0).epsilon(1e-15));
  }
  const auto a = effective_impact({{0.75, 0}}, 0, unit).reduced;
  CHECK(a.x == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(a.y == 0.0);
  const auto b = effective_impact({{0.3, 0}}, kPi / 4, unit).reduced;
  CHECK(std::round(b.x * 1e4) / 1e4 == doctest::Approx(0.2121));
  CHECK(std::round(b.y * 1e4) / 1e4 == doctest::Approx(-0.2121));
}

TEST_CASE("boundary maps to the negative side") {
  CHECK(reduce_into_cell(0.5, 1) == -0.5);
  CHECK(reduce_into_cell(-0.5, 1) == -0.5);
  CHECK(reduce_into_cell(1.5, 1) == -0.5);
  CHECK(reduce_into_cell(1.0, 2) == -1.0);
  const double below = std::nextafter(0.5, 0.0);
  CHECK(reduce_into_cell(below, 1) == below);
}

TEST_CASE("reduced components stay in the half-open cell") {
  for (int i = 0; i < 200000; ++i) {
    const double x = (i * 0.6180339887498949 - std::floor(i * 0.6180339887498949)) * 200 - 100;
    const double y = std::sin(i * 1.37) * 73.2;
    const double g = std::fmod(i * 0.0123, kPi);
    for (double d : {1.0, 0.37}) {
      const auto r = effective_impact({{x, y}}, g, {d, {0, 0}}).reduced;
      REQUIRE(r.x >= -d / 2);
      REQUIRE(r.x < d / 2);
      REQUIRE(r.y >= -d / 2);
      REQUIRE(r.y < d / 2);
    }
  }
}

TEST_CASE("reduction is idempotent at gamma 0") {
  const Lattice unit;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p{std::sin(i * 0.77) * 9, std::cos(i * 1.31) * 9};
    const auto once = effective_impact({p}, 0, unit).reduced;
    const auto twice = effective_impact({once}, 0, unit).reduced;
    REQUIRE(once == twice);
  }
}

TEST_CASE("rotation consistency and trig oracle") {
  const Lattice unit;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p{std::sin(i * 0.77) * 9, std::cos(i * 1.31) * 9};
    const double g = std::fmod(i * 0.311, kPi);
    const Vec2 rotated{std::cos(g) * p.x + std::sin(g) * p.y,
                       -std::sin(g) * p.x + std::cos(g) * p.y};
    const auto direct = effective_impact({p}, g, unit).reduced;
    const auto via = effective_impact({rotated}, 0, unit).reduced;
    const auto oracle = reduce_by_hand(p, g);
    // Skip points that sit within rounding of a cell edge.
    if (std::abs(std::abs(oracle.x) - 0.5) < 1e-9 ||
        std::abs(std::abs(oracle.y) - 0.5) < 1e-9) {
      continue;
    }
    REQUIRE(std::abs(direct.x - via.x) < 1e-12);
    REQUIRE(std::abs(direct.y - via.y) < 1e-12);
    REQUIRE(std::abs(direct.x - oracle.x) < 1e-12);
    REQUIRE(std::abs(direct.y - oracle.y) < 1e-12);
  }
}

TEST_CASE("rotation center shifts the grid") {
  const Lattice shifted{1, {0.25, 0}};
  const auto r = effective_impact({{0.25, 0}}, 1.1, shifted).reduced;
  CHECK(r.x == doctest::Approx(0).epsilon(1e-15));
  CHECK(r.y == doctest::Approx(0).epsilon(1e-15));
}

TEST_CASE("equal arms: impacts sum to twice the emission point") {
  ExperimentGeometry g;
  g.arms = {80, 80};
  g.source = {SourceKind::gaussian, {0.4, -0.2}, 5.0, 0.2};
  for (std::uint64_t e = 0; e < 100000; ++e) {
    EventStream s({21, 0}, e);
    const auto h = sample_hidden_variables(g.source, s);
    const auto [p1, p2] = propagate(h.source, g.arms);
    REQUIRE(std::abs(p1.lab.x + p2.lab.x - 2 * h.source.position.x) < 1e-12);
    REQUIRE(std::abs(p1.lab.y + p2.lab.y - 2 * h.source.position.y) < 1e-12);
  }
}

TEST_CASE("point-source histogram is a point mass that moves with gamma") {
  ExperimentGeometry g;
  g.source = {SourceKind::point, {0.3, 0}, 0.0, 0.0};
  const auto h0 = impact_histogram(g, 0, 10000, 1, 32);
  const auto h45 = impact_histogram(g, kPi / 4, 10000, 1, 32);
  auto peak = [](const ImpactHistogram& h) {
    int best_x = 0, best_y = 0;
    for (int iy = 0; iy < h.bins; ++iy) {
      for (int ix = 0; ix < h.bins; ++ix) {
        if (h.frequency(ix, iy) > h.frequency(best_x, best_y)) {
          best_x = ix;
          best_y = iy;
        }
      }
    }
    return std::pair{best_x, best_y};
  };
  const auto [x0, y0] = peak(h0);
  const auto [x1, y1] = peak(h45);
  CHECK(h0.frequency(x0, y0) == 1.0);
  CHECK(h45.frequency(x1, y1) == 1.0);
  CHECK(std::abs(h0.bin_center(x0, y0).x - 0.3) <= 0.5 / 32);
  CHECK(std::abs(h0.bin_center(x0, y0).y - 0.0) <= 0.5 / 32);
  CHECK(std::abs(h45.bin_center(x1, y1).x - 0.2121) <= 0.5 / 32);
  CHECK(std::abs(h45.bin_center(x1, y1).y + 0.2121) <= 0.5 / 32);
}

TEST_CASE("histogram preconditions") {
  ExperimentGeometry g;
  CHECK_THROWS_AS(impact_histogram(g, 0, 0, 1), StatisticsError);
  CHECK_THROWS_AS(impact_histogram(g, 0, 9999, 1), StatisticsError);
}

TEST_CASE("geometry validation") {
  ArmGeometry arms{0, 1};
  CHECK_THROWS_AS(arms.validate(), ConfigError);
  Lattice lattice{-1, {0, 0}};
  CHECK_THROWS_AS(lattice.validate(), ConfigError);
  CHECK_NOTHROW(ExperimentGeometry{}.validate());
}
