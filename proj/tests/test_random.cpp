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
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "eprlab/hidden_variables.hpp"
#include "eprlab/random.hpp"
#include "eprlab/statistics.hpp"

using namespace eprlab;

TEST_CASE("philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                      {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("event streams replay bit-identically") {
  const StreamKey key{12345, 7};
  EventStream a(key, 99), b(key, 99);
  for (unsigned s = 0; s < slot::kCount; ++s) {
    CHECK(a.uniform(s) == b.uniform(s));
  }
  // Reading slots out of order does not change their values.
  EventStream c(key, 99);
  CHECK(c.uniform(6) == a.uniform(6));
  CHECK(c.uniform(0) == a.uniform(0));
}

TEST_CASE("streams differ across seed, label and event") {
  const double base = EventStream({1, 0}, 0).uniform(0);
  CHECK(EventStream({2, 0}, 0).uniform(0) != base);
  CHECK(EventStream({1, 1}, 0).uniform(0) != base);
  CHECK(EventStream({1, 0}, 1).uniform(0) != base);
  CHECK(EventStream({1, 0}, std::uint64_t{1} << 33).uniform(0) != base);
}

TEST_CASE("uniforms lie in [0, 1)") {
  for (std::uint64_t e = 0; e < 10000; ++e) {
    EventStream s({3, 4}, e);
    for (unsigned k = 0; k < slot::kCount; ++k) {
      const double u = s.uniform(k);
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
    }
  }
}

TEST_CASE("mix64 is a bijection on small samples") {
  CHECK(mix64(0) != mix64(1));
  CHECK(mix64(42) == mix64(42));
}

TEST_CASE("point source with zero cone") {
  const SourceDistribution point{SourceKind::point, {0, 0}, 0.0, 0.0};
  for (std::uint64_t e = 0; e < 1000; ++e) {
    EventStream s({5, 0}, e);
    const auto h = sample_hidden_variables(point, s);
    REQUIRE(h.source.position.x == 0.0);
    REQUIRE(h.source.position.y == 0.0);
    REQUIRE(h.source.position.z == 0.0);
    REQUIRE(h.source.direction.x == 0.0);
    REQUIRE(h.source.direction.y == 0.0);
    REQUIRE(h.source.direction.z == 1.0);
    REQUIRE(h.polarization.lambda >= 0.0);
    REQUIRE(h.polarization.lambda < kPi);
  }
}

TEST_CASE("sampler replays bit-identically") {
  const SourceDistribution dist;
  EventStream a({77, 3}, 5), b({77, 3}, 5);
  const auto x = sample_hidden_variables(dist, a);
  const auto y = sample_hidden_variables(dist, b);
  CHECK(x.polarization.lambda == y.polarization.lambda);
  CHECK(x.source.position.x == y.source.position.x);
  CHECK(x.source.position.y == y.source.position.y);
  CHECK(x.source.direction.x == y.source.direction.x);
  CHECK(x.source.direction.z == y.source.direction.z);
}

TEST_CASE("gaussian source spread matches sigma") {
  const SourceDistribution dist{SourceKind::gaussian, {0, 0}, 2.0, 1e-3};
  const int n = 1'000'000;
  double sx = 0, sxx = 0, sy = 0, syy = 0;
  for (int e = 0; e < n; ++e) {
    EventStream s({11, 0}, e);
    const auto p = sample_hidden_variables(dist, s).source.position;
    sx += p.x;
    sxx += p.x * p.x;
    sy += p.y;
    syy += p.y * p.y;
  }
  const double sdx = std::sqrt(sxx / n - (sx / n) * (sx / n));
  const double sdy = std::sqrt(syy / n - (sy / n) * (sy / n));
  CHECK(std::abs(sdx - 2.0) < 0.02);
  CHECK(std::abs(sdy - 2.0) < 0.02);
}

TEST_CASE("lambda is uniform on [0, pi)") {
  const SourceDistribution dist;
  std::vector<std::uint64_t> counts(32, 0);
  for (int e = 0; e < 1'000'000; ++e) {
    EventStream s({13, 0}, e);
    const double l = sample_hidden_variables(dist, s).polarization.lambda;
    ++counts[static_cast<int>(l / kPi * 32)];
  }
  CHECK(stats::chi_squared_uniform(counts).p_value >= 1e-3);
}

TEST_CASE("directions are unit vectors inside the cone") {
  const double cone = 0.2;
  for (auto kind : {SourceKind::gaussian, SourceKind::uniform_disc}) {
    const SourceDistribution dist{kind, {1, -1}, 3.0, cone};
    double max_r = 0;
    for (int e = 0; e < 100000; ++e) {
      EventStream s({17, 1}, e);
      const auto h = sample_hidden_variables(dist, s);
      const auto d = h.source.direction;
      REQUIRE(std::abs(std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z) - 1) < 1e-12);
      REQUIRE(d.z >= std::cos(cone) - 1e-15);
      REQUIRE(d.z > 0);
      const double r = std::hypot(h.source.position.x - 1, h.source.position.y + 1);
      max_r = std::max(max_r, r);
    }
    if (kind == SourceKind::uniform_disc) CHECK(max_r <= 3.0);
  }
}

TEST_CASE("source validation names the field") {
  SourceDistribution bad{SourceKind::point, {0, 0}, 1.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  try {
    bad.validate();
  } catch (const ConfigError& e) {
    CHECK(e.field().find("spread") != std::string::npos);
  }
  SourceDistribution wide{SourceKind::gaussian, {0, 0}, 1.0, 1.0};
  CHECK_THROWS_AS(wide.validate(), ConfigError);
  SourceDistribution negative{SourceKind::gaussian, {0, 0}, -1.0, 0.0};
  CHECK_THROWS_AS(negative.validate(), ConfigError);
}

TEST_CASE("source kind names round-trip") {
  for (auto k : {SourceKind::point, SourceKind::gaussian, SourceKind::uniform_disc}) {
    CHECK(source_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(source_kind_from_string("laser"), ConfigError);
}
