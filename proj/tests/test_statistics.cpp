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
#include "eprlab/statistics.hpp"
#include "eprlab/types.hpp"

using namespace eprlab::stats;

TEST_CASE("chi-squared survival reference values") {
  CHECK(chi_squared_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_squared_survival(18.307038053275146, 10) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_squared_survival(0, 4) == 1.0);
}

TEST_CASE("kolmogorov survival reference values") {
  CHECK(kolmogorov_survival(1.3580986393225505) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(kolmogorov_survival(0.8275735551899077) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(5.0) < 1e-20);
  // Both branches agree where they meet.
  CHECK(kolmogorov_survival(1.1799999) ==
        doctest::Approx(kolmogorov_survival(1.1800001)).epsilon(1e-6));
}

TEST_CASE("uniform chi-squared") {
  const std::vector<std::uint64_t> flat(10, 1000);
  const auto r = chi_squared_uniform(flat);
  CHECK(r.statistic == 0.0);
  CHECK(r.dof == 9);
  CHECK(r.p_value == 1.0);
  std::vector<std::uint64_t> skew(10, 1000);
  skew[0] = 2000;
  CHECK(chi_squared_uniform(skew).p_value < 1e-10);
}

TEST_CASE("two-sample chi-squared with unequal totals") {
  const std::vector<std::uint64_t> r{100, 200, 300}, s{200, 400, 600};
  const auto t = chi_squared_two_sample(r, s);
  CHECK(t.statistic == doctest::Approx(0).scale(1));
  CHECK(t.dof == 2);
  const std::vector<std::uint64_t> a{1000, 0}, b{0, 1000};
  CHECK(chi_squared_two_sample(a, b).p_value < 1e-100);
}

TEST_CASE("two-sample KS") {
  std::vector<double> a, b, c;
  for (int i = 0; i < 5000; ++i) {
    a.push_back(std::fmod(i * 0.6180339887, 1.0));
    b.push_back(std::fmod(i * 0.7548776662 + 0.1, 1.0));
    c.push_back(0.3);
  }
  CHECK(ks_two_sample(a, b).p_value > 0.01);
  CHECK(ks_two_sample(a, c).p_value < 1e-10);
  CHECK(ks_two_sample(c, c).statistic == 0.0);
}
