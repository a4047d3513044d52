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

#include "eprlab/statistics.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "eprlab/types.hpp"

namespace eprlab::stats {

double chi_squared_survival(double statistic, double dof) {
  if (dof <= 0) return 1;
  if (statistic <= 0) return 1;
  if (!std::isfinite(statistic)) return 0;
  return boost::math::gamma_q(dof / 2, statistic / 2);
}

TestResult chi_squared_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw StatisticsError("need at least two bins");
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0) throw StatisticsError("no events to test");
  const double expected = total / static_cast<double>(counts.size());
  double x2 = 0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    x2 += d * d / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  return {x2, dof, chi_squared_survival(x2, dof)};
}

TestResult chi_squared_two_sample(std::span<const std::uint64_t> r,
                                  std::span<const std::uint64_t> s) {
  if (r.size() != s.size()) throw StatisticsError("histogram shapes differ");
  double nr = 0, ns = 0;
  for (auto c : r) nr += static_cast<double>(c);
  for (auto c : s) ns += static_cast<double>(c);
  if (nr == 0 || ns == 0) throw StatisticsError("empty histogram");

  const double kr = std::sqrt(ns / nr);
  const double ks = std::sqrt(nr / ns);
  double x2 = 0;
  int used = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double ri = static_cast<double>(r[i]);
    const double si = static_cast<double>(s[i]);
    if (ri + si == 0) continue;
    const double d = kr * ri - ks * si;
    x2 += d * d / (ri + si);
    ++used;
  }
  const double dof = used - 1;
  return {x2, dof, chi_squared_survival(x2, dof)};
}

double kolmogorov_survival(double t) {
  if (t <= 0) return 1;
  // The alternating series is useless for small t; use the theta-function
  // form of the CDF there.
  if (t < 1.18) {
    const double y = std::exp(-kPi * kPi / (8 * t * t));
    const double cdf = std::sqrt(2 * kPi) / t *
                       (y + std::pow(y, 9) + std::pow(y, 25) + std::pow(y, 49));
    return std::clamp(1 - cdf, 0.0, 1.0);
  }
  double sum = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2 * sum, 0.0, 1.0);
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw StatisticsError("empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double root = std::sqrt(ne);
  const double t = (root + 0.12 + 0.11 / root) * d;
  return {d, 0, kolmogorov_survival(t)};
}

}  // namespace eprlab::stats
