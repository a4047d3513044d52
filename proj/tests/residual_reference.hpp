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

// Test-side reference for the residual at one fixed geometry, written
// without the library: impact-modulated model, eps 0.5, linear profile of
// scale 0.25, unit lattice, on-axis ray through (0.3, 0.1), quad
// (0, pi/4, pi/8, -pi/8).

#pragma once

#include <algorithm>
#include <cmath>

namespace eprlab::testing {

// Reference value, also reproduced by an adaptive scipy quadrature.
inline constexpr double kFrozenResidual = -0.0315450545;

inline double reference_residual() {
  constexpr double pi = 3.14159265358979323846;
  constexpr double px = 0.3, py = 0.1, eps = 0.5, scale = 0.25;
  struct B {
    double r, phi;
  };
  auto reduced = [&](double g) {
    auto wrap = [](double v) { return v - std::floor(v + 0.5); };
    const double x = wrap(std::cos(g) * px + std::sin(g) * py);
    const double y = wrap(-std::sin(g) * px + std::cos(g) * py);
    return B{std::hypot(x, y), std::atan2(y, x)};
  };
  auto p = [&](double lambda, B b, double g) {
    const double c = std::cos(lambda - g);
    const double v = c * c + eps * std::cos(2 * (b.phi - lambda)) *
                                 std::min(b.r / scale, 1.0);
    return std::clamp(v, 0.0, 1.0);
  };
  const double a = 0, ap = pi / 4, b = pi / 8, bp = -pi / 8;
  const B ba = reduced(a), bb = reduced(b), bbp = reduced(bp);
  auto f = [&](double l) {
    return p(l, ba, a) * p(l, ba, ap) *
           (p(l, bb, b) * p(l, bb, bp) - p(l, bbp, b) * p(l, bbp, bp));
  };
  // Composite Simpson; the clamp kinks limit the error to O(h^2).
  const int n = 1 << 21;
  const double h = pi / n;
  double sum = f(0) + f(pi);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3 / pi;
}

}  // namespace eprlab::testing
