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

#include "eprlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eprlab::oracle {
namespace {

template <std::size_t N>
using Values = std::array<double, N>;

template <std::size_t N, class F>
Values<N> midpoint(F&& f, double a, double b, std::uint64_t n) {
  Values<N> sum{};
  const double h = (b - a) / static_cast<double>(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Values<N> v = f(a + (static_cast<double>(i) + 0.5) * h);
    for (std::size_t k = 0; k < N; ++k) sum[k] += v[k];
  }
  for (auto& s : sum) s *= h;
  return sum;
}

// Mean over lambda in [0, pi) of a vector integrand that is smooth between
// the given breakpoints.
template <std::size_t N, class F>
Values<N> lambda_average(F&& f, std::vector<double> breaks, double tol) {
  breaks.push_back(0);
  breaks.push_back(kPi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  constexpr std::uint64_t kMaxPanels = std::uint64_t{1} << 21;
  const double seg_tol = tol / static_cast<double>(breaks.size());
  Values<N> total{};
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    if (!(b > a)) continue;
    std::uint64_t n = 8;
    Values<N> coarse = midpoint<N>(f, a, b, n);
    Values<N> previous{};
    bool have_previous = false;
    Values<N> extrapolated{};
    while (true) {
      const Values<N> fine = midpoint<N>(f, a, b, 2 * n);
      double change = 0;
      for (std::size_t k = 0; k < N; ++k) {
        extrapolated[k] = (4 * fine[k] - coarse[k]) / 3;
        if (have_previous) {
          change = std::max(change, std::abs(extrapolated[k] - previous[k]));
        }
      }
      if ((have_previous && change < seg_tol) || 2 * n >= kMaxPanels) break;
      previous = extrapolated;
      have_previous = true;
      coarse = fine;
      n *= 2;
    }
    for (std::size_t k = 0; k < N; ++k) total[k] += extrapolated[k];
  }
  for (auto& t : total) t /= kPi;
  return total;
}

std::vector<double> merged_breaks(const DetectionModel& m1, double g1,
                                  const DetectionModel& m2, double g2) {
  auto out = m1.lambda_breakpoints(g1);
  auto more = m2.lambda_breakpoints(g2);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

}  // namespace

EnumerationResult enumerate_deterministic_max(StatisticForm form) {
  EnumerationResult out;
  out.maximum = -100;
  out.minimum = 100;
  std::vector<std::pair<int, Strategy>> all;
  for (int bits = 0; bits < 16; ++bits) {
    const Strategy s{(bits >> 3) & 1, (bits >> 2) & 1, (bits >> 1) & 1,
                     bits & 1};
    const int a = s[0], ap = s[1], b = s[2], bp = s[3];
    int value = 0;
    if (form == StatisticForm::joint) {
      value = a * b + a * bp + ap * b - ap * bp;
    } else {
      value = (a == b) + (a == bp) + (ap == b) - (ap == bp);
    }
    all.emplace_back(value, s);
    out.maximum = std::max(out.maximum, value);
    out.minimum = std::min(out.minimum, value);
  }
  for (const auto& [value, s] : all) {
    if (value == out.maximum) out.maximizers.push_back(s);
    if (value == out.minimum) out.minimizers.push_back(s);
  }
  return out;
}

QuadraturePair quadrature_coincidence(const DetectionModel& model1,
                                      const DetectionModel& model2,
                                      double alpha, double beta,
                                      double tolerance) {
  if (model1.uses_impact_parameter() || model2.uses_impact_parameter()) {
    throw OracleError(
        "quadrature over lambda alone needs impact-independent models");
  }
  const EffectiveImpactParameter origin{};
  auto integrand = [&](double lambda) {
    const PolarizationState s{lambda};
    const double p1 = model1.probability(s, origin, alpha);
    const double p2 = model2.probability(s, origin, beta);
    return Values<4>{p1 * p2, p1 * p2 + (1 - p1) * (1 - p2), p1, p2};
  };
  const auto v = lambda_average<4>(
      integrand, merged_breaks(model1, alpha, model2, beta), tolerance);
  return {v[0], v[1], v[2], v[3]};
}

QuadraturePair qm_reference_probabilities(double alpha, double beta) {
  const double c = std::cos(alpha - beta);
  return {0.5 * c * c, c * c, 0.5, 0.5};
}

double quadrature_residual(const ExperimentGeometry& geometry,
                           const DetectionModel& model1,
                           const DetectionModel& model2,
                           const SettingsQuad& quad, double tolerance) {
  geometry.validate();
  if (geometry.source.kind != SourceKind::point ||
      geometry.source.cone_half_angle != 0) {
    throw OracleError(
        "residual quadrature needs a point source with zero cone angle");
  }
  SourceState fixed;
  fixed.position = {geometry.source.center.x, geometry.source.center.y, 0};
  const auto [hit1, hit2] = propagate(fixed, geometry.arms);
  const auto& lat = geometry.lattice;
  const auto b1 = effective_impact(hit1, quad.alpha, lat);
  const auto b2_beta = effective_impact(hit2, quad.beta, lat);
  const auto b2_beta_prime = effective_impact(hit2, quad.beta_prime, lat);

  auto integrand = [&](double lambda) {
    const PolarizationState s{lambda};
    const double device1 = model1.probability(s, b1, quad.alpha) *
                           model1.probability(s, b1, quad.alpha_prime);
    const double term1 = model2.probability(s, b2_beta, quad.beta) *
                         model2.probability(s, b2_beta, quad.beta_prime);
    const double term2 = model2.probability(s, b2_beta_prime, quad.beta) *
                         model2.probability(s, b2_beta_prime, quad.beta_prime);
    return Values<1>{device1 * (term1 - term2)};
  };
  std::vector<double> breaks;
  for (double g : {quad.alpha, quad.alpha_prime}) {
    auto b = model1.lambda_breakpoints(g);
    breaks.insert(breaks.end(), b.begin(), b.end());
  }
  for (double g : {quad.beta, quad.beta_prime}) {
    auto b = model2.lambda_breakpoints(g);
    breaks.insert(breaks.end(), b.begin(), b.end());
  }
  return lambda_average<1>(integrand, breaks, tolerance)[0];
}

DiscretizedBound discretized_bound_check(const ExperimentGeometry& geometry,
                                         const DetectionModel& model1,
                                         const DetectionModel& model2,
                                         int lattice_bins, int lambda_bins,
                                         const SettingsQuad& quad) {
  geometry.validate();
  if (lattice_bins < 2) throw ConfigError("lattice_bins", "must be >= 2");
  if (lambda_bins < 2) throw ConfigError("lambda_bins", "must be >= 2");
  const std::uint64_t cells = static_cast<std::uint64_t>(lambda_bins) *
                              static_cast<std::uint64_t>(lattice_bins) *
                              static_cast<std::uint64_t>(lattice_bins);
  if (cells > kMaxDiscretizedCells) {
    throw ResourceError("discretization needs " + std::to_string(cells) +
                        " cells, limit is " +
                        std::to_string(kMaxDiscretizedCells));
  }

  const auto& src = geometry.source;
  double half_width = geometry.lattice.constant / 2;
  if (src.kind == SourceKind::gaussian) half_width = 4 * src.spread;
  if (src.kind == SourceKind::uniform_disc) half_width = src.spread;
  if (half_width == 0) half_width = geometry.lattice.constant / 2;

  struct Site {
    ImpactPoint hit1, hit2;
    double weight;
  };
  std::vector<Site> sites;
  double weight_sum = 0;
  const double step = 2 * half_width / lattice_bins;
  for (int iy = 0; iy < lattice_bins; ++iy) {
    for (int ix = 0; ix < lattice_bins; ++ix) {
      const Vec2 offset{-half_width + (ix + 0.5) * step,
                        -half_width + (iy + 0.5) * step};
      double w = 1;
      if (src.kind == SourceKind::gaussian && src.spread > 0) {
        const double r2 = offset.x * offset.x + offset.y * offset.y;
        w = std::exp(-r2 / (2 * src.spread * src.spread));
      } else if (src.kind == SourceKind::uniform_disc && src.spread > 0) {
        w = offset.norm() <= src.spread ? 1.0 : 0.0;
      }
      if (w == 0) continue;
      SourceState state;
      state.position = {src.center.x + offset.x, src.center.y + offset.y, 0};
      const auto [h1, h2] = propagate(state, geometry.arms);
      sites.push_back({h1, h2, w});
      weight_sum += w;
    }
  }

  const auto& lat = geometry.lattice;
  const GridFrame frame_a(quad.alpha, lat), frame_ap(quad.alpha_prime, lat);
  const GridFrame frame_b(quad.beta, lat), frame_bp(quad.beta_prime, lat);

  DiscretizedBound out;
  out.cells = cells;
  for (int k = 0; k < lambda_bins; ++k) {
    const PolarizationState s{(k + 0.5) * kPi / lambda_bins};
    for (const Site& site : sites) {
      const double w = site.weight / weight_sum / lambda_bins;
      const double p1[2] = {
          model1.probability(s, frame_a.reduce(site.hit1), quad.alpha),
          model1.probability(s, frame_ap.reduce(site.hit1), quad.alpha_prime)};
      const double p2[2] = {
          model2.probability(s, frame_b.reduce(site.hit2), quad.beta),
          model2.probability(s, frame_bp.reduce(site.hit2), quad.beta_prime)};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const double pp = p1[i] * p2[j];
          const double mm = (1 - p1[i]) * (1 - p2[j]);
          out.joint[2 * i + j] += w * pp;
          out.equal[2 * i + j] += w * (pp + mm);
        }
      }
    }
  }
  out.s_joint = out.joint[0] + out.joint[1] + out.joint[2] - out.joint[3];
  out.s_equal = out.equal[0] + out.equal[1] + out.equal[2] - out.equal[3];
  return out;
}

}  // namespace eprlab::oracle
