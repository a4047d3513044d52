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

#include "eprlab/inequalities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "eprlab/oracle.hpp"
#include "eprlab/parallel.hpp"

namespace eprlab {
namespace {

double quadrature_se(std::initializer_list<double> ses) {
  double s = 0;
  for (double e : ses) s += e * e;
  return std::sqrt(s);
}

}  // namespace

double Statistic::excess_in_se() const {
  const double d = value - bound;
  if (se > 0) return d / se;
  if (d == 0) return 0;
  return d > 0 ? std::numeric_limits<double>::infinity()
               : -std::numeric_limits<double>::infinity();
}

Statistic chsh(const std::array<Estimate, 4>& p) {
  return {p[0].value + p[1].value + p[2].value - p[3].value,
          quadrature_se({p[0].se, p[1].se, p[2].se, p[3].se}), 2.0};
}

std::string_view to_string(ChConvention c) {
  return c == ChConvention::paper ? "paper" : "standard";
}

ChConvention ch_convention_from_string(std::string_view text) {
  if (text == "paper") return ChConvention::paper;
  if (text == "standard") return ChConvention::standard;
  throw ConfigError("convention", "expected 'paper' or 'standard', got '" +
                                      std::string(text) + "'");
}

Statistic ch_statistic(const std::array<Estimate, 4>& c, Estimate p1_alpha,
                       Estimate p1_alpha_prime, Estimate p2_beta,
                       ChConvention convention) {
  const Estimate& p1 =
      convention == ChConvention::paper ? p1_alpha : p1_alpha_prime;
  return {c[0].value - c[1].value + c[2].value + c[3].value - p1.value -
              p2_beta.value,
          quadrature_se({c[0].se, c[1].se, c[2].se, c[3].se, p1.se, p2_beta.se}),
          0.0};
}

Statistic ch_statistic(const QuadResult& q, ChConvention convention) {
  const std::uint64_t fp = q.pairs[0].fingerprint;
  auto same = [fp](std::uint64_t other) { return other == fp; };
  bool ok = std::all_of(q.pairs.begin(), q.pairs.end(),
                        [&](const auto& r) { return same(r.fingerprint); });
  ok = ok && same(q.singles1[0].fingerprint) && same(q.singles1[1].fingerprint) &&
       same(q.singles2[0].fingerprint);
  if (!ok) {
    throw AnalysisError(
        "coincidence and singles runs come from different configurations");
  }
  return ch_statistic({q.pairs[0].joint(), q.pairs[1].joint(),
                       q.pairs[2].joint(), q.pairs[3].joint()},
                      q.singles1[0].estimate(), q.singles1[1].estimate(),
                      q.singles2[0].estimate(), convention);
}

InequalityReport analyze(const QuadResult& q) {
  InequalityReport r;
  r.s_joint = chsh({q.pairs[0].joint(), q.pairs[1].joint(), q.pairs[2].joint(),
                    q.pairs[3].joint()});
  r.s_equal = chsh({q.pairs[0].equal(), q.pairs[1].equal(), q.pairs[2].equal(),
                    q.pairs[3].equal()});
  r.s_corr = {2 * r.s_equal.value - 2, 2 * r.s_equal.se, 2.0};
  r.ch_paper = ch_statistic(q, ChConvention::paper);
  r.ch_standard = ch_statistic(q, ChConvention::standard);
  return r;
}

ResidualEstimate bell_residual(const RunConfig& config,
                               const SettingsQuad& quad, std::uint64_t events,
                               std::uint64_t seed) {
  RunConfig cfg = config;
  cfg.events = events;
  cfg.seed = seed;
  cfg.validate();
  quad.validate();
  if (cfg.is_qm_reference()) {
    throw ConfigError("model", "the residual is defined for local models only");
  }
  const auto& geo = cfg.geometry;
  const ModelPtr m1 = make_model(cfg.model1);
  const ModelPtr m2 = make_model(cfg.model2);
  const GridFrame frame_a(quad.alpha, geo.lattice);
  const GridFrame frame_b(quad.beta, geo.lattice);
  const GridFrame frame_bp(quad.beta_prime, geo.lattice);
  const StreamKey key{seed, cfg.label};

  struct Sums {
    double sum = 0;
    double sum_sq = 0;
  };
  auto chunks = run_chunks<Sums>(
      events, cfg.threads, [&](std::uint64_t begin, std::uint64_t end) {
        Sums acc;
        for (std::uint64_t i = begin; i < end; ++i) {
          EventStream stream(key, i);
          const auto s = sample_hidden_variables(geo.source, stream);
          std::pair<ImpactPoint, ImpactPoint> hits;
          try {
            hits = propagate(s.source, geo.arms);
          } catch (const GeometryError& err) {
            throw GeometryError("event " + std::to_string(i) + ": " +
                                err.what());
          }
          const auto b1 = frame_a.reduce(hits.first);
          const auto b2 = frame_b.reduce(hits.second);
          const auto b2p = frame_bp.reduce(hits.second);
          const auto& pol = s.polarization;
          const double device1 = m1->probability(pol, b1, quad.alpha) *
                                 m1->probability(pol, b1, quad.alpha_prime);
          const double term1 = m2->probability(pol, b2, quad.beta) *
                               m2->probability(pol, b2, quad.beta_prime);
          const double term2 = m2->probability(pol, b2p, quad.beta) *
                               m2->probability(pol, b2p, quad.beta_prime);
          const double d = device1 * (term1 - term2);
          acc.sum += d;
          acc.sum_sq += d * d;
        }
        return acc;
      });
  Sums total;
  for (const Sums& c : chunks) {
    total.sum += c.sum;
    total.sum_sq += c.sum_sq;
  }
  const double n = static_cast<double>(events);
  ResidualEstimate out;
  out.events = events;
  out.value = total.sum / n;
  if (events > 1) {
    const double var =
        std::max(0.0, (total.sum_sq - n * out.value * out.value) / (n - 1));
    out.se = std::sqrt(var / n);
  }
  return out;
}

Condition10Report condition10_test(const ExperimentGeometry& geometry,
                                   const std::vector<double>& settings,
                                   std::uint64_t events, std::uint64_t seed,
                                   double significance, int bins) {
  if (settings.size() < 2) {
    throw StatisticsError("condition test needs at least two settings");
  }
  if (events < kMinHistogramEvents) {
    throw StatisticsError("condition test needs at least " +
                          std::to_string(kMinHistogramEvents) +
                          " events per setting");
  }
  if (bins < 2) throw ConfigError("bins", "must be >= 2");
  geometry.validate();

  struct PerSetting {
    ImpactHistogram histogram;
    std::vector<double> xs, ys;
  };
  std::vector<PerSetting> data;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto reduced =
        reduced_impacts(geometry, settings[k], events, {seed, k});
    PerSetting p;
    p.histogram = histogram_of(reduced, geometry.lattice.constant, bins);
    p.xs.reserve(reduced.size());
    p.ys.reserve(reduced.size());
    for (const Vec2& b : reduced) {
      p.xs.push_back(b.x);
      p.ys.push_back(b.y);
    }
    data.push_back(std::move(p));
  }

  Condition10Report report;
  report.significance = significance;
  report.bins = bins;
  report.events = events;
  report.pass = true;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    for (std::size_t j = i + 1; j < settings.size(); ++j) {
      PairwiseTest t;
      t.gamma_a = settings[i];
      t.gamma_b = settings[j];
      t.chi_squared = stats::chi_squared_two_sample(data[i].histogram.counts,
                                                    data[j].histogram.counts);
      t.ks_x = stats::ks_two_sample(data[i].xs, data[j].xs);
      t.ks_y = stats::ks_two_sample(data[i].ys, data[j].ys);
      t.pass = t.chi_squared.p_value >= significance &&
               t.ks_x.p_value >= significance &&
               t.ks_y.p_value >= significance;
      report.pass = report.pass && t.pass;
      report.pairs.push_back(t);
    }
  }
  return report;
}

std::string_view to_string(StatisticChoice s) {
  switch (s) {
    case StatisticChoice::s_joint:
      return "s-joint";
    case StatisticChoice::s_equal:
      return "s-equal";
    case StatisticChoice::s_corr:
      return "s-corr";
    case StatisticChoice::ch_standard:
      return "ch-standard";
    case StatisticChoice::ch_paper:
      return "ch-paper";
  }
  return "?";
}

StatisticChoice statistic_choice_from_string(std::string_view text) {
  for (auto s : {StatisticChoice::s_joint, StatisticChoice::s_equal,
                 StatisticChoice::s_corr, StatisticChoice::ch_standard,
                 StatisticChoice::ch_paper}) {
    if (to_string(s) == text) return s;
  }
  throw ConfigError("statistic", "unknown statistic '" + std::string(text) +
                                     "' (s-joint, s-equal, s-corr, "
                                     "ch-standard, ch-paper)");
}

std::string_view to_string(SearchMethod m) {
  return m == SearchMethod::grid ? "grid" : "coordinate-descent";
}

SearchMethod search_method_from_string(std::string_view text) {
  if (text == "grid") return SearchMethod::grid;
  if (text == "coordinate-descent") return SearchMethod::coordinate_descent;
  throw ConfigError("search", "expected 'grid' or 'coordinate-descent'");
}

namespace {

struct PairProbabilities {
  Estimate joint;
  Estimate equal;
};

// Memoized per-pair and per-setting probabilities for the settings scan.
class PairSource {
 public:
  PairSource(const RunConfig& config, const ScanOptions& options)
      : config_(config), options_(options) {
    if (!config_.is_qm_reference()) {
      model1_ = make_model(config_.model1);
      model2_ = make_model(config_.model2);
      if (options_.exact && (model1_->uses_impact_parameter() ||
                             model2_->uses_impact_parameter())) {
        throw OracleError(
            "exact scans need impact-independent models; use sampling");
      }
    }
  }

  PairProbabilities pair(double alpha, double beta) {
    const auto key = std::make_pair(std::bit_cast<std::uint64_t>(alpha),
                                    std::bit_cast<std::uint64_t>(beta));
    if (auto it = pairs_.find(key); it != pairs_.end()) return it->second;

    PairProbabilities p;
    if (options_.exact) {
      const auto q =
          config_.is_qm_reference()
              ? oracle::qm_reference_probabilities(alpha, beta)
              : oracle::quadrature_coincidence(*model1_, *model2_, alpha, beta);
      p = {{q.joint, 0}, {q.equal, 0}};
    } else {
      RunConfig cfg = config_;
      cfg.alpha = alpha;
      cfg.beta = beta;
      cfg.events = options_.events_per_pair;
      cfg.label = mix64(mix64(key.first) ^ key.second);
      const auto r = run_coincidence(cfg);
      p = {r.joint(), r.equal()};
    }
    pairs_.emplace(key, p);
    return p;
  }

  Estimate singles(int device, double setting) {
    const auto key =
        std::make_pair(device, std::bit_cast<std::uint64_t>(setting));
    if (auto it = singles_.find(key); it != singles_.end()) return it->second;

    Estimate e;
    if (options_.exact) {
      if (config_.is_qm_reference()) {
        e = {0.5, 0};
      } else {
        // Singles of an impact-independent model against a dummy partner.
        const auto q = oracle::quadrature_coincidence(*model1_, *model2_,
                                                      setting, setting);
        e = {device == 1 ? q.singles1 : q.singles2, 0};
      }
    } else {
      RunConfig cfg = config_;
      cfg.events = options_.events_per_pair;
      cfg.label = mix64(mix64(key.second) ^ (0x5157ull + device));
      e = run_singles(cfg, device, setting).estimate();
    }
    singles_.emplace(key, e);
    return e;
  }

 private:
  RunConfig config_;
  ScanOptions options_;
  ModelPtr model1_;
  ModelPtr model2_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, PairProbabilities> pairs_;
  std::map<std::pair<int, std::uint64_t>, Estimate> singles_;
};

Statistic evaluate_quad(PairSource& source, StatisticChoice choice,
                        const SettingsQuad& q) {
  const auto pairs = q.pairs();
  std::array<PairProbabilities, 4> p;
  for (int k = 0; k < 4; ++k) p[k] = source.pair(pairs[k].first, pairs[k].second);
  switch (choice) {
    case StatisticChoice::s_joint:
      return chsh({p[0].joint, p[1].joint, p[2].joint, p[3].joint});
    case StatisticChoice::s_equal:
      return chsh({p[0].equal, p[1].equal, p[2].equal, p[3].equal});
    case StatisticChoice::s_corr: {
      const auto s = chsh({p[0].equal, p[1].equal, p[2].equal, p[3].equal});
      return {2 * s.value - 2, 2 * s.se, 2.0};
    }
    case StatisticChoice::ch_standard:
    case StatisticChoice::ch_paper: {
      const auto convention = choice == StatisticChoice::ch_paper
                                  ? ChConvention::paper
                                  : ChConvention::standard;
      return ch_statistic({p[0].joint, p[1].joint, p[2].joint, p[3].joint},
                          source.singles(1, q.alpha),
                          source.singles(1, q.alpha_prime),
                          source.singles(2, q.beta), convention);
    }
  }
  return {};
}

bool lexicographic_less(const SettingsQuad& a, const SettingsQuad& b) {
  return std::tie(a.alpha, a.alpha_prime, a.beta, a.beta_prime) <
         std::tie(b.alpha, b.alpha_prime, b.beta, b.beta_prime);
}

}  // namespace

ScanResult maximize_settings(const RunConfig& config,
                             const ScanOptions& options) {
  if (options.budget < 1) {
    throw ConfigError("budget", "must allow at least one evaluation");
  }
  if (!(std::isfinite(options.grid_step) && options.grid_step > 0 &&
        options.grid_step < kPi)) {
    throw ConfigError("grid_step", "must lie in (0, pi)");
  }
  {
    RunConfig probe = config;
    probe.events = options.exact ? 1 : options.events_per_pair;
    probe.validate();
  }

  PairSource source(config, options);
  ScanResult result;
  bool have_best = false;
  std::set<SettingsQuad, decltype(&lexicographic_less)> visited(&lexicographic_less);
  auto consider = [&](const SettingsQuad& q) {
    if (!visited.insert(q).second) return false;
    const Statistic s = evaluate_quad(source, options.statistic, q);
    ++result.evaluations;
    result.rows.push_back({q, s});
    if (!have_best || s.value > result.best.value) {
      result.best = s;
      result.best_quad = q;
      have_best = true;
      return true;
    }
    return false;
  };

  std::vector<double> angles;
  for (int k = 0;; ++k) {
    const double a = k * options.grid_step;
    if (a >= kPi - 1e-12) break;
    angles.push_back(a);
  }

  for (double a : angles) {
    for (double ap : angles) {
      if (ap == a) continue;
      for (double b : angles) {
        for (double bp : angles) {
          if (bp == b) continue;
          if (result.evaluations >= options.budget) goto grid_done;
          consider({a, ap, b, bp});
        }
      }
    }
  }
grid_done:

  if (options.method == SearchMethod::coordinate_descent) {
    double step = options.grid_step / 2;
    for (int level = 0; level < 40 && result.evaluations < options.budget;
         ++level) {
      bool improved = false;
      for (int coord = 0; coord < 4; ++coord) {
        for (double sign : {+1.0, -1.0}) {
          if (result.evaluations >= options.budget) break;
          SettingsQuad q = result.best_quad;
          double* angle[] = {&q.alpha, &q.alpha_prime, &q.beta, &q.beta_prime};
          // Settings are pi-periodic; keep them in [0, pi).
          double a = std::fmod(*angle[coord] + sign * step, kPi);
          if (a < 0) a += kPi;
          *angle[coord] = a;
          if (q.alpha == q.alpha_prime || q.beta == q.beta_prime) continue;
          if (visited.contains(q)) continue;
          improved = consider(q) || improved;
        }
      }
      if (!improved) step /= 2;
    }
  }

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ScanRow& x, const ScanRow& y) {
                     return lexicographic_less(x.quad, y.quad);
                   });
  return result;
}

}  // namespace eprlab
