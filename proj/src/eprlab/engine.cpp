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

#include "eprlab/engine.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "eprlab/parallel.hpp"

namespace eprlab {
namespace {

class Hasher {
 public:
  Hasher& add(std::uint64_t v) {
    state_ = mix64(state_ ^ v);
    return *this;
  }
  Hasher& add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }
  template <class E>
    requires std::is_enum_v<E>
  Hasher& add(E e) {
    return add(static_cast<std::uint64_t>(e));
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0x6570726c6162ull;
};

void hash_model(Hasher& h, const ModelSpec& m) {
  h.add(m.kind).add(m.epsilon).add(m.amplitude).add(m.shape.profile).add(
      m.shape.scale);
}

struct Counts {
  std::uint64_t n1_plus = 0, n2_plus = 0;
  std::uint64_t pp = 0, pm = 0, mp = 0, mm = 0;
  std::uint64_t clamps = 0;

  void add(bool o1, bool o2) {
    n1_plus += o1;
    n2_plus += o2;
    pp += o1 && o2;
    pm += o1 && !o2;
    mp += !o1 && o2;
    mm += !o1 && !o2;
  }
};

CoincidenceResult fold(const std::vector<Counts>& chunks,
                       CoincidenceResult base) {
  for (const Counts& c : chunks) {
    base.n1_plus += c.n1_plus;
    base.n2_plus += c.n2_plus;
    base.n_pp += c.pp;
    base.n_pm += c.pm;
    base.n_mp += c.mp;
    base.n_mm += c.mm;
    base.clamp_events += c.clamps;
  }
  return base;
}

void check_events(std::uint64_t events) {
  if (events < 1) throw ConfigError("run.events", "must be >= 1");
  if (events >= EventStream::kMaxEvents) {
    throw ConfigError("run.events", "exceeds the stream capacity of 2^48");
  }
}

}  // namespace

Estimate binomial_estimate(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {};
  const double p = static_cast<double>(k) / static_cast<double>(n);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(n))};
}

void RunConfig::validate() const {
  geometry.validate();
  model1.validate("model.device1");
  model2.validate("model.device2");
  if (!std::isfinite(alpha)) throw ConfigError("settings.alpha", "not finite");
  if (!std::isfinite(beta)) throw ConfigError("settings.beta", "not finite");
  check_events(events);
}

std::uint64_t RunConfig::fingerprint() const {
  Hasher h;
  // The entangled reference ignores geometry and local models.
  if (is_qm_reference()) return h.add(ModelKind::qm_reference).value();
  const auto& s = geometry.source;
  h.add(s.kind).add(s.center.x).add(s.center.y).add(s.spread).add(
      s.cone_half_angle);
  h.add(geometry.arms.length1).add(geometry.arms.length2);
  h.add(geometry.lattice.constant)
      .add(geometry.lattice.rotation_center.x)
      .add(geometry.lattice.rotation_center.y);
  hash_model(h, model1);
  hash_model(h, model2);
  return h.value();
}

void SettingsQuad::validate() const {
  for (double a : {alpha, alpha_prime, beta, beta_prime}) {
    if (!std::isfinite(a)) throw ConfigError("settings.quad", "not finite");
  }
  if (alpha == alpha_prime || beta == beta_prime) {
    throw ConfigError("settings.quad",
                      "needs four distinct setting pairs (alpha != alpha', "
                      "beta != beta')");
  }
}

std::array<std::pair<double, double>, 4> SettingsQuad::pairs() const {
  return {{{alpha, beta},
           {alpha, beta_prime},
           {alpha_prime, beta},
           {alpha_prime, beta_prime}}};
}

std::uint64_t quad_label(std::uint64_t base_label, unsigned member) {
  return base_label * 16 + 1 + member;
}

CoincidenceKernel::CoincidenceKernel(const RunConfig& config)
    : source_(config.geometry.source),
      arms_(config.geometry.arms),
      frame1_(config.alpha, config.geometry.lattice),
      frame2_(config.beta, config.geometry.lattice),
      model1_(make_model(config.model1)),
      model2_(make_model(config.model2)),
      alpha_(config.alpha),
      beta_(config.beta),
      key_{config.seed, config.label} {}

EventRecord CoincidenceKernel::operator()(std::uint64_t event) const {
  EventStream stream(key_, event);
  EventRecord r;
  r.sample = sample_hidden_variables(source_, stream);
  const auto [hit1, hit2] = propagate(r.sample.source, arms_);
  r.impact1 = frame1_.reduce(hit1);
  r.impact2 = frame2_.reduce(hit2);
  const Evaluation e1 = model1_->evaluate(r.sample.polarization, r.impact1, alpha_);
  const Evaluation e2 = model2_->evaluate(r.sample.polarization, r.impact2, beta_);
  r.p1 = e1.probability;
  r.p2 = e2.probability;
  r.clamped = e1.clamped || e2.clamped;
  r.outcome1 = stream.uniform(slot::kOutcome1) < r.p1;
  r.outcome2 = stream.uniform(slot::kOutcome2) < r.p2;
  return r;
}

CoincidenceResult run_coincidence(const RunConfig& config) {
  config.validate();
  if (config.is_qm_reference()) {
    if (config.model1.kind != config.model2.kind) {
      throw ConfigError("model", "qm-reference must be used on both devices");
    }
    return run_qm_pair(config.alpha, config.beta, config.events,
                       {config.seed, config.label}, config.threads);
  }
  const CoincidenceKernel kernel(config);
  auto chunks = run_chunks<Counts>(
      config.events, config.threads, [&](std::uint64_t b, std::uint64_t e) {
        Counts c;
        for (std::uint64_t i = b; i < e; ++i) {
          EventRecord r;
          try {
            r = kernel(i);
          } catch (const GeometryError& err) {
            throw GeometryError("event " + std::to_string(i) + ": " +
                                err.what());
          }
          c.add(r.outcome1, r.outcome2);
          c.clamps += r.clamped;
        }
        return c;
      });
  CoincidenceResult base;
  base.alpha = config.alpha;
  base.beta = config.beta;
  base.seed = config.seed;
  base.label = config.label;
  base.fingerprint = config.fingerprint();
  base.events = config.events;
  return fold(chunks, base);
}

SinglesResult run_singles(const RunConfig& config, int device,
                          double setting) {
  config.validate();
  if (device != 1 && device != 2) throw ConfigError("device", "must be 1 or 2");
  if (!std::isfinite(setting)) throw ConfigError("setting", "not finite");

  SinglesResult out;
  out.device = device;
  out.setting = setting;
  out.seed = config.seed;
  out.label = config.label;
  out.fingerprint = config.fingerprint();
  out.events = config.events;
  const StreamKey key{config.seed, config.label};

  if (config.is_qm_reference()) {
    // Each half of the entangled pair is unpolarized on its own.
    auto chunks = run_chunks<std::uint64_t>(
        config.events, config.threads, [&](std::uint64_t b, std::uint64_t e) {
          std::uint64_t n = 0;
          for (std::uint64_t i = b; i < e; ++i) {
            EventStream stream(key, i);
            n += stream.uniform(device == 1 ? slot::kOutcome1
                                            : slot::kOutcome2) < 0.5;
          }
          return n;
        });
    for (auto n : chunks) out.n_plus += n;
    return out;
  }

  const auto& geo = config.geometry;
  const GridFrame frame(setting, geo.lattice);
  const ModelPtr model = make_model(device == 1 ? config.model1 : config.model2);
  struct Acc {
    std::uint64_t plus = 0, clamps = 0;
  };
  auto chunks = run_chunks<Acc>(
      config.events, config.threads, [&](std::uint64_t b, std::uint64_t e) {
        Acc acc;
        for (std::uint64_t i = b; i < e; ++i) {
          EventStream stream(key, i);
          const auto s = sample_hidden_variables(geo.source, stream);
          std::pair<ImpactPoint, ImpactPoint> hits;
          try {
            hits = propagate(s.source, geo.arms);
          } catch (const GeometryError& err) {
            throw GeometryError("event " + std::to_string(i) + ": " +
                                err.what());
          }
          const auto b_eff =
              frame.reduce(device == 1 ? hits.first : hits.second);
          const Evaluation ev = model->evaluate(s.polarization, b_eff, setting);
          const unsigned outcome_slot =
              device == 1 ? slot::kOutcome1 : slot::kOutcome2;
          acc.plus += stream.uniform(outcome_slot) < ev.probability;
          acc.clamps += ev.clamped;
        }
        return acc;
      });
  for (const Acc& a : chunks) {
    out.n_plus += a.plus;
    out.clamp_events += a.clamps;
  }
  return out;
}

QuadResult run_quad(const RunConfig& base, const SettingsQuad& quad,
                    std::uint64_t events_per_pair) {
  quad.validate();
  RunConfig cfg = base;
  cfg.events = events_per_pair;
  cfg.validate();

  QuadResult out;
  out.quad = quad;
  const auto pairs = quad.pairs();
  for (unsigned k = 0; k < 4; ++k) {
    cfg.alpha = pairs[k].first;
    cfg.beta = pairs[k].second;
    cfg.label = quad_label(base.label, k);
    out.pairs[k] = run_coincidence(cfg);
  }
  cfg.label = quad_label(base.label, 4);
  out.singles1[0] = run_singles(cfg, 1, quad.alpha);
  cfg.label = quad_label(base.label, 5);
  out.singles1[1] = run_singles(cfg, 1, quad.alpha_prime);
  cfg.label = quad_label(base.label, 6);
  out.singles2[0] = run_singles(cfg, 2, quad.beta);
  cfg.label = quad_label(base.label, 7);
  out.singles2[1] = run_singles(cfg, 2, quad.beta_prime);
  return out;
}

CoincidenceResult run_qm_pair(double alpha, double beta, std::uint64_t events,
                              StreamKey key, unsigned threads) {
  check_events(events);
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ConfigError("settings", "not finite");
  }
  const double c = std::cos(alpha - beta);
  const double p_equal = c * c;
  auto chunks = run_chunks<Counts>(
      events, threads, [&](std::uint64_t b, std::uint64_t e) {
        Counts acc;
        for (std::uint64_t i = b; i < e; ++i) {
          EventStream stream(key, i);
          const bool o1 = stream.uniform(slot::kOutcome1) < 0.5;
          const bool same = stream.uniform(slot::kOutcome2) < p_equal;
          acc.add(o1, same ? o1 : !o1);
        }
        return acc;
      });
  CoincidenceResult base;
  base.alpha = alpha;
  base.beta = beta;
  base.seed = key.seed;
  base.label = key.label;
  RunConfig qm;
  qm.model1.kind = ModelKind::qm_reference;
  base.fingerprint = qm.fingerprint();
  base.events = events;
  return fold(chunks, base);
}

QuadResult run_qm_reference(const SettingsQuad& quad, std::uint64_t events,
                            std::uint64_t seed, unsigned threads,
                            std::uint64_t label) {
  RunConfig cfg;
  cfg.model1.kind = cfg.model2.kind = ModelKind::qm_reference;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.label = label;
  return run_quad(cfg, quad, events);
}

}  // namespace eprlab
