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

#include "eprlab/eprlab.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "eprlab/commands.hpp"
#include "eprlab/config.hpp"
#include "eprlab/engine.hpp"
#include "eprlab/inequalities.hpp"
#include "eprlab/report.hpp"

struct eprlab_config {
  eprlab::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

eprlab_status fail(eprlab_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `fn` and converts any escaping exception into a status code.
template <class Fn>
eprlab_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    return fn();
  } catch (const eprlab::ParseError& e) {
    return fail(EPRLAB_PARSE_ERROR, e.what());
  } catch (const eprlab::ConfigError& e) {
    return fail(EPRLAB_INVALID_CONFIG, e.what());
  } catch (const eprlab::StatisticsError& e) {
    return fail(EPRLAB_INVALID_CONFIG, e.what());
  } catch (const eprlab::AnalysisError& e) {
    return fail(EPRLAB_INVALID_CONFIG, e.what());
  } catch (const eprlab::OracleError& e) {
    return fail(EPRLAB_INVALID_CONFIG, e.what());
  } catch (const eprlab::ResourceError& e) {
    return fail(EPRLAB_INVALID_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EPRLAB_RUNTIME_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(EPRLAB_RUNTIME_ERROR, e.what());
  } catch (...) {
    return fail(EPRLAB_RUNTIME_ERROR, "unknown error");
  }
}

eprlab_status null_argument(const char* name) {
  g_last_error = std::string("null argument: ") + name;
  return EPRLAB_INVALID_CONFIG;
}

eprlab_counts to_c(const eprlab::CoincidenceResult& r) {
  return {r.events, r.n1_plus, r.n2_plus, r.n_pp,
          r.n_pm,   r.n_mp,    r.n_mm,    r.clamp_events};
}

eprlab_statistic to_c(const eprlab::Statistic& s) {
  return {s.value, s.se, s.bound};
}

eprlab::SettingsQuad quad_from(const double q[4]) {
  return {q[0], q[1], q[2], q[3]};
}

std::filesystem::path output_path(const char* given, const char* fallback) {
  if (given && *given) return given;
  return eprlab::default_output_dir() / fallback;
}

eprlab::StatisticChoice statistic_from(eprlab_statistic_choice c) {
  switch (c) {
    case EPRLAB_S_JOINT:
      return eprlab::StatisticChoice::s_joint;
    case EPRLAB_S_EQUAL:
      return eprlab::StatisticChoice::s_equal;
    case EPRLAB_S_CORR:
      return eprlab::StatisticChoice::s_corr;
    case EPRLAB_CH_STANDARD:
      return eprlab::StatisticChoice::ch_standard;
    case EPRLAB_CH_PAPER:
      return eprlab::StatisticChoice::ch_paper;
  }
  throw eprlab::ConfigError("statistic", "unknown statistic");
}

}  // namespace

extern "C" {

const char* eprlab_version(void) { return "0.1.0"; }

const char* eprlab_last_error(void) { return g_last_error.c_str(); }

void eprlab_scan_options_init(eprlab_scan_options* options) {
  if (!options) return;
  const eprlab::ScanOptions d;
  options->statistic = EPRLAB_S_EQUAL;
  options->search = EPRLAB_SEARCH_GRID;
  options->grid_step = d.grid_step;
  options->budget = d.budget;
  options->exact = d.exact ? 1 : 0;
  options->events_per_pair = d.events_per_pair;
}

eprlab_status eprlab_parse_angle(const char* text, double* radians) {
  if (!text) return null_argument("text");
  if (!radians) return null_argument("radians");
  return guarded([&] {
    *radians = eprlab::parse_angle(text, "angle");
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_config_load(const char* path, eprlab_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new eprlab_config{eprlab::load_config(path)};
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_config_parse(const char* text, eprlab_config** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new eprlab_config{eprlab::parse_config(text)};
    return EPRLAB_OK;
  });
}

void eprlab_config_free(eprlab_config* config) { delete config; }

eprlab_status eprlab_config_set_seed(eprlab_config* config, uint64_t seed) {
  if (!config) return null_argument("config");
  config->config.seed = seed;
  return EPRLAB_OK;
}

eprlab_status eprlab_config_set_events(eprlab_config* config, uint64_t events) {
  if (!config) return null_argument("config");
  return guarded([&] {
    auto updated = config->config;
    updated.events = events;
    updated.validate();
    config->config = std::move(updated);
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_config_set_threads(eprlab_config* config,
                                        unsigned threads) {
  if (!config) return null_argument("config");
  config->config.threads = threads;
  return EPRLAB_OK;
}

namespace {

eprlab_status set_settings(eprlab_config* config, eprlab::SettingsKind kind,
                           const double* values, size_t count) {
  if (!config) return null_argument("config");
  if (!values && count > 0) return null_argument("settings");
  return guarded([&] {
    auto updated = config->config;
    updated.settings_kind = kind;
    updated.settings.assign(values, values + count);
    updated.validate();
    config->config = std::move(updated);
    return EPRLAB_OK;
  });
}

}  // namespace

eprlab_status eprlab_config_set_pair(eprlab_config* config, double alpha,
                                     double beta) {
  const double pair[2] = {alpha, beta};
  return set_settings(config, eprlab::SettingsKind::pair, pair, 2);
}

eprlab_status eprlab_config_set_quad(eprlab_config* config,
                                     const double quad[4]) {
  if (!quad) return null_argument("quad");
  return set_settings(config, eprlab::SettingsKind::quad, quad, 4);
}

eprlab_status eprlab_config_set_list(eprlab_config* config,
                                     const double* settings, size_t count) {
  return set_settings(config, eprlab::SettingsKind::list, settings, count);
}

eprlab_status eprlab_config_to_json(const eprlab_config* config, char* buffer,
                                    size_t* size) {
  if (!config) return null_argument("config");
  if (!size) return null_argument("size");
  return guarded([&] {
    const std::string text = eprlab::to_json(config->config).dump(2);
    if (buffer) {
      if (*size < text.size() + 1) {
        *size = text.size();
        return fail(EPRLAB_INVALID_CONFIG, "buffer too small");
      }
      std::memcpy(buffer, text.c_str(), text.size() + 1);
    }
    *size = text.size();
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_run_coincidence(const eprlab_config* config, double alpha,
                                     double beta, eprlab_counts* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto run = config->config.run_config();
    run.alpha = alpha;
    run.beta = beta;
    *out = to_c(eprlab::run_coincidence(run));
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_run_quad(const eprlab_config* config, const double quad[4],
                              eprlab_counts pairs[4],
                              eprlab_inequalities* inequalities) {
  if (!config) return null_argument("config");
  if (!quad) return null_argument("quad");
  return guarded([&] {
    const auto& c = config->config;
    const auto result =
        eprlab::run_quad(c.run_config(), quad_from(quad), c.events);
    if (pairs) {
      for (int k = 0; k < 4; ++k) pairs[k] = to_c(result.pairs[k]);
    }
    if (inequalities) {
      const auto r = eprlab::analyze(result);
      *inequalities = {to_c(r.s_joint), to_c(r.s_equal), to_c(r.s_corr),
                       to_c(r.ch_paper), to_c(r.ch_standard)};
    }
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_bell_residual(const eprlab_config* config,
                                   const double quad[4], double* value,
                                   double* se) {
  if (!config) return null_argument("config");
  if (!quad) return null_argument("quad");
  return guarded([&] {
    const auto& c = config->config;
    const auto r =
        eprlab::bell_residual(c.run_config(), quad_from(quad), c.events, c.seed);
    if (value) *value = r.value;
    if (se) *se = r.se;
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_simulate(const eprlab_config* config,
                              const char* out_path) {
  if (!config) return null_argument("config");
  return guarded([&] {
    const auto report = eprlab::simulate(config->config);
    eprlab::write_atomic(output_path(out_path, "report.json"),
                         report.dump(2) + "\n");
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_scan(const eprlab_config* config,
                          const eprlab_scan_options* options,
                          const char* out_path, eprlab_statistic* best,
                          double best_quad[4]) {
  if (!config) return null_argument("config");
  if (!options) return null_argument("options");
  return guarded([&] {
    eprlab::ScanOptions o;
    o.statistic = statistic_from(options->statistic);
    o.method = options->search == EPRLAB_SEARCH_COORDINATE_DESCENT
                   ? eprlab::SearchMethod::coordinate_descent
                   : eprlab::SearchMethod::grid;
    o.grid_step = options->grid_step;
    o.budget = options->budget;
    o.exact = options->exact != 0;
    o.events_per_pair = options->events_per_pair;
    auto run = config->config.run_config();
    const auto result = eprlab::maximize_settings(run, o);
    eprlab::write_atomic(output_path(out_path, "scan.csv"),
                         eprlab::scan_csv(result, o.statistic));
    if (best) *best = to_c(result.best);
    if (best_quad) {
      const auto& q = result.best_quad;
      best_quad[0] = q.alpha;
      best_quad[1] = q.alpha_prime;
      best_quad[2] = q.beta;
      best_quad[3] = q.beta_prime;
    }
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_residual(const eprlab_config* config, const double* quad,
                              const char* out_path) {
  if (!config) return null_argument("config");
  return guarded([&] {
    std::optional<eprlab::SettingsQuad> q;
    if (quad) q = quad_from(quad);
    const auto report = eprlab::residual(config->config, q);
    eprlab::write_atomic(output_path(out_path, "residual.json"),
                         report.dump(2) + "\n");
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_hist(const eprlab_config* config, const double* settings,
                          size_t count, const char* out_dir) {
  if (!config) return null_argument("config");
  if (!settings && count > 0) return null_argument("settings");
  return guarded([&] {
    const auto& c = config->config;
    std::vector<double> list(settings, settings + count);
    if (!settings) list = c.settings;
    const auto out = eprlab::hist(c, list);
    const std::filesystem::path dir =
        out_dir && *out_dir ? std::filesystem::path(out_dir)
                            : eprlab::default_output_dir();
    for (std::size_t k = 0; k < out.histograms.size(); ++k) {
      eprlab::write_atomic(dir / ("hist_" + std::to_string(k) + ".csv"),
                           eprlab::histogram_csv(out.histograms[k].second));
    }
    if (out.condition10) {
      eprlab::Json doc;
      doc["schema"] = eprlab::kReportSchema;
      doc["kind"] = "condition10";
      doc["config"] = eprlab::to_json(c);
      doc["condition10"] = eprlab::condition10_json(*out.condition10);
      eprlab::write_atomic(dir / "condition10.json", doc.dump(2) + "\n");
    }
    return EPRLAB_OK;
  });
}

eprlab_status eprlab_verify(const char* fixture_path, unsigned threads,
                            eprlab_line_callback callback, void* user) {
  return guarded([&] {
    std::optional<std::filesystem::path> fixture;
    if (fixture_path && *fixture_path) fixture = fixture_path;
    const auto outcome = eprlab::verify(fixture, threads);
    if (callback) {
      for (const auto& c : outcome.checks) {
        const std::string line =
            std::string(c.pass ? "PASS  " : "FAIL  ") + c.name + "  (" +
            c.detail + ")";
        callback(line.c_str(), user);
      }
    }
    if (!outcome.pass()) {
      return fail(EPRLAB_CHECK_FAILED, "one or more verification checks failed");
    }
    return EPRLAB_OK;
  });
}

}  // extern "C"
