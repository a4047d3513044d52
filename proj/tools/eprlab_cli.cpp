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

// eprlab command-line front end. Talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eprlab/eprlab.h"

namespace {

struct ConfigDeleter {
  void operator()(eprlab_config* c) const { eprlab_config_free(c); }
};
using ConfigHandle = std::unique_ptr<eprlab_config, ConfigDeleter>;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> events;
  std::optional<unsigned> threads;
  std::string out;
};

struct ScanFlags {
  std::string statistic = "s-equal";
  std::string convention;
  std::string grid_step = "11.25 deg";
  std::optional<std::uint64_t> budget;
  std::string search = "grid";
  bool exact = false;
  std::optional<std::uint64_t> events_per_pair;
};

int report(eprlab_status status) {
  if (status != EPRLAB_OK) {
    std::fprintf(stderr, "eprlab: %s\n", eprlab_last_error());
  }
  return static_cast<int>(status);
}

int usage_error(const std::string& message) {
  std::fprintf(stderr, "eprlab: %s\n", message.c_str());
  return EPRLAB_PARSE_ERROR;
}

// Loads the config and applies command-line overrides.
eprlab_status open_config(const CommonOptions& o, ConfigHandle& out) {
  eprlab_config* raw = nullptr;
  eprlab_status s = eprlab_config_load(o.config.c_str(), &raw);
  if (s != EPRLAB_OK) return s;
  out.reset(raw);
  if (o.seed) s = eprlab_config_set_seed(raw, *o.seed);
  if (s == EPRLAB_OK && o.events) s = eprlab_config_set_events(raw, *o.events);
  if (s == EPRLAB_OK && o.threads) s = eprlab_config_set_threads(raw, *o.threads);
  return s;
}

// Parses angle strings such as "45 deg" in order.
eprlab_status parse_angles(const std::vector<std::string>& items,
                           std::vector<double>& out) {
  out.clear();
  for (const auto& item : items) {
    double v = 0;
    if (auto s = eprlab_parse_angle(item.c_str(), &v); s != EPRLAB_OK) return s;
    out.push_back(v);
  }
  return EPRLAB_OK;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_config = true) {
  auto* cfg = cmd->add_option("--config", o.config, "experiment config (JSON)");
  if (needs_config) cfg->required();
  cmd->add_option("--seed", o.seed, "override the master seed");
  cmd->add_option("--events", o.events, "override events per run");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "output file or directory");
}

int run_simulate(const CommonOptions& o) {
  ConfigHandle cfg;
  if (auto s = open_config(o, cfg); s != EPRLAB_OK) return report(s);
  const char* out = o.out.empty() ? nullptr : o.out.c_str();
  return report(eprlab_simulate(cfg.get(), out));
}

int run_scan(const CommonOptions& o, const ScanFlags& f) {
  eprlab_scan_options opts;
  eprlab_scan_options_init(&opts);

  std::string statistic = f.statistic;
  if (statistic == "ch" || (!f.convention.empty() && statistic.rfind("ch", 0) == 0)) {
    statistic = "ch-" + (f.convention.empty() ? std::string("standard") : f.convention);
  }
  if (statistic == "s-joint") {
    opts.statistic = EPRLAB_S_JOINT;
  } else if (statistic == "s-equal") {
    opts.statistic = EPRLAB_S_EQUAL;
  } else if (statistic == "s-corr") {
    opts.statistic = EPRLAB_S_CORR;
  } else if (statistic == "ch-standard") {
    opts.statistic = EPRLAB_CH_STANDARD;
  } else if (statistic == "ch-paper") {
    opts.statistic = EPRLAB_CH_PAPER;
  } else {
    return usage_error("unknown statistic '" + f.statistic + "'");
  }
  opts.search = f.search == "coordinate-descent" ? EPRLAB_SEARCH_COORDINATE_DESCENT
                                                 : EPRLAB_SEARCH_GRID;
  if (auto s = eprlab_parse_angle(f.grid_step.c_str(), &opts.grid_step);
      s != EPRLAB_OK) {
    return report(s);
  }
  if (f.budget) opts.budget = *f.budget;
  opts.exact = f.exact ? 1 : 0;
  if (f.events_per_pair) opts.events_per_pair = *f.events_per_pair;

  ConfigHandle cfg;
  if (auto s = open_config(o, cfg); s != EPRLAB_OK) return report(s);
  eprlab_statistic best;
  double quad[4];
  const char* out = o.out.empty() ? nullptr : o.out.c_str();
  const auto s = eprlab_scan(cfg.get(), &opts, out, &best, quad);
  if (s == EPRLAB_OK) {
    std::printf("best %s = %.6f +- %.6f at (%.6g, %.6g, %.6g, %.6g) rad\n",
                statistic.c_str(), best.value, best.se, quad[0], quad[1],
                quad[2], quad[3]);
  }
  return report(s);
}

int run_residual(const CommonOptions& o, const std::vector<std::string>& quad) {
  std::vector<double> q;
  if (auto s = parse_angles(quad, q); s != EPRLAB_OK) return report(s);
  ConfigHandle cfg;
  if (auto s = open_config(o, cfg); s != EPRLAB_OK) return report(s);
  const char* out = o.out.empty() ? nullptr : o.out.c_str();
  return report(eprlab_residual(cfg.get(), q.empty() ? nullptr : q.data(), out));
}

int run_hist(const CommonOptions& o, const std::vector<std::string>& settings) {
  std::vector<double> list;
  if (auto s = parse_angles(settings, list); s != EPRLAB_OK) return report(s);
  ConfigHandle cfg;
  if (auto s = open_config(o, cfg); s != EPRLAB_OK) return report(s);
  const char* out = o.out.empty() ? nullptr : o.out.c_str();
  return report(eprlab_hist(cfg.get(), list.empty() ? nullptr : list.data(),
                            list.size(), out));
}

int run_verify(const std::string& fixture, const std::optional<unsigned>& threads) {
  const auto print = [](const char* line, void*) { std::printf("%s\n", line); };
  return report(eprlab_verify(fixture.empty() ? nullptr : fixture.c_str(),
                              threads.value_or(1), print, nullptr));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-based Bell-test simulator"};
  app.set_version_flag("--version", eprlab_version());
  app.require_subcommand(1);

  CommonOptions common;
  ScanFlags scan_flags;
  std::vector<std::string> quad, settings;
  std::string fixture;

  auto* simulate = app.add_subcommand("simulate", "run a pair or quad and write a JSON report");
  add_common(simulate, common);
  simulate->add_option("--statistic", scan_flags.statistic, "ignored; all statistics are reported");
  simulate->add_option("--convention", scan_flags.convention, "ignored; both CH conventions are reported");

  auto* scan = app.add_subcommand("scan", "search settings for the largest statistic");
  add_common(scan, common);
  scan->add_option("--statistic", scan_flags.statistic,
                   "s-joint, s-equal, s-corr, ch-standard, ch-paper or ch");
  scan->add_option("--convention", scan_flags.convention, "CH convention")
      ->check(CLI::IsMember({"paper", "standard"}));
  scan->add_option("--grid-step", scan_flags.grid_step, "angle step, e.g. '11.25 deg'");
  scan->add_option("--budget", scan_flags.budget, "maximum quad evaluations");
  scan->add_option("--search", scan_flags.search, "grid or coordinate-descent")
      ->check(CLI::IsMember({"grid", "coordinate-descent"}));
  scan->add_flag("--exact", scan_flags.exact, "use quadrature instead of sampling");
  scan->add_option("--events-per-pair", scan_flags.events_per_pair,
                   "Monte Carlo events per setting pair");

  auto* residual = app.add_subcommand("residual", "estimate the Bell residual");
  add_common(residual, common);
  residual->add_option("--quad", quad, "four angles: alpha alpha' beta beta'")
      ->expected(4)
      ->delimiter(',');

  auto* hist = app.add_subcommand("hist", "histogram reduced impacts per setting");
  add_common(hist, common);
  hist->add_option("--settings", settings, "setting angles")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run the built-in self-test");
  verify->add_option("--fixture", fixture, "saved report to check");
  verify->add_option("--threads", common.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return EPRLAB_PARSE_ERROR;
  }

  if (*simulate) return run_simulate(common);
  if (*scan) return run_scan(common, scan_flags);
  if (*residual) return run_residual(common, quad);
  if (*hist) return run_hist(common, settings);
  return run_verify(fixture, common.threads);
}
