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

#include "eprlab/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eprlab/oracle.hpp"

namespace eprlab {
namespace {

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

VerifyCheck check_enumeration() {
  const auto joint = oracle::enumerate_deterministic_max(oracle::StatisticForm::joint);
  const auto equal =
      oracle::enumerate_deterministic_max(oracle::StatisticForm::equal_outcome);
  return {"deterministic CHSH bound",
          joint.maximum == 2 && equal.maximum == 2,
          fmt("joint max %g, equal-outcome max %g", joint.maximum, equal.maximum)};
}

VerifyCheck check_mc_vs_quadrature(ModelKind kind, double delta,
                                   unsigned threads) {
  RunConfig cfg;
  cfg.model1.kind = cfg.model2.kind = kind;
  cfg.alpha = 0;
  cfg.beta = delta;
  cfg.events = 200'000;
  cfg.seed = 20260415;
  cfg.threads = threads;
  const auto mc = run_coincidence(cfg).joint();
  const auto m = make_model(cfg.model1);
  const double exact = oracle::quadrature_coincidence(*m, *m, 0, delta).joint;
  const bool ok = std::abs(mc.value - exact) < 4 * mc.se;
  return {std::string(to_string(kind)) + " vs quadrature at " +
              fmt("%.6g rad", delta),
          ok, fmt("MC %.6f +- %.6f, quadrature %.6f", mc.value, mc.se, exact)};
}

VerifyCheck check_condition10(bool broad) {
  ExperimentGeometry g;
  if (broad) {
    g.source = {SourceKind::uniform_disc, {0, 0}, 20.0, 1e-3};
  } else {
    g.source = {SourceKind::point, {0.3, 0}, 0.0, 0.0};
  }
  const auto r = condition10_test(g, {0, kPi / 8, kPi / 4}, 50'000, 7);
  double min_p = 1;
  for (const auto& p : r.pairs) {
    min_p = std::min({min_p, p.chi_squared.p_value, p.ks_x.p_value,
                      p.ks_y.p_value});
  }
  // The broad source must pass; the point source must be told apart.
  return {broad ? "impact distributions agree for a broad source"
                : "impact distributions differ for a point source",
          broad ? r.pass : !r.pass, fmt("smallest p-value %.3g", min_p)};
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read fixture '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("fixture '" + path.string() + "' is not JSON: " + e.what());
  }
}

}  // namespace

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("EPRLAB_OUTPUT_DIR"); env && *env) {
    return env;
  }
  return ".";
}

Json simulate(const ExperimentConfig& config) {
  config.validate();
  const RunConfig run = config.run_config();
  switch (config.settings_kind) {
    case SettingsKind::pair:
      return coincidence_report(config, run_coincidence(run));
    case SettingsKind::quad:
      return quad_report(config, run_quad(run, config.quad(), config.events));
    case SettingsKind::none:
    case SettingsKind::list:
      break;
  }
  throw ConfigError("settings", "simulate needs a 'pair' or a 'quad'");
}

Json residual(const ExperimentConfig& config,
              std::optional<SettingsQuad> quad) {
  config.validate();
  const SettingsQuad q = quad ? *quad : config.quad();
  q.validate();
  const RunConfig run = config.run_config();
  const ResidualEstimate est = bell_residual(run, q, config.events, config.seed);
  std::optional<double> exact;
  const auto& src = config.geometry.source;
  if (src.kind == SourceKind::point && src.cone_half_angle == 0) {
    exact = oracle::quadrature_residual(config.geometry, *make_model(run.model1),
                                        *make_model(run.model2), q);
  }
  return residual_report(config, q, est, exact);
}

HistOutput hist(const ExperimentConfig& config,
                const std::vector<double>& settings, int bins) {
  config.validate();
  if (settings.empty()) throw ConfigError("settings", "no settings to histogram");
  if (config.events < kMinHistogramEvents) {
    throw StatisticsError("histograms need at least " +
                          std::to_string(kMinHistogramEvents) + " events");
  }
  HistOutput out;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const auto reduced = reduced_impacts(config.geometry, settings[k],
                                         config.events, {config.seed, k});
    out.histograms.emplace_back(
        settings[k], histogram_of(reduced, config.geometry.lattice.constant, bins));
  }
  if (settings.size() >= 2) {
    out.condition10 =
        condition10_test(config.geometry, settings, config.events, config.seed);
  }
  return out;
}

bool VerifyOutcome::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<VerifyCheck> verify_report(const nlohmann::json& report,
                                       unsigned threads) {
  std::vector<VerifyCheck> checks;
  if (!report.is_object() || !report.contains("config") ||
      !report.contains("counts")) {
    checks.push_back({"fixture schema", false, "missing config or counts"});
    return checks;
  }

  bool consistent = true;
  std::string detail = "all count identities hold";
  for (const auto& p : report["counts"].value("pairs", nlohmann::json::array())) {
    const auto get = [&](const char* k) { return p.value(k, std::uint64_t{0}); };
    const auto n = get("events");
    const bool ok = get("n_pp") + get("n_pm") + get("n_mp") + get("n_mm") == n &&
                    get("n1_plus") == get("n_pp") + get("n_pm") &&
                    get("n2_plus") == get("n_pp") + get("n_mp");
    if (!ok) {
      consistent = false;
      detail = "count identities broken for pair " + p.value("alpha", "?") +
               " / " + p.value("beta", "?");
    }
  }
  checks.push_back({"fixture count identities", consistent, detail});

  ExperimentConfig config = config_from_json(report["config"]);
  config.threads = threads;
  const Json rerun = simulate(config);
  const bool same =
      nlohmann::json::parse(rerun["counts"].dump()) == report["counts"];
  checks.push_back({"fixture counts reproduce", same,
                    same ? "re-run matches recorded counts"
                         : "re-run differs from recorded counts"});
  return checks;
}

VerifyOutcome verify(const std::optional<std::filesystem::path>& fixture,
                     unsigned threads) {
  VerifyOutcome out;
  nlohmann::json report;
  if (fixture) report = read_json_file(*fixture);

  out.checks.push_back(check_enumeration());
  for (double delta : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
    out.checks.push_back(
        check_mc_vs_quadrature(ModelKind::malus_probabilistic, delta, threads));
  }
  for (double delta : {kPi / 8, kPi / 4}) {
    out.checks.push_back(
        check_mc_vs_quadrature(ModelKind::malus_deterministic, delta, threads));
  }
  out.checks.push_back(check_condition10(true));
  out.checks.push_back(check_condition10(false));

  if (fixture) {
    auto more = verify_report(report, threads);
    out.checks.insert(out.checks.end(), more.begin(), more.end());
  }
  return out;
}

}  // namespace eprlab
