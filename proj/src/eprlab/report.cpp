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

#include "eprlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace eprlab {
namespace {

Json estimate_json(const Estimate& e) {
  return {{"value", e.value}, {"se", e.se}};
}

// JSON has no infinities; the sign is all that matters when se is zero.
Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? Json("+inf") : Json("-inf");
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json counts_json(const CoincidenceResult& r) {
  Json j;
  j["alpha"] = format_angle(r.alpha);
  j["beta"] = format_angle(r.beta);
  j["label"] = r.label;
  j["events"] = r.events;
  j["n1_plus"] = r.n1_plus;
  j["n2_plus"] = r.n2_plus;
  j["n_pp"] = r.n_pp;
  j["n_pm"] = r.n_pm;
  j["n_mp"] = r.n_mp;
  j["n_mm"] = r.n_mm;
  j["clamp_events"] = r.clamp_events;
  return j;
}

Json counts_json(const SinglesResult& r) {
  Json j;
  j["device"] = r.device;
  j["setting"] = format_angle(r.setting);
  j["label"] = r.label;
  j["events"] = r.events;
  j["n_plus"] = r.n_plus;
  j["clamp_events"] = r.clamp_events;
  return j;
}

Json estimates_json(const CoincidenceResult& r) {
  Json j;
  j["alpha"] = format_angle(r.alpha);
  j["beta"] = format_angle(r.beta);
  j["singles1"] = estimate_json(r.singles1());
  j["singles2"] = estimate_json(r.singles2());
  j["joint"] = estimate_json(r.joint());
  j["equal"] = estimate_json(r.equal());
  return j;
}

Json estimates_json(const SinglesResult& r) {
  Json j;
  j["device"] = r.device;
  j["setting"] = format_angle(r.setting);
  j["singles"] = estimate_json(r.estimate());
  return j;
}

Json statistic_json(const Statistic& s) {
  return {{"value", s.value},
          {"se", s.se},
          {"bound", s.bound},
          {"excess_in_se", finite_or_null(s.excess_in_se())}};
}

Json inequality_json(const InequalityReport& r) {
  Json j;
  j["s_joint"] = statistic_json(r.s_joint);
  j["s_equal"] = statistic_json(r.s_equal);
  j["s_corr"] = statistic_json(r.s_corr);
  j["ch_paper"] = statistic_json(r.ch_paper);
  j["ch_standard"] = statistic_json(r.ch_standard);
  return j;
}

Json condition10_json(const Condition10Report& r) {
  Json j;
  j["significance"] = r.significance;
  j["bins"] = r.bins;
  j["events_per_setting"] = r.events;
  j["pass"] = r.pass;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    auto test = [](const stats::TestResult& t) {
      return Json{{"statistic", t.statistic},
                  {"dof", t.dof},
                  {"p_value", t.p_value}};
    };
    pairs.push_back({{"gamma_a", format_angle(p.gamma_a)},
                     {"gamma_b", format_angle(p.gamma_b)},
                     {"chi_squared", test(p.chi_squared)},
                     {"ks_x", test(p.ks_x)},
                     {"ks_y", test(p.ks_y)},
                     {"pass", p.pass}});
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json coincidence_report(const ExperimentConfig& config,
                        const CoincidenceResult& result) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = "coincidence";
  j["config"] = to_json(config);
  j["seed"] = result.seed;
  j["counts"] = {{"pairs", Json::array({counts_json(result)})},
                 {"singles", Json::array()}};
  j["estimates"] = {{"pairs", Json::array({estimates_json(result)})},
                    {"singles", Json::array()}};
  return j;
}

Json quad_report(const ExperimentConfig& config, const QuadResult& result) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = "quad";
  j["config"] = to_json(config);
  j["seed"] = result.pairs[0].seed;
  Json pair_counts = Json::array(), pair_est = Json::array();
  for (const auto& p : result.pairs) {
    pair_counts.push_back(counts_json(p));
    pair_est.push_back(estimates_json(p));
  }
  Json singles_counts = Json::array(), singles_est = Json::array();
  for (const auto* group : {&result.singles1, &result.singles2}) {
    for (const auto& s : *group) {
      singles_counts.push_back(counts_json(s));
      singles_est.push_back(estimates_json(s));
    }
  }
  j["counts"] = {{"pairs", pair_counts}, {"singles", singles_counts}};
  j["estimates"] = {{"pairs", pair_est}, {"singles", singles_est}};
  j["inequalities"] = inequality_json(analyze(result));
  return j;
}

Json residual_report(const ExperimentConfig& config, const SettingsQuad& quad,
                     const ResidualEstimate& estimate,
                     std::optional<double> oracle_value) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = "residual";
  j["config"] = to_json(config);
  j["seed"] = config.seed;
  j["quad"] = {format_angle(quad.alpha), format_angle(quad.alpha_prime),
               format_angle(quad.beta), format_angle(quad.beta_prime)};
  j["residual"] = {{"value", estimate.value},
                   {"se", estimate.se},
                   {"events", estimate.events}};
  if (oracle_value) j["oracle"] = *oracle_value;
  return j;
}

std::string histogram_csv(const ImpactHistogram& h) {
  std::string out = "bin_x_center,bin_y_center,frequency\n";
  for (int iy = 0; iy < h.bins; ++iy) {
    for (int ix = 0; ix < h.bins; ++ix) {
      const Vec2 c = h.bin_center(ix, iy);
      out += csv_number(c.x) + "," + csv_number(c.y) + "," +
             csv_number(h.frequency(ix, iy)) + "\n";
    }
  }
  return out;
}

std::string scan_csv(const ScanResult& scan, StatisticChoice statistic) {
  std::string out = "alpha,alpha_prime,beta,beta_prime,statistic,value,se\n";
  const std::string name(to_string(statistic));
  for (const auto& row : scan.rows) {
    const auto& q = row.quad;
    out += csv_number(q.alpha) + "," + csv_number(q.alpha_prime) + "," +
           csv_number(q.beta) + "," + csv_number(q.beta_prime) + "," + name +
           "," + csv_number(row.statistic.value) + "," +
           csv_number(row.statistic.se) + "\n";
  }
  return out;
}

std::string summary_csv(const QuadResult& result) {
  std::string out =
      "alpha,beta,events,n_pp,n_pm,n_mp,n_mm,joint,joint_se,equal,equal_se\n";
  for (const auto& r : result.pairs) {
    out += csv_number(r.alpha) + "," + csv_number(r.beta) + "," +
           std::to_string(r.events) + "," + std::to_string(r.n_pp) + "," +
           std::to_string(r.n_pm) + "," + std::to_string(r.n_mp) + "," +
           std::to_string(r.n_mm) + "," + csv_number(r.joint().value) + "," +
           csv_number(r.joint().se) + "," + csv_number(r.equal().value) + "," +
           csv_number(r.equal().se) + "\n";
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir =
      path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);

  std::random_device rd;
  const fs::path tmp =
      dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move report into place at '" + path.string() +
                  "': " + ec.message());
  }
}

}  // namespace eprlab
