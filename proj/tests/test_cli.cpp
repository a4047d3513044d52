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

// Drives the eprlab executable end to end and checks exit codes and files.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "eprlab_cli_test";

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the CLI with stdout and stderr captured; returns the exit status.
int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" EPRLAB_CLI "' " + args + " > '" +
                          (kWork / "stdout.txt").string() + "' 2> '" +
                          (kWork / "stderr.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string stderr_text() { return read(kWork / "stderr.txt"); }

fs::path config(const std::string& name, const std::string& text) {
  const fs::path p = kWork / name;
  write(p, text);
  return p;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kQuad = R"({
  "model": {"kind": "impact-modulated", "epsilon": 0.5, "profile": "linear"},
  "run": {"events": 50000, "seed": 17},
  "settings": {"quad": ["0 deg", "45 deg", "22.5 deg", "-22.5 deg"]}
})";

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Workspace, "simulate writes a report") {
  const auto cfg = config("quad.json", kQuad);
  const auto out = kWork / "report.json";
  REQUIRE(run("simulate --config " + quoted(cfg) + " --out " + quoted(out)) == 0);
  const auto report = json::parse(read(out));
  CHECK(report["kind"] == "quad");
  CHECK(report["seed"] == 17);
  CHECK(report["counts"]["pairs"].size() == 4);
  CHECK(report["inequalities"].contains("ch_standard"));
}

TEST_CASE_FIXTURE(Workspace, "overrides and determinism") {
  const auto cfg = config("quad.json", kQuad);
  REQUIRE(run("simulate --config " + quoted(cfg) + " --seed 5 --events 40000 --threads 1 --out " +
              quoted(kWork / "a.json")) == 0);
  REQUIRE(run("simulate --config " + quoted(cfg) + " --seed 5 --events 40000 --threads 4 --out " +
              quoted(kWork / "b.json")) == 0);
  const auto a = json::parse(read(kWork / "a.json"));
  const auto b = json::parse(read(kWork / "b.json"));
  CHECK(a["seed"] == 5);
  CHECK(a["counts"]["pairs"][0]["events"] == 40000);
  CHECK(a["counts"].dump() == b["counts"].dump());
}

TEST_CASE_FIXTURE(Workspace, "default output directory comes from the environment") {
  const auto cfg = config("quad.json", kQuad);
  const auto dir = kWork / "envout";
  REQUIRE(run("simulate --config " + quoted(cfg), "EPRLAB_OUTPUT_DIR=" + quoted(dir)) == 0);
  CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE_FIXTURE(Workspace, "exit codes distinguish failure kinds") {
  const auto zero = config("zero.json", R"({"run": {"events": 0},
    "settings": {"pair": ["0 deg", "10 deg"]}})");
  CHECK(run("simulate --config " + quoted(zero)) == 3);
  CHECK(stderr_text().find("run.events") != std::string::npos);

  const auto broken = config("broken.json", "{\n \"run\": {\n");
  CHECK(run("simulate --config " + quoted(broken)) == 2);
  CHECK(stderr_text().find("line") != std::string::npos);

  CHECK(run("simulate --config " + quoted(kWork / "missing.json")) == 2);
  CHECK(run("residual --config " + quoted(kWork / "missing.json")) == 2);
  CHECK(run("hist --config " + quoted(kWork / "missing.json") + " --settings '0 deg,45 deg'") == 2);
  CHECK(run("simulate --bogus-flag") == 2);
  CHECK(run("") == 2);

  const auto cfg = config("quad.json", kQuad);
  CHECK(run("scan --config " + quoted(cfg) + " --budget 0") == 3);
  CHECK(run("residual --config " + quoted(cfg) + " --quad '0 deg,0 deg,1 deg,2 deg'") == 3);
  CHECK(run("residual --config " + quoted(cfg) + " --quad '0,1,2,3'") == 3);
  CHECK(run("simulate --config " + quoted(cfg) + " --out " + quoted(kWork / "quad.json" / "x")) == 4);
}

TEST_CASE_FIXTURE(Workspace, "residual of an impact-independent model is zero") {
  const auto cfg = config("malus.json", R"({"model": {"kind": "malus-probabilistic"},
    "run": {"events": 100000},
    "settings": {"quad": ["0 deg", "45 deg", "22.5 deg", "-22.5 deg"]}})");
  const auto out = kWork / "residual.json";
  REQUIRE(run("residual --config " + quoted(cfg) + " --out " + quoted(out)) == 0);
  const auto r = json::parse(read(out));
  CHECK(std::abs(r["residual"]["value"].get<double>()) <= 1e-12);
  REQUIRE(run("residual --config " + quoted(cfg) + " --quad '0 deg,90 deg,30 deg,60 deg' --out " +
              quoted(out)) == 0);
  CHECK(json::parse(read(out))["quad"][1] == "1.5707963267948966 rad");
}

TEST_CASE_FIXTURE(Workspace, "hist of a point source gives distinct point masses") {
  const auto cfg = config("point.json", R"({
    "source": {"kind": "point", "center": [0.3, 0], "cone_half_angle": "0 rad"},
    "run": {"events": 20000}})");
  const auto dir = kWork / "hist";
  REQUIRE(run("hist --config " + quoted(cfg) + " --settings '0 deg,45 deg' --out " +
              quoted(dir)) == 0);
  std::vector<std::pair<double, double>> peaks;
  for (const char* name : {"hist_0.csv", "hist_1.csv"}) {
    const auto rows = csv_rows(dir / name);
    REQUIRE(rows.size() == 1 + 32 * 32);
    CHECK(rows[0] == std::vector<std::string>{"bin_x_center", "bin_y_center", "frequency"});
    int nonzero = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (std::stod(rows[i][2]) > 0) {
        ++nonzero;
        CHECK(std::stod(rows[i][2]) == 1.0);
        peaks.emplace_back(std::stod(rows[i][0]), std::stod(rows[i][1]));
      }
    }
    CHECK(nonzero == 1);
  }
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(peaks[0].first - 0.3) <= 1.0 / 64);
  CHECK(std::abs(peaks[1].first - 0.2121) <= 1.0 / 64);
  CHECK(std::abs(peaks[1].second + 0.2121) <= 1.0 / 64);
  const auto c10 = json::parse(read(dir / "condition10.json"));
  CHECK(c10["condition10"]["pass"] == false);
}

TEST_CASE_FIXTURE(Workspace, "scan of the entangled reference finds 1 + sqrt 2") {
  const auto cfg = config("qm.json", R"({"model": {"kind": "qm-reference"},
    "run": {"seed": 3}})");
  const auto out = kWork / "scan.csv";
  REQUIRE(run("scan --config " + quoted(cfg) + " --grid-step '11.25 deg' --events-per-pair 400000 --out " +
              quoted(out)) == 0);
  const auto rows = csv_rows(out);
  REQUIRE(rows.size() == 1 + 16 * 15 * 16 * 15);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "alpha_prime", "beta", "beta_prime",
                                            "statistic", "value", "se"});
  double best = -1, best_se = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][4] == "s-equal");
    if (std::stod(rows[i][5]) > best) {
      best = std::stod(rows[i][5]);
      best_se = std::stod(rows[i][6]);
    }
  }
  CHECK(std::abs(best - (1 + std::sqrt(2.0))) < 4 * best_se);
}

TEST_CASE_FIXTURE(Workspace, "exact scan of a Malus model stays within the bound") {
  const auto cfg = config("malus.json", R"({"model": {"kind": "malus-probabilistic"}})");
  const auto out = kWork / "scan.csv";
  REQUIRE(run("scan --config " + quoted(cfg) + " --exact --statistic ch --convention paper --out " +
              quoted(out)) == 0);
  const auto rows = csv_rows(out);
  REQUIRE(rows.size() > 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i][4] == "ch-paper");
    REQUIRE(std::stod(rows[i][5]) <= 1e-12);
  }
  REQUIRE(run("scan --config " + quoted(cfg) + " --exact --statistic s-equal --search coordinate-descent --budget 300 --out " +
              quoted(out)) == 0);
  for (const auto& row : csv_rows(out)) {
    if (row[0] != "alpha") REQUIRE(std::stod(row[5]) <= 2 + 1e-12);
  }
}

TEST_CASE_FIXTURE(Workspace, "verify passes, catches corrupted fixtures and missing files") {
  CHECK(run("verify") == 0);
  CHECK(read(kWork / "stdout.txt").find("FAIL") == std::string::npos);

  const auto cfg = config("quad.json", kQuad);
  const auto fixture = kWork / "fixture.json";
  REQUIRE(run("simulate --config " + quoted(cfg) + " --out " + quoted(fixture)) == 0);
  CHECK(run("verify --fixture " + quoted(fixture)) == 0);

  auto report = json::parse(read(fixture));
  report["counts"]["pairs"][1]["n_pp"] = report["counts"]["pairs"][1]["n_pp"].get<int>() + 1;
  const auto corrupted = kWork / "corrupted.json";
  write(corrupted, report.dump(2));
  CHECK(run("verify --fixture " + quoted(corrupted)) == 1);
  CHECK(read(kWork / "stdout.txt").find("FAIL") != std::string::npos);

  CHECK(run("verify --fixture " + quoted(kWork / "absent.json")) == 4);
}
