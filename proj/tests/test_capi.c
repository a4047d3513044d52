/*
 * Copyright 2026 The eprlab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Exercises the public C API from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "eprlab/eprlab.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, \
              #cond);                                             \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* kConfig =
    "{\"model\": {\"kind\": \"malus-probabilistic\"},"
    " \"run\": {\"events\": 100000, \"seed\": 5},"
    " \"settings\": {\"pair\": [\"0 deg\", \"0 deg\"]}}";

static void count_lines(const char* line, void* user) {
  (void)line;
  ++*(int*)user;
}

int main(void) {
  const double pi = 3.14159265358979323846;
  eprlab_config* cfg = NULL;
  eprlab_counts counts;
  eprlab_inequalities ineq;
  eprlab_counts pairs[4];
  double angle = 0, value = 1, se = 1;
  size_t size = 0;
  char* text;
  int lines = 0;
  const double quad[4] = {0, pi / 4, pi / 8, -pi / 8};

  EXPECT(strlen(eprlab_version()) > 0);
  EXPECT(eprlab_parse_angle("180 deg", &angle) == EPRLAB_OK);
  EXPECT(fabs(angle - pi) < 1e-15);
  EXPECT(eprlab_parse_angle("180", &angle) == EPRLAB_INVALID_CONFIG);
  EXPECT(strlen(eprlab_last_error()) > 0);

  EXPECT(eprlab_config_parse("{", &cfg) == EPRLAB_PARSE_ERROR);
  EXPECT(cfg == NULL);
  EXPECT(eprlab_config_parse("{\"bogus\": 1}", &cfg) == EPRLAB_INVALID_CONFIG);
  EXPECT(strstr(eprlab_last_error(), "bogus") != NULL);
  EXPECT(eprlab_config_load("/nonexistent.json", &cfg) == EPRLAB_PARSE_ERROR);

  EXPECT(eprlab_config_parse(kConfig, &cfg) == EPRLAB_OK);
  EXPECT(cfg != NULL);

  EXPECT(eprlab_run_coincidence(cfg, 0, 0, &counts) == EPRLAB_OK);
  EXPECT(counts.events == 100000);
  EXPECT(counts.n_pp + counts.n_pm + counts.n_mp + counts.n_mm == counts.events);
  EXPECT(fabs((double)counts.n_pp / counts.events - 0.375) < 4 * 0.00153);

  EXPECT(eprlab_config_set_events(cfg, 0) == EPRLAB_INVALID_CONFIG);
  EXPECT(strstr(eprlab_last_error(), "run.events") != NULL);
  EXPECT(eprlab_config_set_threads(cfg, 3) == EPRLAB_OK);

  EXPECT(eprlab_run_quad(cfg, quad, pairs, &ineq) == EPRLAB_OK);
  EXPECT(pairs[3].events == 100000);
  EXPECT(ineq.s_equal.bound == 2.0);
  EXPECT(fabs(ineq.s_corr.value - (2 * ineq.s_equal.value - 2)) < 1e-12);
  EXPECT(ineq.s_equal.value < 2 + 4 * ineq.s_equal.se);

  EXPECT(eprlab_bell_residual(cfg, quad, &value, &se) == EPRLAB_OK);
  EXPECT(fabs(value) <= 1e-12);

  EXPECT(eprlab_config_to_json(cfg, NULL, &size) == EPRLAB_OK);
  EXPECT(size > 10);
  text = (char*)malloc(size + 1);
  size += 1;
  EXPECT(eprlab_config_to_json(cfg, text, &size) == EPRLAB_OK);
  EXPECT(strstr(text, "\"malus-probabilistic\"") != NULL);
  size = 4;
  EXPECT(eprlab_config_to_json(cfg, text, &size) == EPRLAB_INVALID_CONFIG);
  free(text);

  EXPECT(eprlab_config_set_quad(cfg, quad) == EPRLAB_OK);
  {
    const double bad[4] = {0, 0, 1, 2};
    EXPECT(eprlab_config_set_quad(cfg, bad) == EPRLAB_INVALID_CONFIG);
  }
  EXPECT(eprlab_simulate(cfg, "capi_report.json") == EPRLAB_OK);
  /* A regular file where a directory is expected. */
  EXPECT(eprlab_simulate(cfg, "capi_report.json/report.json") == EPRLAB_RUNTIME_ERROR);
  EXPECT(eprlab_residual(cfg, NULL, "capi_residual.json") == EPRLAB_OK);

  {
    eprlab_scan_options opts;
    eprlab_statistic best;
    double best_quad[4];
    eprlab_scan_options_init(&opts);
    opts.exact = 1;
    opts.grid_step = pi / 8;
    EXPECT(eprlab_scan(cfg, &opts, "capi_scan.csv", &best, best_quad) == EPRLAB_OK);
    EXPECT(best.value <= 2 + 1e-12);
    opts.budget = 0;
    EXPECT(eprlab_scan(cfg, &opts, "capi_scan.csv", &best, best_quad) ==
           EPRLAB_INVALID_CONFIG);
  }

  {
    const double settings[2] = {0, pi / 4};
    EXPECT(eprlab_config_set_events(cfg, 20000) == EPRLAB_OK);
    EXPECT(eprlab_hist(cfg, settings, 2, "capi_hist") == EPRLAB_OK);
    EXPECT(eprlab_config_set_events(cfg, 100) == EPRLAB_OK);
    EXPECT(eprlab_hist(cfg, settings, 2, "capi_hist") == EPRLAB_INVALID_CONFIG);
  }

  EXPECT(eprlab_verify("/nonexistent-fixture.json", 1, NULL, NULL) == EPRLAB_RUNTIME_ERROR);
  EXPECT(eprlab_verify(NULL, 1, count_lines, &lines) == EPRLAB_OK);
  EXPECT(lines >= 10);

  EXPECT(eprlab_run_coincidence(NULL, 0, 0, &counts) == EPRLAB_INVALID_CONFIG);
  eprlab_config_free(cfg);
  eprlab_config_free(NULL);

  if (failures == 0) printf("all C API checks passed\n");
  return failures == 0 ? 0 : 1;
}
