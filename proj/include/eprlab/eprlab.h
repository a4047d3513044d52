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

/*
 * eprlab C API.
 *
 * Event-based Monte Carlo of two-photon polarization-coincidence
 * experiments under local hidden-variable models, with Bell-type
 * inequality statistics and exact oracles.
 *
 * All functions return an eprlab_status. On failure a human-readable
 * message is available from eprlab_last_error() until the next call on the
 * same thread. Configurations are opaque handles owned by the caller and
 * released with eprlab_config_free().
 */

#ifndef EPRLAB_EPRLAB_H
#define EPRLAB_EPRLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(EPRLAB_BUILDING_LIBRARY)
#define EPRLAB_API __attribute__((visibility("default")))
#else
#define EPRLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum eprlab_status {
  EPRLAB_OK = 0,
  EPRLAB_CHECK_FAILED = 1,   /* a verification ran and found a failure */
  EPRLAB_PARSE_ERROR = 2,    /* malformed or unreadable input */
  EPRLAB_INVALID_CONFIG = 3, /* well-formed input violating a contract */
  EPRLAB_RUNTIME_ERROR = 4   /* I/O, geometry or other runtime failure */
} eprlab_status;

typedef struct eprlab_config eprlab_config;

typedef struct eprlab_counts {
  uint64_t events;
  uint64_t n1_plus;
  uint64_t n2_plus;
  uint64_t n_pp;
  uint64_t n_pm;
  uint64_t n_mp;
  uint64_t n_mm;
  uint64_t clamp_events;
} eprlab_counts;

typedef struct eprlab_statistic {
  double value;
  double se;
  double bound;
} eprlab_statistic;

typedef struct eprlab_inequalities {
  eprlab_statistic s_joint;
  eprlab_statistic s_equal;
  eprlab_statistic s_corr;
  eprlab_statistic ch_paper;
  eprlab_statistic ch_standard;
} eprlab_inequalities;

typedef enum eprlab_statistic_choice {
  EPRLAB_S_JOINT = 0,
  EPRLAB_S_EQUAL = 1,
  EPRLAB_S_CORR = 2,
  EPRLAB_CH_STANDARD = 3,
  EPRLAB_CH_PAPER = 4
} eprlab_statistic_choice;

typedef enum eprlab_search {
  EPRLAB_SEARCH_GRID = 0,
  EPRLAB_SEARCH_COORDINATE_DESCENT = 1
} eprlab_search;

typedef struct eprlab_scan_options {
  eprlab_statistic_choice statistic;
  eprlab_search search;
  double grid_step;         /* radians */
  uint64_t budget;          /* quad evaluations, >= 1 */
  int exact;                /* nonzero: quadrature / closed form */
  uint64_t events_per_pair; /* Monte Carlo events per setting pair */
} eprlab_scan_options;

EPRLAB_API const char* eprlab_version(void);
EPRLAB_API const char* eprlab_last_error(void);

/* Fills `options` with the defaults (s-equal, grid, pi/16, full grid). */
EPRLAB_API void eprlab_scan_options_init(eprlab_scan_options* options);

/* Parses "<number> deg" or "<number> rad" into radians. */
EPRLAB_API eprlab_status eprlab_parse_angle(const char* text, double* radians);

/* ---- configuration handles ---- */

EPRLAB_API eprlab_status eprlab_config_load(const char* path,
                                            eprlab_config** out);
EPRLAB_API eprlab_status eprlab_config_parse(const char* text,
                                             eprlab_config** out);
EPRLAB_API void eprlab_config_free(eprlab_config* config);

EPRLAB_API eprlab_status eprlab_config_set_seed(eprlab_config* config,
                                                uint64_t seed);
EPRLAB_API eprlab_status eprlab_config_set_events(eprlab_config* config,
                                                  uint64_t events);
EPRLAB_API eprlab_status eprlab_config_set_threads(eprlab_config* config,
                                                   unsigned threads);
/* Replaces the configured settings with a pair, a quad or a list. */
EPRLAB_API eprlab_status eprlab_config_set_pair(eprlab_config* config,
                                                double alpha, double beta);
EPRLAB_API eprlab_status eprlab_config_set_quad(eprlab_config* config,
                                                const double quad[4]);
EPRLAB_API eprlab_status eprlab_config_set_list(eprlab_config* config,
                                                const double* settings,
                                                size_t count);

/* Normalized JSON echo of the configuration. On input `*size` is the
 * buffer capacity in bytes; on return it holds the text length excluding
 * the terminator. Pass buffer == NULL to query the length. */
EPRLAB_API eprlab_status eprlab_config_to_json(const eprlab_config* config,
                                               char* buffer, size_t* size);

/* ---- direct runs ---- */

/* One coincidence run at (alpha, beta) with the config's seed and events. */
EPRLAB_API eprlab_status eprlab_run_coincidence(const eprlab_config* config,
                                                double alpha, double beta,
                                                eprlab_counts* out);

/* A quad run at the given settings; `pairs` receives the four coincidence
 * runs ordered (a,b), (a,b'), (a',b), (a',b'). Either output may be NULL. */
EPRLAB_API eprlab_status eprlab_run_quad(const eprlab_config* config,
                                         const double quad[4],
                                         eprlab_counts pairs[4],
                                         eprlab_inequalities* inequalities);

EPRLAB_API eprlab_status eprlab_bell_residual(const eprlab_config* config,
                                              const double quad[4],
                                              double* value, double* se);

/* ---- subcommands (write files atomically) ---- */

/* JSON run report. out_path == NULL: $EPRLAB_OUTPUT_DIR/report.json. */
EPRLAB_API eprlab_status eprlab_simulate(const eprlab_config* config,
                                         const char* out_path);

/* CSV of evaluated quads; best row also returned when `best` != NULL. */
EPRLAB_API eprlab_status eprlab_scan(const eprlab_config* config,
                                     const eprlab_scan_options* options,
                                     const char* out_path,
                                     eprlab_statistic* best,
                                     double best_quad[4]);

/* JSON residual report; quad == NULL uses the configured quad. */
EPRLAB_API eprlab_status eprlab_residual(const eprlab_config* config,
                                         const double* quad,
                                         const char* out_path);

/* One CSV per setting (hist_<k>.csv) plus condition10.json in out_dir.
 * settings == NULL uses the configured settings. */
EPRLAB_API eprlab_status eprlab_hist(const eprlab_config* config,
                                     const double* settings, size_t count,
                                     const char* out_dir);

/* Self-test. Returns EPRLAB_CHECK_FAILED when any check fails. One summary
 * line per check is passed to `callback` when it is not NULL.
 * fixture_path may be NULL; a missing fixture is EPRLAB_RUNTIME_ERROR. */
typedef void (*eprlab_line_callback)(const char* line, void* user);
EPRLAB_API eprlab_status eprlab_verify(const char* fixture_path,
                                       unsigned threads,
                                       eprlab_line_callback callback,
                                       void* user);

#ifdef __cplusplus
}
#endif

#endif /* EPRLAB_EPRLAB_H */
