/*
 * Copyright 2026 The selfstab Authors
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
 * C interface to the self-stabilizing MIS simulator.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an ss_status; on failure ss_last_error()
 * describes the problem for the calling thread. Strings returned through
 * `char **` out-parameters are heap allocated and must be released with
 * ss_string_free.
 */

#ifndef SELFSTAB_SELFSTAB_H_
#define SELFSTAB_SELFSTAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SELFSTAB_BUILDING_LIBRARY)
#define SS_API __attribute__((visibility("default")))
#else
#define SS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
  SS_OK = 0,
  SS_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum value */
  SS_ERR_DOMAIN = 2,           /* argument outside an operation's domain */
  SS_ERR_PARSE = 3,            /* malformed edge-list text */
  SS_ERR_IO = 4,               /* file could not be read or written */
  SS_ERR_VERIFICATION = 5,     /* a stabilized run failed verification */
  SS_ERR_INTERNAL = 6
} ss_status;

typedef enum ss_graph_class {
  SS_GRAPH_TREE = 0,
  SS_GRAPH_BIPARTITE = 1,
  SS_GRAPH_UNIT_DISK = 2,
  SS_GRAPH_CONNECTED = 3
} ss_graph_class;

typedef enum ss_format { SS_FORMAT_CSV = 0, SS_FORMAT_JSON = 1 } ss_format;

typedef enum ss_init_domain {
  SS_INIT_FULL = 0,   /* whole legal state domain, wait state included */
  SS_INIT_NO_WAIT = 1 /* distributed families start without the wait state */
} ss_init_domain;

/* Algorithm rows in canonical order: C1, C2b0, C2i, C3b0, C3i, C4b0, C4i,
 * C5, D1, D2b0, D2i, D3b0, D3i, D4b0, D4i, D5. */
typedef int32_t ss_algorithm;

typedef struct ss_graph ss_graph;
typedef struct ss_trace ss_trace;
typedef struct ss_results ss_results;

/* Message for the most recent failure on this thread; never null. */
SS_API const char *ss_last_error(void);
SS_API const char *ss_status_name(ss_status status);
SS_API void ss_string_free(char *s);

/* ---- algorithms ---- */

SS_API size_t ss_algorithm_count(void);
/* Accepts names such as "C1", "C2b0", "d4i" (case-insensitive). */
SS_API ss_status ss_algorithm_parse(const char *name, ss_algorithm *out);
/* Static string; null for an out-of-range id. */
SS_API const char *ss_algorithm_name(ss_algorithm algo);

/* ---- graphs ---- */

SS_API ss_status ss_graph_read_edge_list(const char *text, ss_graph **out);
SS_API ss_status ss_graph_load(const char *path, ss_graph **out);
SS_API ss_status ss_graph_write_edge_list(const ss_graph *g, char **out);
/* `param` is p for bipartite/connected and r for unit disk; pass a value
 * <= 0 for the class default. */
SS_API ss_status ss_graph_generate(ss_graph_class cls, size_t n, double param, uint64_t seed,
                                   ss_graph **out);
SS_API void ss_graph_free(ss_graph *g);

SS_API size_t ss_graph_order(const ss_graph *g);
SS_API size_t ss_graph_size(const ss_graph *g);
SS_API size_t ss_graph_max_degree(const ss_graph *g);
SS_API ss_status ss_graph_degree(const ss_graph *g, uint32_t node, size_t *out);
SS_API int ss_graph_is_connected(const ss_graph *g);

/* ---- single runs ---- */

/* Runs from a random initial configuration. Seeds for the configuration and
 * the scheduler are both derived from `seed`. move_cap == 0 selects
 * 10 * max(Delta, 1) * max(n, 1). */
SS_API ss_status ss_run(const ss_graph *g, ss_algorithm algo, uint64_t seed, uint64_t move_cap,
                        ss_init_domain domain, ss_trace **out);
/* Runs from explicit states, one character per node in id order:
 * '0'-'3' or 'W'. */
SS_API ss_status ss_run_from_states(const ss_graph *g, ss_algorithm algo, const char *states,
                                    uint64_t seed, uint64_t move_cap, ss_trace **out);
SS_API void ss_trace_free(ss_trace *t);

SS_API int ss_trace_stabilized(const ss_trace *t);
SS_API uint64_t ss_trace_total_moves(const ss_trace *t);
SS_API size_t ss_trace_step_count(const ss_trace *t);
/* |X| (or |R| for C5/D5); SS_ERR_DOMAIN if the run did not stabilize. */
SS_API ss_status ss_trace_set_size(const ss_trace *t, size_t *out);
SS_API ss_status ss_trace_to_json(const ss_trace *t, char **out);

/* Verdict JSON covering maximality (or the R/B layers), the move bound and
 * the per-node move lemmas. *ok is 1 when nothing was violated; monitored
 * bounds never clear it. */
SS_API ss_status ss_trace_verify(const ss_trace *t, int *ok, char **verdict_json);

/* ---- experiments ---- */

typedef struct ss_experiment_spec {
  const ss_algorithm *algorithms;
  size_t algorithm_count;
  ss_graph_class graph_class;
  const size_t *orders;
  size_t order_count;
  size_t trials;
  uint64_t seed;
  double p;          /* <= 0: default */
  double r;          /* <= 0: default */
  uint64_t move_cap; /* 0: default per graph */
  ss_init_domain init_domain;
  unsigned threads; /* 0: hardware concurrency */
} ss_experiment_spec;

/* Zero-initialised spec with trials = 200, seed = 1 and no algorithms. */
SS_API ss_experiment_spec ss_experiment_spec_default(void);

/* SS_ERR_VERIFICATION carries the failing trace and verdict as JSON in
 * ss_last_error(). */
SS_API ss_status ss_experiment_run(const ss_experiment_spec *spec, ss_results **out);
SS_API ss_status ss_results_emit(const ss_results *res, ss_format format, char **out);
SS_API size_t ss_results_row_count(const ss_results *res);
/* Sum of proven move-bound violations over all rows. */
SS_API uint64_t ss_results_bound_violations(const ss_results *res);
SS_API void ss_results_free(ss_results *res);

/* Mean moves per order for the requested algorithms plus their baselines,
 * emitted directly. */
SS_API ss_status ss_scaling_run(const ss_experiment_spec *spec, ss_format format, char **out);

#ifdef __cplusplus
}
#endif

#endif /* SELFSTAB_SELFSTAB_H_ */
