/*
 * Copyright 2026 The pim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PIM_PIM_H
#define PIM_PIM_H

/*
 * C interface to libpim: physical implementability of Hermitian- and
 * trace-preserving maps and quasiprobability error mitigation.
 *
 * Every function returning pim_status stores a message retrievable with
 * pim_last_error() on failure. Objects are opaque handles released with the
 * matching *_free function; strings returned through char ** are released
 * with pim_string_free. Handles are not synchronised: share one across
 * threads only for concurrent reads.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(PIM_BUILDING_LIBRARY)
#define PIM_API __attribute__((visibility("default")))
#else
#define PIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the CLI exit codes. */
typedef enum pim_status {
  PIM_OK = 0,
  PIM_ERR_VERIFICATION = 1,
  PIM_ERR_PARSE = 2,
  PIM_ERR_DOMAIN = 3,
  PIM_ERR_SOLVER = 4,
  PIM_ERR_NOT_INVERTIBLE = 5,
  PIM_ERR_INTERNAL = 6
} pim_status;

typedef enum pim_method {
  PIM_METHOD_OPTIMAL = 0,
  PIM_METHOD_CANONICAL = 1
} pim_method;

typedef struct pim_map pim_map;
typedef struct pim_certificate pim_certificate;
typedef struct pim_decomposition pim_decomposition;

typedef struct pim_nu_values {
  double nu;
  double gamma; /* 2^nu = p1 + p2 */
  double p1;
  double p2;
  double dual_value;
  double gap;
  double trace_norm_lower; /* ||J||_1 / d */
  double trace_norm_upper; /* ||J||_1 */
} pim_nu_values;

typedef struct pim_mitigate_options {
  double delta;    /* target precision, > 0 */
  double eps_fail; /* failure probability, in (0, 1) */
  uint64_t seed;
  uint64_t shots;   /* 0 uses the planned count */
  unsigned threads; /* does not affect the result */
  pim_method method;
  double tol;       /* solver tolerance */
  int record_shots; /* nonzero adds per-shot records to the report */
} pim_mitigate_options;

PIM_API const char *pim_version(void);

/* Message of the last failure on the calling thread; never NULL. */
PIM_API const char *pim_last_error(void);

PIM_API void pim_string_free(char *s);

/* Channel document (see the README for the format). */
PIM_API pim_status pim_map_from_json(const char *json, pim_map **out);
PIM_API pim_status pim_map_dim(const pim_map *map, size_t *out);
PIM_API void pim_map_free(pim_map *map);

/* Rewrites a channel document in normalised form. */
PIM_API pim_status pim_channel_normalize(const char *json, char **out);

PIM_API pim_status pim_nu(const pim_map *map, double tol,
                          pim_certificate **out);
PIM_API pim_status pim_certificate_values(const pim_certificate *cert,
                                          pim_nu_values *out);
/* 1 if every certificate residual is within its threshold. */
PIM_API pim_status pim_certificate_check(const pim_certificate *cert,
                                         int *valid);
PIM_API pim_status pim_certificate_to_json(const pim_certificate *cert,
                                           char **out);
PIM_API void pim_certificate_free(pim_certificate *cert);

PIM_API pim_status pim_trace_norm_bounds(const pim_map *map, double *lower,
                                         double *upper);

PIM_API pim_status pim_decompose(const pim_map *map, pim_method method,
                                 double tol, pim_decomposition **out);
PIM_API pim_status pim_decomposition_total_cost(const pim_decomposition *q,
                                                double *out);
PIM_API pim_status pim_decomposition_size(const pim_decomposition *q,
                                          size_t *out);
/* Largest entry of |sum_a eta_a J_a - J_map|. */
PIM_API pim_status pim_decomposition_recombination_error(
    const pim_decomposition *q, const pim_map *map, double *out);
PIM_API pim_status pim_decomposition_to_json(const pim_decomposition *q,
                                             char **out);
PIM_API pim_status pim_decomposition_from_json(const char *json,
                                               pim_decomposition **out);
PIM_API void pim_decomposition_free(pim_decomposition *q);

PIM_API void pim_mitigate_options_init(pim_mitigate_options *opts);

/* Plans and runs mitigation of the noise channel; writes the report as one
 * line of JSON. */
PIM_API pim_status pim_mitigate(const char *noise_json, const char *state_json,
                                const char *observable_json,
                                const pim_mitigate_options *opts, char **out);

/* Runs a verification suite (properties, analytic, duality, mitigation or
 * all) and writes one JSON line per check followed by a summary line.
 * Returns PIM_ERR_VERIFICATION if any check fails; out is still set. */
PIM_API pim_status pim_verify(const char *suite, uint64_t seed,
                              unsigned threads, char **out);

#ifdef __cplusplus
}
#endif

#endif
