/*------------------------------------------------------------------------------
 *
 *   Copyright 2026 The VPAS Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 *
 *----------------------------------------------------------------------------*/
#ifndef VPAS_H
#define VPAS_H

/* C interface to the VPAS library. Handles are opaque, every call returns a
 * vpas_status, and a failing call leaves a message retrievable with
 * vpas_last_error_message() on the same thread. Strings returned through
 * `char **` out-parameters are owned by the caller and released with
 * vpas_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define VPAS_API __declspec(dllexport)
#else
#define VPAS_API __attribute__((visibility("default")))
#endif

typedef enum vpas_status
{
  VPAS_OK               = 0,
  VPAS_ERR_VALIDATION   = 2, /* a proof, share or aggregate was rejected */
  VPAS_ERR_AUDIT        = 3, /* the audit verdict is reject */
  VPAS_ERR_USAGE        = 4, /* bad argument, missing file, call out of order */
  VPAS_ERR_INTERNAL     = 5
} vpas_status;

typedef struct vpas_config
{
  size_t      n_clients;
  unsigned    chunk_bits;           /* 4, 8, 16 or 32 */
  unsigned    message_bits;         /* 0 selects 256 */
  unsigned    merkle_depth;         /* SNP relation only; 0 selects 8 */
  const char *relation;             /* "range" (NULL), "trivial" or "snp" */
  uint64_t    max_per_client_value; /* 0 selects the largest 2^b - 1 that fits */
  int         has_seed;             /* nonzero: deterministic run from `seed` */
  uint64_t    seed;
} vpas_config;

typedef struct vpas_sim vpas_sim;

/* Thread-local description of the last failure, or "" after success. */
VPAS_API const char *vpas_last_error_message(void);
VPAS_API void        vpas_string_free(char *s);

/* -- simulation, one phase per call ------------------------------------ */

VPAS_API vpas_status vpas_sim_create(const vpas_config *config, vpas_sim **out);
VPAS_API void        vpas_sim_free(vpas_sim *sim);

VPAS_API vpas_status vpas_sim_run_setup(vpas_sim *sim);

/* Posts a query and submits one synthetic input per client. The inputs are
 * uniform in [0, max_per_client_value] and drawn from the run seed. */
VPAS_API vpas_status vpas_sim_submit_synthetic(vpas_sim *sim);

VPAS_API vpas_status vpas_sim_aggregate(vpas_sim *sim);

/* Releases the result. `out` may be NULL to query the chunk count only. */
VPAS_API vpas_status vpas_sim_release(vpas_sim *sim, uint64_t *out, size_t capacity,
                                      size_t *n_chunks);

/* Chunkwise plaintext sums of the synthetic inputs (the oracle). */
VPAS_API vpas_status vpas_sim_expected(const vpas_sim *sim, uint64_t *out, size_t capacity,
                                       size_t *n_chunks);

VPAS_API vpas_status vpas_sim_save_ledger(const vpas_sim *sim, const char *path);

/* Run manifest: config echo, party ids, phase timings, per-phase bytes,
 * released result, audit verdict and the encryption overhead ratio. */
VPAS_API vpas_status vpas_sim_manifest_json(vpas_sim *sim, const char *ledger_path,
                                            char **out_json);

/* -- one-shot operations ------------------------------------------------ */

/* Runs the GWAS pipeline on a CSV file and writes the report JSON. A
 * ledger_path of NULL skips saving the transcript. */
VPAS_API vpas_status vpas_run_gwas(const char *csv_path, size_t n_clients, unsigned merkle_depth,
                                   int has_seed, uint64_t seed, const char *ledger_path,
                                   char **out_json);

/* Plaintext statistics of the same CSV, for comparison. */
VPAS_API vpas_status vpas_gwas_oracle(const char *csv_path, char **out_json);

/* Audits a ledger file. Returns VPAS_OK on accept, VPAS_ERR_AUDIT on reject
 * (the report is still produced) and VPAS_ERR_USAGE if it cannot be read. */
VPAS_API vpas_status vpas_audit_file(const char *ledger_path, char **out_json);

/* Serialized sizes per chunk width next to their structural formulas. */
VPAS_API vpas_status vpas_bench_sizes(const unsigned *chunk_bits, size_t count,
                                      unsigned message_bits, char **out_json);

#ifdef __cplusplus
}
#endif

#endif /* VPAS_H */
