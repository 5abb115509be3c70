// Copyright 2026 The polyatree Authors
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

#ifndef POLYATREE_H
#define POLYATREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PT_API
#elif defined(POLYATREE_BUILDING_LIBRARY)
#define PT_API __attribute__((visibility("default")))
#else
#define PT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning pt_status stores a message for
 * pt_last_error() on failure. */
typedef enum pt_status {
  PT_OK = 0,
  PT_INVALID_ARGUMENT = 1,
  PT_CYCLE_DETECTED = 2,
  PT_MULTIPLE_ROOTS = 3,
  PT_ROOT_NOT_ONE = 4,
  PT_SIZE_MISMATCH = 5,
  PT_NOT_INVARIANT = 6,
  PT_NOT_FIXING_ONE = 7,
  PT_OUT_OF_RANGE = 8,
  PT_MALFORMED_SEQUENCE = 9,
  PT_BLOCK_CONSTRAINT = 10,
  PT_INCONSISTENT_PARTITION = 11,
  PT_NUMERIC_FAILURE = 12,
  PT_SIZE_CAP = 13,
  PT_BUFFER_TOO_SMALL = 50,
  PT_CALLBACK_ABORT = 51,
  PT_INTERNAL = 99
} pt_status;

typedef struct pt_tree pt_tree;   /* tree on [n] rooted at 1 */
typedef struct pt_perm pt_perm;   /* permutation of [n] */
typedef struct pt_batch pt_batch; /* aggregated batch statistics */

PT_API const char* pt_version(void);
/* Message for the last failure on the calling thread ("" if none). */
PT_API const char* pt_last_error(void);
PT_API const char* pt_status_name(pt_status status);
/* Frees strings returned through char** out-parameters. */
PT_API void pt_string_free(char* s);

/* ---- trees ---------------------------------------------------------- */

/* parents[i] is the parent of vertex i+1, 0 for the root (vertex 1). */
PT_API pt_status pt_tree_from_parents(const uint32_t* parents, size_t n, pt_tree** out);
PT_API void pt_tree_free(pt_tree* tree);
PT_API size_t pt_tree_size(const pt_tree* tree);
/* Copies n parents; cap must be at least n. */
PT_API pt_status pt_tree_parents(const pt_tree* tree, uint32_t* out, size_t cap);
/* AHU root code as space-separated integers. */
PT_API pt_status pt_tree_canonical(const pt_tree* tree, char** out);
PT_API pt_status pt_trees_isomorphic(const pt_tree* a, const pt_tree* b, int* out);
/* |Aut(t)| in decimal (n <= 10000). */
PT_API pt_status pt_tree_aut_size(const pt_tree* tree, char** out);

typedef struct pt_tree_stats {
  size_t n;
  uint32_t height;
  uint64_t path_length;
  uint32_t width;
  uint32_t leaf_count;
  uint32_t max_degree;
  uint32_t max_out_degree;
  double log_aut;
  const uint32_t* profile;     /* w_1 .. w_height */
  size_t profile_len;
  const uint32_t* degree_hist; /* index = undirected degree */
  size_t degree_hist_len;
} pt_tree_stats;

/* The arrays stay valid until the tree is freed. */
PT_API pt_status pt_tree_stats_compute(const pt_tree* tree, pt_tree_stats* out);

/* ---- Prufer codes and samplers --------------------------------------- */

/* Writes n-2 entries (0 for n <= 2) to out; *len receives the count. */
PT_API pt_status pt_cayley_encode(const pt_tree* tree, uint32_t* out, size_t cap, size_t* len);
PT_API pt_status pt_cayley_decode(const uint32_t* code, size_t len, size_t n, pt_tree** out);
PT_API pt_status pt_sample_cayley(size_t n, uint64_t seed, pt_tree** out);
PT_API pt_status pt_sample_polya(size_t n, size_t burnin, uint64_t seed, pt_tree** out);

/* ---- permutations ---------------------------------------------------- */

/* Cycle notation such as "(2,3)(4,5)"; "" or "()" is the identity. */
PT_API pt_status pt_perm_parse(const char* text, size_t n, pt_perm** out);
/* Cycle type such as "1^2 2^1" (length^count, separated by spaces or
 * commas); fixed points come first, then consecutive cycles. */
PT_API pt_status pt_perm_from_cycle_type(const char* cycle_type, pt_perm** out);
PT_API void pt_perm_free(pt_perm* perm);
PT_API size_t pt_perm_size(const pt_perm* perm);
PT_API pt_status pt_perm_to_string(const pt_perm* perm, char** out);

/* sigma-Prufer sequences in the form "(4,4,1|6,4,1|2|18,10)". */
PT_API pt_status pt_sigma_prufer_encode(const pt_tree* tree, const pt_perm* perm, char** out);
PT_API pt_status pt_sigma_prufer_decode(const char* text, const pt_perm* perm, pt_tree** out);
PT_API pt_status pt_is_invariant(const pt_tree* tree, const pt_perm* perm, int* out);

/* ---- exact counts (decimal strings) ---------------------------------- */

PT_API pt_status pt_count_invariant_trees(const pt_perm* perm, char** out);
/* e.g. "2^0 * f(1,2,2) = 2" */
PT_API pt_status pt_count_formula(const pt_perm* perm, char** out);
/* "t_1,t_2,...,t_nmax" */
PT_API pt_status pt_polya_counts(size_t nmax, char** out);
PT_API pt_status pt_count_commuting_functions(const pt_perm* perm, char** out);

/* ---- constants and reference distributions --------------------------- */

typedef struct pt_constants {
  char rho[256];
  char b[256];
  char sigma[256];
  double rho_value;
  double b_value;
  double sigma_value;
} pt_constants;

/* digits (1..200, at most precision) controls the string outputs. */
PT_API pt_status pt_otter_constants(size_t truncation, unsigned precision, double epsilon,
                                    unsigned digits, pt_constants* out);
PT_API pt_status pt_excursion_max_cdf(double x, double* out);
PT_API pt_status pt_width_max_cdf(double x, double* out);
PT_API pt_status pt_airy_area_density(double x, int terms, double* out);
PT_API pt_status pt_max_degree_cdf(size_t n, double rho, double c, double m, double* out);

/* ---- batches --------------------------------------------------------- */

typedef enum pt_kind { PT_KIND_POLYA = 0, PT_KIND_CAYLEY = 1 } pt_kind;

typedef struct pt_batch_config {
  pt_kind kind;
  size_t n;
  size_t samples;
  size_t burnin; /* Burnside steps from the star; ignored for Cayley trees */
  uint64_t seed;
  unsigned threads;
} pt_batch_config;

/* Callbacks run on the calling thread in sample order. The stats pointer
 * and its arrays are valid only during the call. Returning nonzero stops
 * the run with PT_CALLBACK_ABORT. */
typedef int (*pt_stats_callback)(void* user, size_t index, const pt_tree_stats* stats);
typedef int (*pt_tree_callback)(void* user, size_t index, const pt_tree* tree);

/* callback may be NULL; out may be NULL if the summary is not needed. */
PT_API pt_status pt_batch_run(const pt_batch_config* config, pt_stats_callback callback,
                              void* user, pt_batch** out);
PT_API pt_status pt_batch_sample_trees(const pt_batch_config* config, pt_tree_callback callback,
                                       void* user);
PT_API void pt_batch_free(pt_batch* batch);

typedef enum pt_feature {
  PT_FEATURE_HEIGHT = 0,
  PT_FEATURE_PATH_LENGTH,
  PT_FEATURE_WIDTH,
  PT_FEATURE_LEAF_COUNT,
  PT_FEATURE_MAX_DEGREE,
  PT_FEATURE_LOG_AUT,
  PT_FEATURE_HEIGHT_NORM,      /* H / sqrt(n) */
  PT_FEATURE_WIDTH_NORM,       /* W / sqrt(n) */
  PT_FEATURE_PATH_LENGTH_NORM, /* I / n^(3/2) */
  PT_FEATURE_LEAF_FRACTION,    /* leaves / n */
  PT_FEATURE_LOG_AUT_NORM,     /* log|Aut| / n */
  PT_FEATURE_MAX_OUT_DEGREE
} pt_feature;

typedef struct pt_moments {
  uint64_t count;
  double mean;
  double variance; /* unbiased */
  double min;
  double max;
} pt_moments;

PT_API pt_status pt_batch_moments(const pt_batch* batch, pt_feature feature, pt_moments* out);

typedef enum pt_histogram {
  PT_HIST_HEIGHT = 0,
  PT_HIST_WIDTH,
  PT_HIST_MAX_DEGREE,
  PT_HIST_DEGREE, /* summed undirected degree counts over all samples */
  PT_HIST_MAX_OUT_DEGREE
} pt_histogram;

/* Writes up to cap nonzero bins in increasing value order; *len receives the
 * total number of nonzero bins. */
PT_API pt_status pt_batch_histogram(const pt_batch* batch, pt_histogram which, uint64_t* values,
                                    uint64_t* counts, size_t cap, size_t* len);
/* Mean over samples of (#vertices of degree k) / n. */
PT_API pt_status pt_batch_degree_fraction(const pt_batch* batch, size_t k, double* out);

typedef enum pt_height_fit {
  PT_HEIGHT_FIT_SHAPE = 0,     /* least squares against the bare M'(mu + sigma x) */
  PT_HEIGHT_FIT_LIKELIHOOD = 1 /* maximum likelihood over lattice cells */
} pt_height_fit;

/* Fits mu + sigma * H / (2 sqrt n) to the excursion maximum. */
PT_API pt_status pt_batch_height_fit(const pt_batch* batch, pt_height_fit method, double* mu,
                                     double* sigma);

/* Stats of X_0 (the star) .. X_steps of one chain seeded with seed. */
PT_API pt_status pt_chain_trace(size_t n, size_t steps, uint64_t seed, pt_stats_callback callback,
                                void* user);

/* ---- self-check ------------------------------------------------------ */

typedef void (*pt_line_callback)(void* user, const char* line);
/* level: "quick" or "full". *passed is 1 iff every check passed. */
PT_API pt_status pt_validate(const char* level, uint64_t seed, pt_line_callback callback,
                             void* user, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* POLYATREE_H */
