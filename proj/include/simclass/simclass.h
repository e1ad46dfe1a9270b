#ifndef SIMCLASS_H
#define SIMCLASS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SIMCLASS_API __declspec(dllexport)
#else
#define SIMCLASS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum simclass_status {
    SIMCLASS_OK = 0,
    SIMCLASS_ERR_NON_UNIT,
    SIMCLASS_ERR_DIGIT_OUT_OF_RANGE,
    SIMCLASS_ERR_BAD_LEVEL,
    SIMCLASS_ERR_CTX_MISMATCH,
    SIMCLASS_ERR_NOT_INVERTIBLE,
    SIMCLASS_ERR_BAD_PARAMS,
    SIMCLASS_ERR_SEARCH_BUDGET,
    SIMCLASS_ERR_BUDGET,
    SIMCLASS_ERR_WRONG_RESIDUE_TYPE,
    SIMCLASS_ERR_NOT_HARD_CASE,
    SIMCLASS_ERR_NON_INTEGRAL,
    SIMCLASS_ERR_PARSE,
    SIMCLASS_ERR_IO,
    SIMCLASS_ERR_INTERNAL
} simclass_status;

typedef enum simclass_group { SIMCLASS_GROUP_M = 0, SIMCLASS_GROUP_GL = 1 } simclass_group;

typedef struct simclass_ring simclass_ring;
typedef struct simclass_mat simclass_mat;

/* Message of the last failed call on this thread; never NULL. */
SIMCLASS_API const char* simclass_last_error(void);
SIMCLASS_API const char* simclass_status_string(simclass_status status);

/* Strings returned through char** are heap allocated; release them here. */
SIMCLASS_API void simclass_string_free(char* s);

/* Ring descriptor "z:<p>:<len>" (Z/p^len) or "t:<p>:<len>" (F_p[t]/t^len). */
SIMCLASS_API simclass_status simclass_ring_parse(const char* descriptor, simclass_ring** out);
SIMCLASS_API void simclass_ring_free(simclass_ring* ring);
SIMCLASS_API simclass_status simclass_ring_descriptor(const simclass_ring* ring, char** out);

/* Parses a matrix object {"ring","n","entries"} or, when ring is given, a bare array of rows. */
SIMCLASS_API simclass_status simclass_mat_parse(const char* json, const simclass_ring* ring, simclass_mat** out);
/* Row-major entries given as ring element indices (base-p digit packing). */
SIMCLASS_API simclass_status simclass_mat_create(const simclass_ring* ring, int n, const uint64_t* entries,
                                                 simclass_mat** out);
SIMCLASS_API simclass_status simclass_mat_to_json(const simclass_mat* mat, char** out);
SIMCLASS_API void simclass_mat_free(simclass_mat* mat);

/* {"form": ..., "witness": rows, "canonical": rows}; witness conjugates a into the canonical matrix. */
SIMCLASS_API simclass_status simclass_canon(const simclass_mat* a, char** out_json);

/* *similar is 1 or 0; out_json receives {"similar": bool, "witness": rows|null} when non-NULL. */
SIMCLASS_API simclass_status simclass_is_similar(const simclass_mat* a, const simclass_mat* b, int* similar,
                                                 char** out_json);

/* Decimal order of the centralizer of a in GL_n. */
SIMCLASS_API simclass_status simclass_centralizer_order(const simclass_mat* a, char** out_decimal);

/* Number of classes of n x n matrices over a ring with residue field of size q and length level. */
SIMCLASS_API simclass_status simclass_count(int n, simclass_group group, uint64_t q, uint32_t level,
                                            char** out_decimal);
/* Generating function coefficients 0..terms-1, one decimal per line. */
SIMCLASS_API simclass_status simclass_gf(int n, simclass_group group, uint64_t q, uint32_t terms, char** out_lines);

/* Called once per representative with a single JSON line; a nonzero return stops the walk. */
typedef int (*simclass_line_cb)(const char* line, void* user);
SIMCLASS_API simclass_status simclass_enumerate(const simclass_ring* ring, int n, simclass_group group,
                                                uint64_t budget, simclass_line_cb cb, void* user);

/* Census summary {"ring","group","count","histogram"}; histogram holds the type count vectors of
   levels 1..len as 4-element arrays of decimal strings, count is the class count at full length. */
SIMCLASS_API simclass_status simclass_histogram(const simclass_ring* ring, simclass_group group, uint64_t budget,
                                                char** out_json);

typedef struct simclass_oracle_options {
    uint64_t state_budget;
    unsigned jobs;
    /* NULL or empty disables the census cache. */
    const char* cache_dir;
} simclass_oracle_options;

SIMCLASS_API void simclass_oracle_options_default(simclass_oracle_options* opts);

/* {"ring","n","group","classes","from_cache","orbits":[{"min_rep","size"}...]} */
SIMCLASS_API simclass_status simclass_oracle_census(const simclass_ring* ring, int n, simclass_group group,
                                                    const simclass_oracle_options* opts, int include_orbits,
                                                    char** out_json);

/* Cross-check report JSON; *ok is 1 when every comparison agrees. */
SIMCLASS_API simclass_status simclass_verify(const simclass_ring* ring, int n, const simclass_oracle_options* opts,
                                             int* ok, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
