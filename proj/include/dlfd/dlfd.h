/* C interface to the DLFD workbench (libdlfd).
 *
 * All handles are opaque and owned by the caller once returned; free them
 * with the matching *_free function. Strings returned through char** are
 * allocated by the library and released with dlfd_string_free. On any
 * status other than DLFD_OK, dlfd_last_error() describes the failure for
 * the calling thread and output parameters are left untouched.
 *
 * Reports come back as JSON text; see the README for their fields.
 */
#ifndef DLFD_DLFD_H
#define DLFD_DLFD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DLFD_BUILDING_LIBRARY)
#    define DLFD_API __declspec(dllexport)
#  else
#    define DLFD_API __declspec(dllimport)
#  endif
#else
#  define DLFD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dlfd_status {
  DLFD_OK = 0,
  DLFD_ERR_PARSE = 1,            /* terminology, concept, model or tiles text did not parse */
  DLFD_ERR_INVALID_ARGUMENT = 2, /* null pointer, bad bounds, undeclared tile, ... */
  DLFD_ERR_UNKNOWN_NAME = 3,     /* model lacks a symbol the query mentions */
  DLFD_ERR_LIMIT = 4,            /* enumeration ceiling or similar hard cap */
  DLFD_ERR_INTERNAL = 5
} dlfd_status;

typedef enum dlfd_search_kind {
  DLFD_MODEL_FOUND = 0,
  DLFD_NO_MODEL_UP_TO = 1,
  DLFD_RESOURCE_LIMIT = 2
} dlfd_search_kind;

typedef enum dlfd_reduction_mode {
  DLFD_MODE_DIRECT = 0,
  DLFD_MODE_DESUGARED = 1
} dlfd_reduction_mode;

typedef enum dlfd_verify_outcome {
  DLFD_VERIFY_POSITIVE = 0,
  DLFD_VERIFY_BOUNDED_NEGATIVE = 1,
  DLFD_VERIFY_MIXED = 2,
  DLFD_VERIFY_RESOURCE_LIMIT = 3,
  DLFD_VERIFY_WITNESS_REJECTED = 4
} dlfd_verify_outcome;

typedef struct dlfd_search_options {
  size_t min_size;
  size_t max_size;
  /* Per-size conflict budget; 0 means unlimited. DLFD_NODE_LIMIT in the
   * environment overrides it. */
  uint64_t node_limit;
  /* Include wall-clock fields in reports (makes them nondeterministic). */
  int include_timings;
} dlfd_search_options;

typedef struct dlfd_terminology dlfd_terminology;
typedef struct dlfd_model dlfd_model;
typedef struct dlfd_tiling dlfd_tiling;

DLFD_API const char* dlfd_version(void);
DLFD_API const char* dlfd_last_error(void);
DLFD_API void dlfd_string_free(char* s);

/* min 1, max 12, no node limit, no timings. */
DLFD_API dlfd_search_options dlfd_default_search_options(void);

/* --- terminologies ----------------------------------------------------- */

DLFD_API dlfd_status dlfd_terminology_parse(const char* text, dlfd_terminology** out);
DLFD_API void dlfd_terminology_free(dlfd_terminology* t);
DLFD_API size_t dlfd_terminology_size(const dlfd_terminology* t);
/* Canonical text, one axiom per line. */
DLFD_API dlfd_status dlfd_terminology_render(const dlfd_terminology* t, char** out);

/* --- finite interpretations -------------------------------------------- */

/* Reads the .dlfdmodel JSON format. */
DLFD_API dlfd_status dlfd_model_read(const char* json, dlfd_model** out);
DLFD_API void dlfd_model_free(dlfd_model* m);
DLFD_API size_t dlfd_model_size(const dlfd_model* m);
DLFD_API dlfd_status dlfd_model_write(const dlfd_model* m, char** out);
DLFD_API dlfd_status dlfd_model_export_dot(const dlfd_model* m, int hide_selfloops, char** out);

/* Per-axiom statuses with violation witnesses. *satisfied is 1 or 0. */
DLFD_API dlfd_status dlfd_check(const dlfd_terminology* t, const dlfd_model* m, int default_empty_concepts,
                                int* satisfied, char** report_json);

/* Extent of a concept (PFDs allowed) as a JSON array of elements. */
DLFD_API dlfd_status dlfd_eval(const dlfd_model* m, const char* concept_text, int default_empty_concepts,
                               char** members_json);

/* --- bounded model finding --------------------------------------------- */

/* Smallest model of t with a nonempty goal concept within the bounds.
 * *model is set only when *kind is DLFD_MODEL_FOUND; model may be null. */
DLFD_API dlfd_status dlfd_find_model(const dlfd_terminology* t, const char* goal_text,
                                     const dlfd_search_options* opts, dlfd_search_kind* kind, dlfd_model** model,
                                     char** report_json);

/* Finite countermodel to t |= axiom within the bounds. */
DLFD_API dlfd_status dlfd_refute(const dlfd_terminology* t, const char* axiom_text, const dlfd_search_options* opts,
                                 dlfd_search_kind* kind, dlfd_model** model, char** report_json);

/* --- tiling problems and the reduction --------------------------------- */

/* Reads the .tiles JSON format. */
DLFD_API dlfd_status dlfd_tiling_read(const char* json, dlfd_tiling** out);
DLFD_API void dlfd_tiling_free(dlfd_tiling* u);

/* Terminology text followed by the line `# goal: X & T_<t0>`. */
DLFD_API dlfd_status dlfd_reduce(const dlfd_tiling* u, dlfd_reduction_mode mode, char** out);

/* Least torus tiling with t0 at the origin up to max_dim x max_dim.
 * *found is 1 or 0; tiling_json is null-valued when nothing was found. */
DLFD_API dlfd_status dlfd_tile(const dlfd_tiling* u, size_t max_dim, int* found, char** tiling_json);

/* Tiling (doubled to even dimensions) turned into a model of the reduction.
 * *found is 0 when no tiling exists up to max_dim; *model is then untouched. */
DLFD_API dlfd_status dlfd_witness(const dlfd_tiling* u, size_t max_dim, dlfd_reduction_mode mode, int* found,
                                  dlfd_model** model, char** tiling_json);

/* Both directions of the reduction on one instance. *witness is set on the
 * positive branch only; it may be null. */
DLFD_API dlfd_status dlfd_verify(const dlfd_tiling* u, size_t max_dim, const dlfd_search_options* opts,
                                 dlfd_verify_outcome* outcome, dlfd_model** witness, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* DLFD_DLFD_H */
