#ifndef ELLHIGGS_ELLHIGGS_H
#define ELLHIGGS_ELLHIGGS_H

/*
 * C interface to the ellhiggs library.
 *
 * All values cross the boundary as JSON text (schemas in README.md) or as
 * opaque handles. Every function returns an ellh_status; on failure the
 * message is available from ellh_last_error(ctx) until the next call on the
 * same context. Strings returned through `char** out` are owned by the
 * caller and must be released with ellh_string_free.
 *
 * A context is not thread-safe; use one context per thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ELLHIGGS_BUILD)
#    define ELLH_API __declspec(dllexport)
#  else
#    define ELLH_API __declspec(dllimport)
#  endif
#else
#  define ELLH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ellh_status {
    ELLH_OK = 0,
    ELLH_ERR_DOMAIN = 1,   /* mathematical precondition violated */
    ELLH_ERR_PARSE = 2,    /* malformed JSON or value */
    ELLH_ERR_USAGE = 3,    /* bad argument to the API itself */
    ELLH_ERR_SIZE = 4,     /* model or group above the configured caps */
    ELLH_ERR_INTERNAL = 5
} ellh_status;

typedef struct ellh_context ellh_context;
typedef struct ellh_class ellh_class;

ELLH_API const char* ellh_version(void);
ELLH_API const char* ellh_status_name(ellh_status status);

ELLH_API ellh_status ellh_context_new(ellh_context** out);
ELLH_API void ellh_context_free(ellh_context* ctx);
ELLH_API const char* ellh_last_error(const ellh_context* ctx);

/* Reads {"model_n":3,"seed":42,"format":"json","fiber_cap":2000000};
 * absent keys keep their current values. */
ELLH_API ellh_status ellh_context_load_config(ellh_context* ctx, const char* path);
ELLH_API ellh_status ellh_context_set_model_n(ellh_context* ctx, int64_t n);
ELLH_API ellh_status ellh_context_set_seed(ellh_context* ctx, uint64_t seed);
/* "json" or "csv" */
ELLH_API ellh_status ellh_context_set_format(ellh_context* ctx, const char* format);
ELLH_API int64_t ellh_context_model_n(const ellh_context* ctx);
ELLH_API uint64_t ellh_context_seed(const ellh_context* ctx);
/* Returns "json" or "csv"; owned by the context. */
ELLH_API const char* ellh_context_format(const ellh_context* ctx);

ELLH_API void ellh_string_free(char* s);

/* Classes: points of the Higgs moduli space, canonicalized on construction. */
ELLH_API ellh_status ellh_class_from_json(ellh_context* ctx, const char* json, ellh_class** out);
ELLH_API void ellh_class_free(ellh_class* c);
ELLH_API ellh_status ellh_class_to_json(ellh_context* ctx, const ellh_class* c, char** out);
ELLH_API ellh_status ellh_class_isomorphic(ellh_context* ctx, const ellh_class* a, const ellh_class* b, int* out);
ELLH_API ellh_status ellh_class_is_singular(ellh_context* ctx, const ellh_class* c, int* out);
ELLH_API ellh_status ellh_class_underlying_json(ellh_context* ctx, const ellh_class* c, char** out);
ELLH_API ellh_status ellh_class_hitchin_json(ellh_context* ctx, const ellh_class* c, char** out);
/* GL only: (sum x, sum t) as a cotangent point. */
ELLH_API ellh_status ellh_class_det_tr_json(ellh_context* ctx, const ellh_class* c, char** out);
/* GL only: tensor by the cotangent point given as JSON. */
ELLH_API ellh_status ellh_class_translate(ellh_context* ctx, const ellh_class* c, const char* point_json,
                                          ellh_class** out);

/* level: "higgs" or "bundle" (NULL means "higgs"). */
ELLH_API ellh_status ellh_descriptor_json(ellh_context* ctx, const char* group_json, const char* level, char** out);
/* Pattern, fiber descriptor and finite-model counts at the context's model level. */
ELLH_API ellh_status ellh_fiber_json(ellh_context* ctx, const char* group_json, const char* base_json, char** out);
/* family: "O" or "SO". Output follows the context format (JSON array or CSV). */
ELLH_API ellh_status ellh_components(ellh_context* ctx, const char* family, int n, char** out);

/* Verification suites; JSON lines (or CSV for the freeness sweep). *all_confirmed is optional. */
ELLH_API ellh_status ellh_verify_freeness(ellh_context* ctx, int h_max, int l_max, int w_max, char** out,
                                          int* all_confirmed);
ELLH_API ellh_status ellh_verify_quotient_iso(ellh_context* ctx, int h, const int* weights, size_t l, int64_t n,
                                              char** out, int* all_confirmed);
ELLH_API ellh_status ellh_verify_diagrams(ellh_context* ctx, int samples, char** out, int* all_confirmed);

#ifdef __cplusplus
}
#endif

#endif
