#ifndef ADSGEOM_H
#define ADSGEOM_H

/* C interface to the adsg geometry library. All objects are opaque handles
   owned by the caller and released with the matching *_free function.
   Every function returns an adsg_status; on failure a message is available
   from adsg_last_error() on the calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#define ADSG_API __declspec(dllexport)
#else
#define ADSG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adsg_status {
  ADSG_OK = 0,
  ADSG_ERR_INTERNAL = 1,
  ADSG_ERR_INPUT = 2, /* malformed JSON, missing fields, null pointers */
  ADSG_ERR_BAD_INDEX = 10,
  ADSG_ERR_NO_PRINCIPAL_LOG = 11,
  ADSG_ERR_SAME_POINT = 12,
  ADSG_ERR_NOT_PING_PONG = 13,
  ADSG_ERR_NO_CONTRACTION = 14,
  ADSG_ERR_MAX_ITERATIONS = 15,
  ADSG_ERR_COINCIDENT_POINTS = 16,
  ADSG_ERR_INFEASIBLE = 17,
  ADSG_ERR_NON_HYPERBOLIC_BASE = 18,
  ADSG_ERR_STRIPS_OVERLAP = 19,
  ADSG_ERR_NOT_FILLING = 20,
  ADSG_ERR_NOT_ADMISSIBLE = 21,
  ADSG_ERR_NO_POSITIVE_SOLUTION = 22,
  ADSG_ERR_INVALID_ARGUMENT = 23
} adsg_status;

typedef enum adsg_isometry_class {
  ADSG_IDENTITY = 0,
  ADSG_ELLIPTIC = 1,
  ADSG_PARABOLIC = 2,
  ADSG_HYPERBOLIC = 3
} adsg_isometry_class;

typedef enum adsg_delta_kind { ADSG_DELTA_REAL = 0, ADSG_DELTA_IMAGINARY = 1, ADSG_DELTA_ZERO = 2 } adsg_delta_kind;

typedef enum adsg_surface_kind { ADSG_PANTS = 0, ADSG_TORUS = 1 } adsg_surface_kind;

typedef struct adsg_element adsg_element;
typedef struct adsg_surface adsg_surface;
typedef struct adsg_report adsg_report;

ADSG_API const char* adsg_version(void);
/* Message of the last failure on this thread, "" if none. */
ADSG_API const char* adsg_last_error(void);
/* Symbolic name of a status ("StripsOverlap", ...). */
ADSG_API const char* adsg_status_name(adsg_status s);

/* Group elements: projective 2x2 matrices with positive determinant. */
ADSG_API adsg_status adsg_element_new(double a, double b, double c, double d, adsg_element** out);
ADSG_API void adsg_element_free(adsg_element* g);
/* Normalized entries a, b, c, d. */
ADSG_API adsg_status adsg_element_entries(const adsg_element* g, double out[4]);
ADSG_API adsg_status adsg_element_multiply(const adsg_element* g, const adsg_element* h, adsg_element** out);
ADSG_API adsg_status adsg_classify(const adsg_element* g, adsg_isometry_class* out);
ADSG_API adsg_status adsg_translation_length(const adsg_element* g, double* out);
ADSG_API adsg_status adsg_delta(const adsg_element* a, const adsg_element* b, adsg_delta_kind* kind, double* value);
ADSG_API adsg_status adsg_delta_crossratio(const adsg_element* a, const adsg_element* b, adsg_delta_kind* kind, double* value);

/* Schottky surfaces: pants take 3 boundary lengths, the torus 2. */
ADSG_API adsg_status adsg_surface_new(adsg_surface_kind kind, const double* lengths, size_t n, adsg_surface** out);
ADSG_API void adsg_surface_free(adsg_surface* s);
ADSG_API adsg_status adsg_surface_generator(const adsg_surface* s, int index, adsg_element** out);
ADSG_API adsg_status adsg_surface_margin(const adsg_surface* s, double* out);

/* Pipelines: runs a named command ("classify", "delta", "figure",
   "properness", "admissible", "strip", "invert", "fibration", "transition")
   on a JSON config. On domain failures *out still receives a report holding
   the error object, and the domain status is returned. */
ADSG_API adsg_status adsg_run_command(const char* command, const char* config_json, adsg_report** out);
ADSG_API void adsg_report_free(adsg_report* r);
/* JSON text of the report; valid until the report is freed. */
ADSG_API const char* adsg_report_json(const adsg_report* r);
ADSG_API size_t adsg_report_artifact_count(const adsg_report* r);
/* Name and content of the i-th artifact (CSV or SVG text). */
ADSG_API adsg_status adsg_report_artifact(const adsg_report* r, size_t i, const char** name, const char** content);

#ifdef __cplusplus
}
#endif

#endif
