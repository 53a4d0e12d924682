/* C interface to the modstat library. All handles are opaque; every call that
 * can fail returns a modstat_status and leaves a message in modstat_last_error()
 * (per thread). Strings returned by the library stay valid until the owning
 * handle is freed, or until the next call on the same thread for last_error. */
#ifndef MODSTAT_MODSTAT_H
#define MODSTAT_MODSTAT_H

#include <stddef.h>

#if defined(_WIN32)
#define MODSTAT_API __declspec(dllexport)
#else
#define MODSTAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum modstat_status {
  MODSTAT_OK = 0,
  MODSTAT_ERR_NULL_ARG = 1,
  MODSTAT_ERR_DOMAIN = 2,       /* argument outside the function's domain */
  MODSTAT_ERR_USAGE = 3,        /* bad name, option or precondition */
  MODSTAT_ERR_PRECONDITION = 4, /* data does not satisfy what the algorithm needs */
  MODSTAT_ERR_PARSE = 5,
  MODSTAT_ERR_IO = 6,
  MODSTAT_ERR_CONSTRUCTION = 7, /* construction ran out of horizon */
  MODSTAT_ERR_INTERNAL = 8
} modstat_status;

typedef enum modstat_format { MODSTAT_FORMAT_CSV = 0, MODSTAT_FORMAT_JSONL = 1 } modstat_format;

typedef struct modstat_modulus modstat_modulus;
typedef struct modstat_lambda modstat_lambda;
typedef struct modstat_sequence modstat_sequence;
typedef struct modstat_report modstat_report;

MODSTAT_API const char* modstat_version(void);
MODSTAT_API const char* modstat_last_error(void);
/* 1-based input line of the last parse error, 0 if none. */
MODSTAT_API size_t modstat_last_error_line(void);
MODSTAT_API const char* modstat_status_name(modstat_status s);

/* "identity", "power:<p>", "log1p", "affinelog", "bounded-rational" */
MODSTAT_API modstat_status modstat_modulus_create(const char* name, modstat_modulus** out);
MODSTAT_API modstat_status modstat_modulus_eval(const modstat_modulus* m, double x, double* out);
MODSTAT_API const char* modstat_modulus_name(const modstat_modulus* m);
MODSTAT_API void modstat_modulus_free(modstat_modulus* m);

/* "full", "affine:<a>", "sqrt", "loggrow" */
MODSTAT_API modstat_status modstat_lambda_create(const char* name, modstat_lambda** out);
MODSTAT_API modstat_status modstat_lambda_at(const modstat_lambda* s, size_t n, double* out);
/* Window I_n = [start, end] of integer indices. */
MODSTAT_API modstat_status modstat_lambda_window(const modstat_lambda* s, size_t n,
                                                 size_t* start, size_t* end);
MODSTAT_API const char* modstat_lambda_name(const modstat_lambda* s);
MODSTAT_API void modstat_lambda_free(modstat_lambda* s);

MODSTAT_API modstat_status modstat_sequence_from_values(const double* values, size_t n,
                                                        modstat_sequence** out);
MODSTAT_API modstat_status modstat_sequence_load(const char* path, modstat_format format,
                                                 modstat_sequence** out);
/* spec_json: a generator spec, e.g. {"kind":"spike","L":0,"set":"squares","N":1000} */
MODSTAT_API modstat_status modstat_sequence_generate(const char* spec_json,
                                                     modstat_sequence** out);
MODSTAT_API size_t modstat_sequence_length(const modstat_sequence* x);
/* Copies min(cap, length) values into buf. */
MODSTAT_API size_t modstat_sequence_copy(const modstat_sequence* x, double* buf, size_t cap);
/* *has_limit = 1 when the sequence carries a known limit (generated sequences). */
MODSTAT_API modstat_status modstat_sequence_known_limit(const modstat_sequence* x,
                                                        int* has_limit, double* limit);
MODSTAT_API modstat_status modstat_sequence_save(const modstat_sequence* x, const char* path,
                                                 modstat_format format);
MODSTAT_API void modstat_sequence_free(modstat_sequence* x);

/* Modulus axioms and lambda class checks. Verdict "passed" or "failed". */
MODSTAT_API modstat_status modstat_validate(const modstat_modulus* m, const modstat_lambda* s,
                                            size_t horizon, modstat_report** out);
/* options_json may be NULL; fields: limit, xi, tau, tail_window, candidate_count.
 * Verdict is the f_lambda-statistical one: "Holds", "Fails" or "Inconclusive". */
MODSTAT_API modstat_status modstat_analyze(const modstat_sequence* x, const modstat_modulus* m,
                                           const modstat_lambda* s, const char* options_json,
                                           modstat_report** out);
/* options_json may be NULL; fields: xi, tau, tail_window, d_max.
 * Verdict "verified" or "failed"; the t,x,y,z table is available as CSV. */
MODSTAT_API modstat_status modstat_decompose(const modstat_sequence* x, double limit,
                                             const modstat_modulus* m, const modstat_lambda* s,
                                             const char* options_json, modstat_report** out);
/* config_json mirrors the suite configuration; NULL or "{}" runs the defaults.
 * Verdict "passed" (no Violated outcome, coverage met) or "failed". */
MODSTAT_API modstat_status modstat_verify_theorems(const char* config_json,
                                                   modstat_report** out);

MODSTAT_API const char* modstat_report_json(const modstat_report* r);
/* Profile (n,ratio) for analyze, decomposition (t,x,y,z) for decompose, else NULL. */
MODSTAT_API const char* modstat_report_csv(const modstat_report* r);
MODSTAT_API const char* modstat_report_verdict(const modstat_report* r);
MODSTAT_API void modstat_report_free(modstat_report* r);

#ifdef __cplusplus
}
#endif

#endif
