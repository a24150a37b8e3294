/* C interface to the kstat library.
 *
 * Every handle is opaque and owned by the caller once returned; release it
 * with the matching *_free function. Strings returned through char** are
 * heap allocated and released with kstat_string_free. On any status other
 * than KSTAT_OK, kstat_last_error() describes the failure (per thread). */
#ifndef KSTAT_KSTAT_H
#define KSTAT_KSTAT_H

#include <stddef.h>

#if defined(_WIN32)
#define KSTAT_API __declspec(dllexport)
#else
#define KSTAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as command-line exit codes. */
typedef enum kstat_status {
  KSTAT_OK = 0,
  KSTAT_VERIFICATION_FAILED = 1,
  KSTAT_USAGE = 2,
  KSTAT_CAPACITY = 3,
  KSTAT_DIMENSION = 4,
  KSTAT_SAMPLE_SIZE = 5,
  KSTAT_PARSE = 6,
  KSTAT_IO = 7,
  KSTAT_INTERNAL = 8
} kstat_status;

typedef enum kstat_format { KSTAT_FORMAT_TEXT = 0, KSTAT_FORMAT_JSON = 1, KSTAT_FORMAT_LATEX = 2 } kstat_format;
typedef enum kstat_mode { KSTAT_MODE_EXACT = 0, KSTAT_MODE_FLOAT = 1 } kstat_mode;
typedef enum kstat_number { KSTAT_NUMBER_FRACTION = 0, KSTAT_NUMBER_DECIMAL = 1 } kstat_number;

typedef struct kstat_options {
  unsigned max_univariate_order;   /* default 32 */
  unsigned max_multivariate_order; /* default 12 */
  int parallel;                    /* nonzero: spread terms over threads */
  unsigned threads;                /* 0: hardware concurrency */
} kstat_options;

typedef struct kstat_estimator kstat_estimator;
typedef struct kstat_dataset kstat_dataset;
typedef struct kstat_report kstat_report;

KSTAT_API void kstat_options_default(kstat_options* options);
KSTAT_API const char* kstat_last_error(void);
KSTAT_API void kstat_string_free(char* s);

/* family: "k", "pk", "mk" or "mpk"; spec: "5", "3 2", "2 1", "2 1 ; 1 1".
 * options may be NULL for the defaults. */
KSTAT_API kstat_status kstat_generate(const char* family, const char* spec, const kstat_options* options,
                                      kstat_estimator** out);
KSTAT_API kstat_status kstat_estimator_from_json(const char* json, kstat_estimator** out);
KSTAT_API void kstat_estimator_free(kstat_estimator* e);
KSTAT_API kstat_status kstat_estimator_emit(const kstat_estimator* e, kstat_format format, char** out);
KSTAT_API kstat_status kstat_estimator_label(const kstat_estimator* e, char** out);
KSTAT_API size_t kstat_estimator_term_count(const kstat_estimator* e);
KSTAT_API double kstat_estimator_seconds(const kstat_estimator* e);

/* Certification against the product of cumulants. A failed certification
 * still returns KSTAT_OK; inspect the report. */
KSTAT_API kstat_status kstat_verify(const kstat_estimator* e, int parallel, kstat_report** out);
/* suite NULL: the default suite. */
KSTAT_API kstat_status kstat_verify_suite(const char* suite, const kstat_options* options, kstat_report** out);
KSTAT_API const char* kstat_default_suite(void);
KSTAT_API size_t kstat_report_size(const kstat_report* r);
KSTAT_API int kstat_report_all_pass(const kstat_report* r);
/* Borrowed pointers, valid until the report is freed; difference is "0" on pass. */
KSTAT_API kstat_status kstat_report_entry(const kstat_report* r, size_t i, const char** label, int* pass,
                                          const char** difference, double* elapsed_ms);
KSTAT_API kstat_status kstat_report_json(const kstat_report* r, char** out);
KSTAT_API void kstat_report_free(kstat_report* r);

KSTAT_API kstat_status kstat_dataset_load(const char* path, int header, kstat_dataset** out);
KSTAT_API kstat_status kstat_dataset_parse(const char* csv, int header, kstat_dataset** out);
KSTAT_API size_t kstat_dataset_rows(const kstat_dataset* ds);
KSTAT_API unsigned kstat_dataset_columns(const kstat_dataset* ds);
KSTAT_API void kstat_dataset_free(kstat_dataset* ds);

KSTAT_API kstat_status kstat_evaluate(const kstat_estimator* e, const kstat_dataset* ds, kstat_mode mode,
                                      kstat_number number, char** out);

/* grid NULL: the default grid. Writes the TSV table. */
KSTAT_API kstat_status kstat_bench(const char* grid, const kstat_options* options, char** tsv);
KSTAT_API const char* kstat_default_bench_grid(void);

#ifdef __cplusplus
}
#endif

#endif /* KSTAT_KSTAT_H */
