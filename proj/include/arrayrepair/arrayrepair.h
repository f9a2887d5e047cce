#ifndef ARRAYREPAIR_H
#define ARRAYREPAIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARP_API __declspec(dllexport)
#else
#define ARP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arp_status {
    ARP_OK = 0,
    ARP_ERR_ARGUMENT = 1,       /* null pointer or bad option value */
    ARP_ERR_FIELD = 2,          /* bad degree/polynomial, element outside the field */
    ARP_ERR_DIVISION_BY_ZERO = 3,
    ARP_ERR_SINGULAR = 4,
    ARP_ERR_DOMAIN = 5,         /* argument outside the supported range */
    ARP_ERR_CODE = 6,           /* MDS violation or malformed code */
    ARP_ERR_GENERATION = 7,     /* random code draw budget exhausted */
    ARP_ERR_PARSE = 8,
    ARP_ERR_INVALID_REPAIR = 9,
    ARP_ERR_INTERNAL = 10
} arp_status;

typedef enum arp_charging { ARP_CHARGE_SUPPORT = 0, ARP_CHARGE_STRICT = 1 } arp_charging;
typedef enum arp_format { ARP_FORMAT_TEXT = 0, ARP_FORMAT_JSON = 1 } arp_format;
typedef enum arp_plot { ARP_PLOT_CSV = 0, ARP_PLOT_SVG = 1 } arp_plot;

typedef struct arp_field arp_field;
typedef struct arp_code arp_code;
typedef struct arp_process arp_process;

/* Message of the last failed call on this thread; "" if none. */
ARP_API const char* arp_last_error(void);
ARP_API const char* arp_status_name(arp_status status);
/* Releases strings returned through char** out-parameters. */
ARP_API void arp_string_free(char* s);

/* poly = 0 selects the built-in polynomial for m. */
ARP_API arp_status arp_field_new(unsigned m, uint32_t poly, arp_field** out);
ARP_API void arp_field_free(arp_field* field);
ARP_API uint32_t arp_field_size(const arp_field* field);
ARP_API uint32_t arp_field_polynomial(const arp_field* field);
ARP_API arp_status arp_field_add(const arp_field* field, uint32_t a, uint32_t b, uint32_t* out);
ARP_API arp_status arp_field_mul(const arp_field* field, uint32_t a, uint32_t b, uint32_t* out);
ARP_API arp_status arp_field_inv(const arp_field* field, uint32_t a, uint32_t* out);

/* blocks holds 4 * n entries, each A_i row-major. */
ARP_API arp_status arp_code_new(const arp_field* field, const uint32_t* blocks, size_t n,
                                arp_code** out);
ARP_API arp_status arp_code_random(const arp_field* field, size_t n, uint64_t seed,
                                   arp_code** out);
ARP_API arp_status arp_code_example(arp_code** out);
ARP_API arp_status arp_code_from_json(const char* text, arp_code** out);
ARP_API arp_status arp_code_to_json(const arp_code* code, char** out);
ARP_API size_t arp_code_n(const arp_code* code);
ARP_API void arp_code_free(arp_code* code);

ARP_API arp_status arp_process_from_json(const char* text, const arp_code* code,
                                         arp_process** out);
ARP_API arp_status arp_process_example(arp_process** out);
ARP_API arp_status arp_process_to_json(const arp_process* process, char** out);
/* total receives B(P); per_node (may be null) receives n entries. */
ARP_API arp_status arp_process_bandwidth(const arp_process* process, const arp_code* code,
                                         arp_charging charging, int* total, int* per_node);
ARP_API void arp_process_free(arp_process* process);

typedef struct arp_search_options {
    arp_charging charging;
    uint32_t max_field_size; /* scans over larger fields are refused */
    unsigned threads;        /* 0: hardware concurrency */
} arp_search_options;

ARP_API void arp_search_options_default(arp_search_options* opts);

/* Optimal total bandwidth of a code; process (may be null) receives the
   assembled optimal process, owned by the caller. */
ARP_API arp_status arp_optimal_total(const arp_code* code, const arp_search_options* opts,
                                     int* total, arp_process** process);

/* Rebuilds node (1-based) of the seeded random codeword. recovered_ok is
   1 when the erased symbols come back exactly. */
ARP_API arp_status arp_repair_check(const arp_process* process, const arp_code* code,
                                    size_t node, uint64_t seed, arp_charging charging,
                                    int* recovered_ok, int* downloaded, int* bandwidth);

typedef struct arp_verify_options {
    unsigned m;
    uint32_t poly; /* 0: built-in */
    size_t n;
    size_t samples;
    uint64_t seed;
    int exhaustive;
    arp_charging charging;
    unsigned threads;
    size_t max_counterexamples;
    uint32_t max_field_size;
} arp_verify_options;

ARP_API void arp_verify_options_default(arp_verify_options* opts);

/* Report builders. *passed is 1 when every check in the report holds. */
ARP_API arp_status arp_report_bound(int n_min, int n_max, arp_plot plot, char** out);
/* Lists the N in [n_min, n_max] where delta3 is not strictly the minimum,
   as "N:attainer" items separated by commas. */
ARP_API arp_status arp_bound_exceptions(int n_min, int n_max, char** out);
/* code may be null for the bundled example code. */
ARP_API arp_status arp_report_example(const arp_code* code, uint64_t seed, arp_format format,
                                      char** out, int* passed);
ARP_API arp_status arp_report_search(unsigned m, size_t n, size_t samples, uint64_t seed,
                                     const arp_search_options* opts, arp_format format,
                                     char** out, int* passed);
ARP_API arp_status arp_report_verify(const arp_verify_options* opts, arp_format format,
                                     char** out, int* passed);
/* process may be null for the optimal assembled process; node is 1-based. */
ARP_API arp_status arp_report_simulate(const arp_code* code, const arp_process* process,
                                       size_t node, uint64_t seed,
                                       const arp_search_options* opts, arp_format format,
                                       char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif
