#ifndef WGL_WGL_H
#define WGL_WGL_H

/* C interface to the wgl library. Every call returns a wgl_status; on
 * failure wgl_last_error() describes the problem (per thread). Strings
 * handed out through char** must be released with wgl_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WGL_API __declspec(dllexport)
#else
#define WGL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wgl_status {
    WGL_OK = 0,
    WGL_ERR_DOMAIN = 1,
    WGL_ERR_RANGE_TOO_SMALL = 2,
    WGL_ERR_DEPENDENCY = 3,
    WGL_ERR_IO = 4,
    WGL_ERR_NULL_ARGUMENT = 5,
    WGL_ERR_INTERNAL = 6
} wgl_status;

typedef enum wgl_format { WGL_FORMAT_JSON = 0, WGL_FORMAT_MARKDOWN = 1, WGL_FORMAT_CSV = 2 } wgl_format;

typedef struct wgl_interval {
    double lo;
    double hi;
} wgl_interval;

WGL_API const char* wgl_version(void);
/* Message of the last failed call on this thread, "" if none. */
WGL_API const char* wgl_last_error(void);
WGL_API void wgl_string_free(char* s);

/* ---- exponential sums ---- */

/* C_k(q, a) as a centre (re, im) and Euclidean error radius. */
WGL_API wgl_status wgl_power_sum(uint64_t q, uint64_t a, unsigned k, double* re, double* im, double* err);

typedef struct wgl_window_stat {
    uint64_t modulus;
    uint64_t rho;
    double max_abs;
    wgl_interval max_enclosure;
    uint64_t argmax;
} wgl_window_stat;

/* q odd, q >= 3. */
WGL_API wgl_status wgl_window_max(uint64_t q, wgl_window_stat* out);

typedef struct wgl_power_sum_check {
    uint64_t prime_limit;
    uint64_t primes_checked;
    uint64_t sums_checked;
    uint64_t bound_violations;
    uint64_t cubic_violations;
    double min_bound_slack;
    double max_cubic_deviation;
} wgl_power_sum_check;

WGL_API wgl_status wgl_check_power_sum_bounds(uint64_t prime_limit, double tol, unsigned threads,
                                              wgl_power_sum_check* out);

/* Grid estimate of meas E(lambda) at length L. threads = 0 uses all cores. */
WGL_API wgl_status wgl_exceptional_measure(double lambda, unsigned L, uint64_t samples, unsigned threads,
                                           double* out);

/* ---- Euler products ---- */

typedef struct wgl_euler_result {
    wgl_interval a1;
    wgl_interval a2;
    wgl_interval a3;
    wgl_interval c0;
    wgl_interval sha_star;
    /* 1 iff A1, A2, C0 and S* meet their published values and A3 is at
     * least 0.99996. */
    int passed;
} wgl_euler_result;

/* Runs both products; `json` (optional) receives the full fragment with
 * flags and the list of failed checks. */
WGL_API wgl_status wgl_euler(uint64_t prime_limit, uint64_t sha_prime_limit, unsigned threads,
                             wgl_euler_result* out, char** json);

/* ---- ledger report ---- */

typedef struct wgl_report_config {
    double eta;
    double lambda;
    unsigned k;
    uint64_t prime_limit;
    uint64_t sha_prime_limit;
    uint64_t power_sum_limit;
    uint64_t samples;
    double N;
    unsigned threads;
} wgl_report_config;

typedef struct wgl_report wgl_report;

WGL_API void wgl_report_config_default(wgl_report_config* config);
WGL_API wgl_status wgl_report_run(const wgl_report_config* config, wgl_report** out);
WGL_API void wgl_report_free(wgl_report* report);
WGL_API int wgl_report_passed(const wgl_report* report);
WGL_API size_t wgl_report_failure_count(const wgl_report* report);
/* Borrowed pointer, valid while the report lives. */
WGL_API const char* wgl_report_failure(const wgl_report* report, size_t index);
/* JSON or markdown. */
WGL_API wgl_status wgl_report_render(const wgl_report* report, wgl_format format, char** out);

typedef enum wgl_entry_status { WGL_CERTIFIED = 0, WGL_REPRODUCED = 1, WGL_FLAGGED = 2 } wgl_entry_status;

/* Looks up an entry by name; replay != 0 searches the cited-input replay. */
WGL_API wgl_status wgl_report_entry(const wgl_report* report, const char* name, int replay, wgl_interval* computed,
                                    wgl_entry_status* status);

/* ---- enumeration ---- */

typedef struct wgl_scan wgl_scan;

typedef struct wgl_scan_summary {
    uint64_t lo;
    uint64_t hi;
    uint64_t tested_count;
    uint64_t represented_count;
    double fraction;
    uint64_t spot_checks;
    uint64_t spot_mismatches;
    uint64_t validation_failures;
    uint64_t closure_checks;
    uint64_t closure_violations;
    uint64_t parity_violations;
} wgl_scan_summary;

/* cache_path may be NULL. */
WGL_API wgl_status wgl_density_scan(uint64_t lo, uint64_t hi, unsigned spot_checks, const char* cache_path,
                                    wgl_scan** out);
WGL_API wgl_status wgl_witness_scan(uint64_t lo, uint64_t hi, unsigned k_max, unsigned threads, wgl_scan** out);
WGL_API void wgl_scan_free(wgl_scan* scan);
WGL_API wgl_status wgl_scan_get_summary(const wgl_scan* scan, wgl_scan_summary* out);
/* CSV lists the witness table; JSON and markdown carry summary and rows. */
WGL_API wgl_status wgl_scan_render(const wgl_scan* scan, wgl_format format, char** out);

/* Witness for N with exactly k powers of 2. *witness is NULL when there is
 * none. */
WGL_API wgl_status wgl_witness(uint64_t N, unsigned k, char** witness);

#ifdef __cplusplus
}
#endif

#endif
