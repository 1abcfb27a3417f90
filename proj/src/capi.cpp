#include "wgl/wgl.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "wgl/enumeration.hpp"
#include "wgl/error.hpp"
#include "wgl/exp_sums.hpp"
#include "wgl/ledger.hpp"
#include "wgl/singular_series.hpp"

struct wgl_report {
    wgl::Report report;
    std::vector<std::string> failures;
};

struct wgl_scan {
    wgl::ScanResult result;
    bool witness = false;
};

namespace {

thread_local std::string last_error;

wgl_status fail(wgl_status s, const char* what) {
    last_error = what;
    return s;
}

template <class F>
wgl_status guard(F&& body) {
    try {
        last_error.clear();
        body();
        return WGL_OK;
    } catch (const wgl::RangeTooSmallError& e) {
        return fail(WGL_ERR_RANGE_TOO_SMALL, e.what());
    } catch (const wgl::DomainError& e) {
        return fail(WGL_ERR_DOMAIN, e.what());
    } catch (const wgl::DependencyError& e) {
        return fail(WGL_ERR_DEPENDENCY, e.what());
    } catch (const wgl::IoError& e) {
        return fail(WGL_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(WGL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WGL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(WGL_ERR_INTERNAL, "unknown error");
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

wgl_interval to_c(const wgl::Interval& x) { return {x.lo, x.hi}; }

nlohmann::json scan_json(const wgl_scan& s) {
    const auto& r = s.result;
    nlohmann::json j;
    j["kind"] = s.witness ? "witness_scan" : "density_scan";
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    j["tested_count"] = r.tested_count;
    j["represented_count"] = r.represented_count;
    j["fraction"] = r.fraction;
    if (s.witness) {
        j["validation_failures"] = r.validation_failures;
        j["closure_checks"] = r.closure_checks;
        j["closure_violations"] = r.closure_violations;
        j["parity_violations"] = r.parity_violations;
        nlohmann::json worst = nlohmann::json::array();
        for (const auto& [t, k] : r.worst_cases)
            worst.push_back({{"target", t}, {"min_k", k ? nlohmann::json(*k) : nlohmann::json("NONE")}});
        j["worst_cases"] = worst;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"target", row.target},
                            {"min_k", row.min_k ? nlohmann::json(*row.min_k) : nlohmann::json("NONE")},
                            {"witness", row.witness}});
        j["rows"] = rows;
    } else {
        j["spot_checks"] = r.spot_checks;
        j["spot_mismatches"] = r.spot_mismatches;
    }
    j["notes"] = r.notes;
    return j;
}

std::string scan_markdown(const wgl_scan& s) {
    const auto& r = s.result;
    std::ostringstream os;
    os << "# " << (s.witness ? "Witness scan" : "Density scan") << " [" << r.lo << ", " << r.hi << "]\n\n";
    os << "| quantity | value |\n|---|---|\n";
    os << "| tested | " << r.tested_count << " |\n| represented | " << r.represented_count << " |\n";
    os << "| fraction | " << r.fraction << " |\n";
    if (s.witness) {
        os << "| validation failures | " << r.validation_failures << " |\n";
        os << "| closure checks | " << r.closure_checks << " |\n";
        os << "| closure violations | " << r.closure_violations << " |\n";
        os << "| parity violations | " << r.parity_violations << " |\n";
        os << "\n| N | min k | witness |\n|---|---|---|\n";
        for (const auto& row : r.rows)
            os << "| " << row.target << " | " << (row.min_k ? std::to_string(*row.min_k) : "NONE") << " | "
               << row.witness << " |\n";
    } else {
        os << "| spot checks | " << r.spot_checks << " |\n| spot mismatches | " << r.spot_mismatches << " |\n";
    }
    if (!r.notes.empty()) os << "\n";
    for (const auto& n : r.notes) os << "- " << n << "\n";
    return os.str();
}

}  // namespace

extern "C" {

const char* wgl_version(void) { return "1.0.0"; }

const char* wgl_last_error(void) { return last_error.c_str(); }

void wgl_string_free(char* s) { std::free(s); }

wgl_status wgl_power_sum(uint64_t q, uint64_t a, unsigned k, double* re, double* im, double* err) {
    if (!re || !im || !err) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    return guard([&] {
        const wgl::ExpSumValue v = wgl::complete_power_sum(q, a, k);
        *re = v.re;
        *im = v.im;
        *err = v.err;
    });
}

wgl_status wgl_window_max(uint64_t q, wgl_window_stat* out) {
    if (!out) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    return guard([&] {
        const wgl::WindowStatistic w = wgl::window_max(q);
        *out = {w.modulus, w.rho, w.max_abs, to_c(w.max_enclosure), w.argmax};
    });
}

wgl_status wgl_check_power_sum_bounds(uint64_t prime_limit, double tol, unsigned threads, wgl_power_sum_check* out) {
    if (!out) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    return guard([&] {
        const auto r = wgl::check_power_sum_bounds(prime_limit, tol, threads);
        *out = {r.prime_limit,      r.primes_checked,  r.sums_checked,       r.bound_violations,
                r.cubic_violations, r.min_bound_slack, r.max_cubic_deviation};
    });
}

wgl_status wgl_exceptional_measure(double lambda, unsigned L, uint64_t samples, unsigned threads, double* out) {
    if (!out) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    return guard([&] { *out = wgl::exceptional_measure_estimate(lambda, L, samples, threads); });
}

wgl_status wgl_euler(uint64_t prime_limit, uint64_t sha_prime_limit, unsigned threads, wgl_euler_result* out,
                     char** json) {
    if (!out) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    return guard([&] {
        wgl::EulerProductConfig cfg;
        cfg.prime_limit = prime_limit;
        cfg.threads = threads;
        const wgl::EulerProductReport p = wgl::c0_products(cfg);
        const wgl::ShaStarReport s = wgl::sha_star_upper(sha_prime_limit, threads);
        std::vector<std::string> failed;
        if (!(p.a1.lo >= 0.916696)) failed.push_back("A1");
        if (!(p.a2.lo >= 0.992923)) failed.push_back("A2");
        if (!(p.a3.lo >= wgl::kA3Floor)) failed.push_back("A3");
        if (!p.c0.intersects(wgl::Interval(0.910204, 0.910210))) failed.push_back("C0");
        if (!(s.bound.hi <= 3.394)) failed.push_back("sha_star");
        *out = {to_c(p.a1), to_c(p.a2), to_c(p.a3), to_c(p.c0), to_c(s.bound), failed.empty() ? 1 : 0};
        if (json) {
            nlohmann::json j = wgl::singular_series_fragment(p, s);
            j["failures"] = failed;
            j["config"] = {{"prime_limit", prime_limit}, {"sha_prime_limit", sha_prime_limit}};
            *json = dup(j.dump(2) + "\n");
        }
    });
}

void wgl_report_config_default(wgl_report_config* config) {
    if (!config) return;
    const wgl::ReportConfig d;
    *config = {d.eta, d.lambda, d.k, d.prime_limit, d.sha_prime_limit, d.power_sum_limit, d.samples, d.N, d.threads};
}

wgl_status wgl_report_run(const wgl_report_config* config, wgl_report** out) {
    if (!config || !out) return fail(WGL_ERR_NULL_ARGUMENT, "null argument");
    *out = nullptr;
    return guard([&] {
        wgl::ReportConfig c;
        c.eta = config->eta;
        c.lambda = config->lambda;
        c.k = config->k;
        c.prime_limit = config->prime_limit;
        c.sha_prime_limit = config->sha_prime_limit;
        c.power_sum_limit = config->power_sum_limit;
        c.samples = config->samples;
        c.N = config->N;
        c.threads = config->threads;
        if (!(c.eta > 0.0 && c.eta < 1.0)) throw wgl::DomainError("eta must lie in (0, 1)");
        if (!(c.lambda > 0.0 && c.lambda < 1.0)) throw wgl::DomainError("lambda must lie in (0, 1)");
        if (c.k < 1) throw wgl::DomainError("k must be >= 1");
        auto* r = new wgl_report{wgl::full_report(c), {}};
        r->failures = r->report.failures();
        *out = r;
    });
}

void wgl_report_free(wgl_report* report) { delete report; }

int wgl_report_passed(const wgl_report* report) { return report && report->failures.empty() ? 1 : 0; }

size_t wgl_report_failure_count(const wgl_report* report) { return report ? report->failures.size() : 0; }

const char* wgl_report_failure(const wgl_report* report, size_t index) {
    if (!report || index >= report->failures.size()) return nullptr;
    return report->failures[index].c_str();
}

wgl_status wgl_report_render(const wgl_report* report, wgl_format format, char** out) {
    if (!report || !out) return fail(WGL_ERR_NULL_ARGUMENT, "null argument");
    return guard([&] {
        switch (format) {
            case WGL_FORMAT_JSON: *out = dup(report->report.to_json().dump(2) + "\n"); break;
            case WGL_FORMAT_MARKDOWN: *out = dup(report->report.to_markdown()); break;
            default: throw wgl::DomainError("reports render as json or markdown");
        }
    });
}

wgl_status wgl_report_entry(const wgl_report* report, const char* name, int replay, wgl_interval* computed,
                            wgl_entry_status* status) {
    if (!report || !name) return fail(WGL_ERR_NULL_ARGUMENT, "null argument");
    const auto& list = replay ? report->report.cited_replay : report->report.entries;
    for (const auto& e : list) {
        if (e.name != name) continue;
        if (computed) *computed = to_c(e.computed);
        if (status) *status = static_cast<wgl_entry_status>(e.status);
        last_error.clear();
        return WGL_OK;
    }
    return fail(WGL_ERR_DOMAIN, "no such report entry");
}

wgl_status wgl_density_scan(uint64_t lo, uint64_t hi, unsigned spot_checks, const char* cache_path, wgl_scan** out) {
    if (!out) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guard([&] {
        const std::filesystem::path cache = cache_path ? std::filesystem::path(cache_path) : std::filesystem::path();
        *out = new wgl_scan{wgl::density_scan(lo, hi, spot_checks, cache), false};
    });
}

wgl_status wgl_witness_scan(uint64_t lo, uint64_t hi, unsigned k_max, unsigned threads, wgl_scan** out) {
    if (!out) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guard([&] { *out = new wgl_scan{wgl::witness_scan(lo, hi, k_max, threads), true}; });
}

void wgl_scan_free(wgl_scan* scan) { delete scan; }

wgl_status wgl_scan_get_summary(const wgl_scan* scan, wgl_scan_summary* out) {
    if (!scan || !out) return fail(WGL_ERR_NULL_ARGUMENT, "null argument");
    const auto& r = scan->result;
    *out = {r.lo,
            r.hi,
            r.tested_count,
            r.represented_count,
            r.fraction,
            r.spot_checks,
            r.spot_mismatches,
            r.validation_failures,
            r.closure_checks,
            r.closure_violations,
            r.parity_violations};
    last_error.clear();
    return WGL_OK;
}

wgl_status wgl_scan_render(const wgl_scan* scan, wgl_format format, char** out) {
    if (!scan || !out) return fail(WGL_ERR_NULL_ARGUMENT, "null argument");
    return guard([&] {
        switch (format) {
            case WGL_FORMAT_JSON: *out = dup(scan_json(*scan).dump(2) + "\n"); break;
            case WGL_FORMAT_MARKDOWN: *out = dup(scan_markdown(*scan)); break;
            case WGL_FORMAT_CSV:
                if (!scan->witness) throw wgl::DomainError("CSV output is defined for witness scans");
                *out = dup(wgl::scan_csv(scan->result));
                break;
        }
    });
}

wgl_status wgl_witness(uint64_t N, unsigned k, char** witness) {
    if (!witness) return fail(WGL_ERR_NULL_ARGUMENT, "null output pointer");
    *witness = nullptr;
    return guard([&] {
        const auto w = wgl::goldbach_linnik_witness(N, k);
        if (w) *witness = dup(w->to_string());
    });
}

}  // extern "C"
