#include <doctest.h>

#include <cstring>
#include <string>

#include "wgl/wgl.h"

TEST_CASE("C API: status codes and last error") {
    double re = 0, im = 0, err = 0;
    CHECK(wgl_power_sum(7, 1, 3, &re, &im, &err) == WGL_OK);
    CHECK(std::string(wgl_last_error()).empty());
    CHECK(wgl_power_sum(7, 1, 3, nullptr, &im, &err) == WGL_ERR_NULL_ARGUMENT);
    CHECK(wgl_power_sum(0, 1, 3, &re, &im, &err) == WGL_ERR_DOMAIN);
    CHECK_FALSE(std::string(wgl_last_error()).empty());
    CHECK(std::strlen(wgl_version()) > 0);
}

TEST_CASE("C API: window statistic at 105") {
    wgl_window_stat w{};
    REQUIRE(wgl_window_max(105, &w) == WGL_OK);
    CHECK(w.rho == 12);
    CHECK(w.max_abs == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(wgl_window_max(4, &w) == WGL_ERR_DOMAIN);
}

TEST_CASE("C API: power-sum bounds and measure") {
    wgl_power_sum_check c{};
    REQUIRE(wgl_check_power_sum_bounds(200, 1e-9, 1, &c) == WGL_OK);
    CHECK(c.bound_violations == 0);
    CHECK(c.cubic_violations == 0);
    double m = -1;
    REQUIRE(wgl_exceptional_measure(0.0, 20, 100000, 1, &m) == WGL_OK);
    CHECK(m == 1.0);
    CHECK(wgl_exceptional_measure(0.5, 0, 100000, 1, &m) == WGL_ERR_DOMAIN);
}

TEST_CASE("C API: witness for 88 and none for 87") {
    char* w = nullptr;
    REQUIRE(wgl_witness(88, 16, &w) == WGL_OK);
    REQUIRE(w != nullptr);
    CHECK(std::string(w).rfind("2^2+2^2+2^3+2^3+2^4+2^4+2^1", 0) == 0);
    wgl_string_free(w);
    REQUIRE(wgl_witness(87, 16, &w) == WGL_OK);
    CHECK(w == nullptr);
    CHECK(wgl_witness(88, 17, &w) == WGL_ERR_DOMAIN);
}

TEST_CASE("C API: scans") {
    wgl_scan* s = nullptr;
    REQUIRE(wgl_witness_scan(88, 120, 16, 1, &s) == WGL_OK);
    wgl_scan_summary sum{};
    REQUIRE(wgl_scan_get_summary(s, &sum) == WGL_OK);
    CHECK(sum.tested_count == 17);
    CHECK(sum.represented_count == 17);
    char* csv = nullptr;
    REQUIRE(wgl_scan_render(s, WGL_FORMAT_CSV, &csv) == WGL_OK);
    CHECK(std::string(csv).rfind("target,min_k,witness\n88,1,", 0) == 0);
    wgl_string_free(csv);
    char* json = nullptr;
    REQUIRE(wgl_scan_render(s, WGL_FORMAT_JSON, &json) == WGL_OK);
    CHECK(std::string(json).find("\"closure_checks\"") != std::string::npos);
    wgl_string_free(json);
    wgl_scan_free(s);

    REQUIRE(wgl_density_scan(29, 10000, 10, nullptr, &s) == WGL_OK);
    REQUIRE(wgl_scan_get_summary(s, &sum) == WGL_OK);
    CHECK(sum.represented_count == 448);
    CHECK(wgl_scan_render(s, WGL_FORMAT_CSV, &csv) == WGL_ERR_DOMAIN);
    wgl_scan_free(s);

    CHECK(wgl_density_scan(10, 100, 10, nullptr, &s) == WGL_ERR_DOMAIN);
    CHECK(s == nullptr);
    CHECK(wgl_density_scan(1000, 2000, 10, "/nonexistent-dir/cache.glbs", &s) == WGL_ERR_IO);
}

TEST_CASE("C API: report handle") {
    wgl_report_config cfg;
    wgl_report_config_default(&cfg);
    CHECK(cfg.k == 16);
    CHECK(cfg.lambda == 0.833783);
    CHECK(cfg.eta == 1e-10);
    CHECK(cfg.prime_limit == 1000000);
    cfg.prime_limit = 10000;
    cfg.sha_prime_limit = 10000;
    cfg.power_sum_limit = 100;
    cfg.samples = 10000;
    wgl_report* r = nullptr;
    REQUIRE(wgl_report_run(&cfg, &r) == WGL_OK);
    CHECK_FALSE(wgl_report_passed(r));
    CHECK(wgl_report_failure_count(r) > 0);
    CHECK(wgl_report_failure(r, 0) != nullptr);
    CHECK(wgl_report_failure(r, 1000) == nullptr);
    wgl_interval x{};
    wgl_entry_status st{};
    REQUIRE(wgl_report_entry(r, "window_rho", 0, &x, &st) == WGL_OK);
    CHECK(x.lo == 12.0);
    CHECK(st == WGL_CERTIFIED);
    REQUIRE(wgl_report_entry(r, "minimal_k", 1, &x, &st) == WGL_OK);
    CHECK(x.lo == 16.0);
    CHECK(st == WGL_REPRODUCED);
    CHECK(wgl_report_entry(r, "nope", 0, &x, &st) == WGL_ERR_DOMAIN);
    char* md = nullptr;
    REQUIRE(wgl_report_render(r, WGL_FORMAT_MARKDOWN, &md) == WGL_OK);
    CHECK(std::string(md).find("| window_rho |") != std::string::npos);
    wgl_string_free(md);
    CHECK(wgl_report_render(r, WGL_FORMAT_CSV, &md) == WGL_ERR_DOMAIN);
    wgl_report_free(r);

    cfg.lambda = 1.5;
    CHECK(wgl_report_run(&cfg, &r) == WGL_ERR_DOMAIN);
    CHECK(wgl_report_run(nullptr, &r) == WGL_ERR_NULL_ARGUMENT);
}
