// Command-line front end. Talks to the library through the C interface only.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wgl/wgl.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
    unsigned threads = 0;
    std::string format = "json";
    std::string output;
};

void add_common(CLI::App* sub, Common& c, const std::vector<std::string>& formats) {
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--output,-o", c.output, "Write to this file instead of stdout");
}

struct Owned {
    char* p = nullptr;
    ~Owned() { wgl_string_free(p); }
};

bool emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(c.output, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << c.output << "\n";
        return false;
    }
    return true;
}

int api_error(wgl_status s) {
    std::cerr << "error: " << wgl_last_error() << "\n";
    return s == WGL_ERR_DOMAIN || s == WGL_ERR_RANGE_TOO_SMALL ? kExitUsage : kExitFail;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

nlohmann::json provenance(const std::string& command, nlohmann::json config) {
    return {{"command", command}, {"config", std::move(config)}, {"version", wgl_version()}};
}

int run_verify(const wgl_report_config& cfg, const Common& c) {
    wgl_report* raw = nullptr;
    if (const auto s = wgl_report_run(&cfg, &raw); s != WGL_OK) return api_error(s);
    std::unique_ptr<wgl_report, decltype(&wgl_report_free)> report(raw, wgl_report_free);
    Owned text;
    const auto f = c.format == "markdown" ? WGL_FORMAT_MARKDOWN : WGL_FORMAT_JSON;
    if (const auto s = wgl_report_render(report.get(), f, &text.p); s != WGL_OK) return api_error(s);
    if (!emit(c, text.p)) return kExitFail;
    if (wgl_report_passed(report.get())) return kExitPass;
    std::cerr << "certification failed:";
    for (size_t i = 0; i < wgl_report_failure_count(report.get()); ++i)
        std::cerr << " " << wgl_report_failure(report.get(), i);
    std::cerr << "\n";
    return kExitFail;
}

int run_expsum(std::uint64_t q, std::uint64_t a, unsigned k, bool single, const Common& c) {
    nlohmann::json j;
    std::string text;
    if (single) {
        double re = 0, im = 0, err = 0;
        if (const auto s = wgl_power_sum(q, a, k, &re, &im, &err); s != WGL_OK) return api_error(s);
        j = {{"q", q}, {"a", a}, {"k", k}, {"re", re}, {"im", im}, {"err", err}};
        text = "C_" + std::to_string(k) + "(" + std::to_string(q) + ", " + std::to_string(a) + ") = " + fmt(re) +
               (im < 0 ? " - " : " + ") + fmt(std::fabs(im)) + "i  (err " + fmt(err) + ")\n";
    } else {
        wgl_window_stat w{};
        if (const auto s = wgl_window_max(q, &w); s != WGL_OK) return api_error(s);
        j = {{"q", w.modulus},
             {"rho", w.rho},
             {"max", w.max_abs},
             {"max_enclosure", {w.max_enclosure.lo, w.max_enclosure.hi}},
             {"argmax", w.argmax}};
        text = "q=" + std::to_string(w.modulus) + " rho=" + std::to_string(w.rho) + " max=" + fmt(w.max_abs) +
               " argmax=" + std::to_string(w.argmax) + "\n";
    }
    if (c.format == "json") {
        j["provenance"] = provenance("expsum", {{"q", q}, {"a", a}, {"k", k}});
        text = j.dump(2) + "\n";
    }
    return emit(c, text) ? kExitPass : kExitFail;
}

int run_euler(std::uint64_t prime_limit, std::uint64_t sha_limit, const Common& c) {
    wgl_euler_result r{};
    Owned json;
    if (const auto s = wgl_euler(prime_limit, sha_limit, c.threads, &r, &json.p); s != WGL_OK) return api_error(s);
    std::string text;
    if (c.format == "json") {
        auto j = nlohmann::json::parse(json.p);
        j["provenance"] = provenance("euler", {{"prime_limit", prime_limit}, {"sha_prime_limit", sha_limit}});
        text = j.dump(2) + "\n";
    } else {
        auto row = [](const char* name, const char* paper, wgl_interval x) {
            return std::string("| ") + name + " | " + paper + " | [" + fmt(x.lo) + ", " + fmt(x.hi) + "] |\n";
        };
        text = "| product | published | computed |\n|---|---|---|\n";
        text += row("A1", ">= 0.916696", r.a1) + row("A2", ">= 0.992923", r.a2) + row("A3", ">= 0.999999", r.a3) +
                row("C0", "0.910207", r.c0) + row("S*", "<= 3.394", r.sha_star);
    }
    if (!emit(c, text)) return kExitFail;
    if (r.passed) return kExitPass;
    const auto j = nlohmann::json::parse(json.p);
    std::cerr << "certification failed:";
    for (const auto& f : j["failures"]) std::cerr << " " << f.get<std::string>();
    std::cerr << "\n";
    return kExitFail;
}

int render_scan(wgl_scan* scan, const Common& c, const nlohmann::json& config, const char* command) {
    std::unique_ptr<wgl_scan, decltype(&wgl_scan_free)> owned(scan, wgl_scan_free);
    const auto f = c.format == "csv" ? WGL_FORMAT_CSV : c.format == "markdown" ? WGL_FORMAT_MARKDOWN : WGL_FORMAT_JSON;
    Owned text;
    if (const auto s = wgl_scan_render(scan, f, &text.p); s != WGL_OK) return api_error(s);
    std::string out = text.p;
    if (f == WGL_FORMAT_JSON) {
        auto j = nlohmann::json::parse(out);
        j["provenance"] = provenance(command, config);
        out = j.dump(2) + "\n";
    }
    if (!emit(c, out)) return kExitFail;
    wgl_scan_summary sum{};
    wgl_scan_get_summary(scan, &sum);
    const std::uint64_t bad = sum.spot_mismatches + sum.validation_failures + sum.closure_violations +
                              sum.parity_violations;
    if (bad == 0) return kExitPass;
    std::cerr << "check failures: spot mismatches " << sum.spot_mismatches << ", validation " << sum.validation_failures
              << ", closure " << sum.closure_violations << ", parity " << sum.parity_violations << "\n";
    return kExitFail;
}

int run_measure(double lambda, unsigned l_min, unsigned l_max, std::uint64_t samples, const Common& c) {
    if (l_min > l_max) {
        std::cerr << "error: --L-min exceeds --L-max\n";
        return kExitUsage;
    }
    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> m;
    for (unsigned L = l_min; L <= l_max; ++L) {
        double v = 0;
        if (const auto s = wgl_exceptional_measure(lambda, L, samples, c.threads, &v); s != WGL_OK)
            return api_error(s);
        m.push_back(v);
        rows.push_back({{"L", L}, {"estimate", v}, {"hits", std::llround(v * static_cast<double>(samples))}});
    }
    bool nonincreasing = true;
    for (std::size_t i = 1; i < m.size(); ++i) nonincreasing = nonincreasing && m[i] <= m[i - 1];
    const bool decreased = m.back() < m.front();
    const double span = static_cast<double>(l_max - l_min);
    nlohmann::json exponent = nullptr;
    std::string exponent_text = "undefined";
    if (span > 0 && m.front() > 0 && m.back() > 0) {
        exponent = std::log2(m.front() / m.back()) / span;
        exponent_text = fmt(exponent.get<double>());
    } else if (span > 0 && m.front() > 0) {
        exponent_text = "unbounded (no grid point reaches lambda L at the largest L)";
    }
    std::string text;
    if (c.format == "json") {
        nlohmann::json j = {{"lambda", lambda},
                            {"samples", samples},
                            {"estimates", rows},
                            {"nonincreasing", nonincreasing},
                            {"decreased", decreased},
                            {"decay_exponent", exponent},
                            {"decay_exponent_text", exponent_text},
                            {"provenance", provenance("measure", {{"lambda", lambda},
                                                                   {"L_min", l_min},
                                                                   {"L_max", l_max},
                                                                   {"samples", samples}})}};
        text = j.dump(2) + "\n";
    } else {
        text = "| L | estimate | hits |\n|---|---|---|\n";
        for (const auto& r : rows)
            text += "| " + std::to_string(r["L"].get<unsigned>()) + " | " + fmt(r["estimate"].get<double>()) + " | " +
                    std::to_string(r["hits"].get<long long>()) + " |\n";
        text += "\ndecay exponent (measure ~ 2^(-E L)): " + exponent_text + "\n";
    }
    return emit(c, text) ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numeric verification of the prime-power Goldbach-Linnik constants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(wgl_version()));

    wgl_report_config cfg{};
    wgl_report_config_default(&cfg);

    Common verify_c, expsum_c, euler_c, density_c, witness_c, measure_c;

    auto* verify = app.add_subcommand("verify", "Full report of every published constant");
    verify->add_option("--eta", cfg.eta, "eta")->capture_default_str();
    verify->add_option("--lambda", cfg.lambda, "lambda")->capture_default_str();
    verify->add_option("--k", cfg.k, "Number of powers of 2")->capture_default_str();
    verify->add_option("--prime-limit", cfg.prime_limit, "Upper end of the A2 product")->capture_default_str();
    verify->add_option("--sha-prime-limit", cfg.sha_prime_limit, "Generic range of the S* product")
        ->capture_default_str();
    verify->add_option("--power-sum-limit", cfg.power_sum_limit, "Primes checked against the C_j bounds")
        ->capture_default_str();
    verify->add_option("--samples", cfg.samples, "Quasi-Monte-Carlo points")->capture_default_str();
    verify->add_option("--N", cfg.N, "N for the dyadic ranges")->capture_default_str();
    add_common(verify, verify_c, {"json", "markdown"});

    std::uint64_t q = 0, a = 0;
    unsigned expsum_k = 2;
    auto* expsum = app.add_subcommand("expsum", "C_k(q, a), or the window statistic of q when --a is absent");
    expsum->add_option("--q", q, "Modulus")->required();
    auto* a_opt = expsum->add_option("--a", a, "Residue");
    expsum->add_option("--k", expsum_k, "Power")->capture_default_str();
    add_common(expsum, expsum_c, {"json", "markdown"});
    expsum_c.format = "markdown";

    std::uint64_t euler_limit = 1000000, sha_limit = 100000;
    auto* euler = app.add_subcommand("euler", "Euler products A1, A2, A3, C0 and the S* bound");
    euler->add_option("--prime-limit", euler_limit, "Upper end of the A2 product")->capture_default_str();
    euler->add_option("--sha-prime-limit", sha_limit, "Generic range of the S* product")->capture_default_str();
    add_common(euler, euler_c, {"json", "markdown"});

    std::uint64_t d_lo = 1000000, d_hi = 2000000;
    unsigned spot = 100;
    std::string cache;
    auto* density = app.add_subcommand("density", "Share of odd l = p1^2 + p2^3 + p3^4 in a range");
    density->add_option("--lo", d_lo, "Lower end")->capture_default_str();
    density->add_option("--hi", d_hi, "Upper end")->capture_default_str();
    density->add_option("--spot-checks", spot, "Random per-l rechecks")->capture_default_str();
    density->add_option("--cache", cache, "Bitset cache file");
    add_common(density, density_c, {"json", "markdown"});

    std::uint64_t N = 0, w_lo = 10000, w_hi = 11000;
    unsigned k_max = 16;
    auto* witness = app.add_subcommand("witness", "Witness for one N (--N) or a minimal-k scan (--lo/--hi)");
    auto* n_opt = witness->add_option("--N", N, "Single target; the witness uses exactly --kmax powers of 2");
    witness->add_option("--lo", w_lo, "Scan lower end")->capture_default_str();
    witness->add_option("--hi", w_hi, "Scan upper end")->capture_default_str();
    witness->add_option("--kmax", k_max, "Powers of 2")->capture_default_str();
    add_common(witness, witness_c, {"csv", "json", "markdown"});
    witness_c.format = "csv";

    double m_lambda = 0.833783;
    unsigned l_min = 20, l_max = 26;
    std::uint64_t m_samples = 1000000;
    auto* measure = app.add_subcommand("measure", "Grid estimate of meas E(lambda) over a range of L");
    measure->add_option("--lambda", m_lambda, "lambda")->capture_default_str();
    measure->add_option("--L-min", l_min, "Smallest L")->capture_default_str();
    measure->add_option("--L-max", l_max, "Largest L")->capture_default_str();
    measure->add_option("--samples", m_samples, "Grid points")->capture_default_str();
    add_common(measure, measure_c, {"json", "markdown"});
    measure_c.format = "markdown";

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (verify->parsed()) {
        cfg.threads = verify_c.threads;
        return run_verify(cfg, verify_c);
    }
    if (expsum->parsed()) return run_expsum(q, a, expsum_k, a_opt->count() > 0, expsum_c);
    if (euler->parsed()) return run_euler(euler_limit, sha_limit, euler_c);
    if (density->parsed()) {
        wgl_scan* scan = nullptr;
        if (const auto s = wgl_density_scan(d_lo, d_hi, spot, cache.empty() ? nullptr : cache.c_str(), &scan);
            s != WGL_OK)
            return api_error(s);
        return render_scan(scan, density_c, {{"lo", d_lo}, {"hi", d_hi}, {"spot_checks", spot}}, "density");
    }
    if (witness->parsed()) {
        if (n_opt->count() > 0) {
            Owned w;
            if (const auto s = wgl_witness(N, k_max, &w.p); s != WGL_OK) return api_error(s);
            std::string text;
            if (witness_c.format == "json") {
                nlohmann::json j = {{"N", N},
                                    {"k", k_max},
                                    {"witness", w.p ? nlohmann::json(w.p) : nlohmann::json("NONE")},
                                    {"provenance", provenance("witness", {{"N", N}, {"kmax", k_max}})}};
                text = j.dump(2) + "\n";
            } else {
                text = std::to_string(N) + " = " + (w.p ? std::string(w.p) : std::string("NONE")) + "\n";
            }
            if (!emit(witness_c, text)) return kExitFail;
            return w.p ? kExitPass : kExitFail;
        }
        wgl_scan* scan = nullptr;
        if (const auto s = wgl_witness_scan(w_lo, w_hi, k_max, witness_c.threads, &scan); s != WGL_OK)
            return api_error(s);
        return render_scan(scan, witness_c, {{"lo", w_lo}, {"hi", w_hi}, {"kmax", k_max}}, "witness");
    }
    if (measure->parsed()) return run_measure(m_lambda, l_min, l_max, m_samples, measure_c);
    return kExitUsage;
}
