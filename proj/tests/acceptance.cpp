// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "oms/calibration.hpp"
#include "oms/config.hpp"
#include "oms/orlicz.hpp"
#include "oms/probes.hpp"
#include "oms/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... xs) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

struct Tally {
    std::size_t total = 0, failed = 0;
    double worst_ratio = 0.0;
};

Tally tally(const oms::SuiteReport& r, const std::function<bool(const std::string&)>& pick) {
    Tally t;
    for (const auto& c : r.cases) {
        if (!pick(c.id)) continue;
        ++t.total;
        if (!c.pass) ++t.failed;
        if (std::isfinite(c.ratio)) t.worst_ratio = std::max(t.worst_ratio, c.ratio);
    }
    return t;
}

std::pair<std::size_t, double> drift_summary(const oms::SuiteReport& r) {
    std::size_t bad = 0;
    double worst = 0.0;
    for (const auto& d : r.drift) {
        if (!d.pass) ++bad;
        worst = std::max(worst, d.drift);
    }
    return {bad, worst};
}

oms::SuiteReport suite(const std::string& name, const oms::Calibration& cal) {
    oms::SuiteConfig c;
    c.suite = name;
    return oms::run_suite(c, cal);
}

oms::Field random_seq(oms::Rng& rng, std::size_t len) {
    oms::Field f = oms::make_sequence({oms::Axis{0, len, 1.0}});
    for (auto& v : f.values()) v = rng.complex_normal();
    return f;
}

oms::Field random_table(oms::Rng& rng, std::size_t n0, std::size_t n1) {
    oms::Field f = oms::make_sequence({oms::Axis{-static_cast<std::int64_t>(n0 / 2), n0, 1.0},
                                       oms::Axis{-static_cast<std::int64_t>(n1 / 2), n1, 1.0}});
    for (auto& v : f.values()) v = rng.complex_normal() * rng.uniform(0.01, 3.0);
    return f;
}

Outcome c1_luxemburg_oracle() {
    const auto t0 = Clock::now();
    oms::Rng rng(7);
    const double ps[] = {1.0, 2.0, 4.0};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double p = ps[i % 3];
        const oms::Field a = random_seq(rng, 1 + rng.index(64));
        double s = 0.0;
        for (const auto& v : a.values()) s += std::pow(std::abs(v), p);
        const double oracle = std::pow(p, -1.0 / p) * std::pow(s, 1.0 / p);
        const auto phi = oms::QuasiYoungFunction::standard_power(p);
        oms::LuxemburgOptions bis;
        bis.force_bisection = true;
        for (const auto& o : {oms::LuxemburgOptions{}, bis}) {
            const double v = oms::luxemburg(a, phi, oms::Weight::constant(), o).value;
            worst = std::max(worst, std::abs(v - oracle) / oracle);
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 1.0, fmt("max rel err %.2e (<= 1e-10), %.3f s (< 1 s)", worst, secs)};
}

struct MixedConfig {
    const char* phi1;
    const char* phi2;
    const char* omega;
};

Outcome c2_order_transfer() {
    const auto t0 = Clock::now();
    oms::Rng rng(7);
    // r0 = 1/2 for the first two, r0 = 1 for the others.
    const MixedConfig cfgs[] = {{"lp:0.5", "power:2", "poly:1"},
                                {"power:2", "lp:0.5", "exp:1,1,0.25"},
                                {"power:2", "power:1", "poly:2"},
                                {"expm1", "linf", "const"}};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto& c = cfgs[i % 4];
        const oms::Field f = random_table(rng, 2 + rng.index(15), 2 + rng.index(15));
        worst = std::max(worst, oms::order_transfer_check(f, oms::parse_quasi_young(c.phi1),
                                                          oms::parse_quasi_young(c.phi2), oms::parse_weight(c.omega)));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 5.0, fmt("max rel err %.2e (<= 1e-9), %.3f s (< 5 s)", worst, secs)};
}

Outcome c3_quasi_triangle() {
    oms::Rng rng(7);
    const MixedConfig cfgs[] = {{"lp:0.5", "lp:0.5", "const"},
                                {"lp:0.5", "power:2", "poly:1"},
                                {"power:1", "expm1", "exp:1,1,0.25"},
                                {"linf", "lp:0.75", "const"}};
    std::size_t violations = 0;
    double worst = -1e300;
    for (int i = 0; i < 200; ++i) {
        const auto& c = cfgs[i % 4];
        const auto p1 = oms::parse_quasi_young(c.phi1), p2 = oms::parse_quasi_young(c.phi2);
        const auto w = oms::parse_weight(c.omega);
        const double r0 = std::min(p1.order(), p2.order());
        const std::size_t n0 = 2 + rng.index(12), n1 = 2 + rng.index(12);
        const oms::Field f = random_table(rng, n0, n1);
        // proportional pairs make the r0 = 1 configuration an equality
        const oms::Field g = i % 5 == 0 ? oms::cplx(0.7) * f : random_table(rng, n0, n1);
        const double nf = oms::mixed_luxemburg(f, p1, p2, w).value;
        const double ng = oms::mixed_luxemburg(g, p1, p2, w).value;
        const double ns = oms::mixed_luxemburg(f + g, p1, p2, w).value;
        const double gap = std::pow(ns, r0) - (std::pow(nf, r0) + std::pow(ng, r0));
        worst = std::max(worst, gap);
        if (gap > 1e-9) ++violations;
    }
    return {violations == 0, fmt("%zu/200 violations, max excess %.2e (slack 1e-9)", violations, worst)};
}

Outcome c4_gabor(const oms::Calibration& cal) {
    const auto t0 = Clock::now();
    const auto r = suite("gabor-reconstruct", cal);
    const double secs = seconds_since(t0);
    const Tally dual = tally(r, [](const std::string& id) { return id == "dual-window"; });
    const Tally rec = tally(r, [](const std::string& id) { return starts_with(id, "reconstruct-"); });
    double dual_res = 0.0;
    for (const auto& c : r.cases)
        if (c.id == "dual-window") dual_res = c.lhs;
    const bool ok = r.verdict && dual.total == 1 && rec.total == 20 && secs < 10.0;
    return {ok, fmt("dual residual %.2e, %zu/%zu reconstructions pass, %.2f s (< 10 s)", dual_res,
                    rec.total - rec.failed, rec.total, secs)};
}

Outcome frozen_suite(const std::string& name, const oms::Calibration& cal, std::size_t expected) {
    const auto r = suite(name, cal);
    const auto [bad_drift, worst] = drift_summary(r);
    const bool ok = r.verdict && r.cases.size() == expected && !r.drift.empty();
    return {ok, fmt("%zu/%zu probes inside frozen interval, %zu drift rows, worst drift %.2e (<= 5%%)",
                    r.cases.size() - r.failures(), r.cases.size(), r.drift.size(), worst)};
}

Outcome c7_wiener(const oms::Calibration& cal) {
    const auto r = suite("wiener-stft", cal);
    const Tally t = tally(r, [](const std::string& id) { return starts_with(id, "order-"); });
    return {t.failed == 0 && t.total >= 500, fmt("%zu violations in %zu instances", t.failed, t.total)};
}

Outcome c8_bargmann(const oms::Calibration& cal) {
    const auto t0 = Clock::now();
    const auto r = suite("bargmann-isometry", cal);
    const double secs = seconds_since(t0);
    const Tally iso = tally(r, [](const std::string& id) { return starts_with(id, "isometry-"); });
    const Tally ref = tally(r, [](const std::string& id) { return starts_with(id, "refine-"); });
    double worst = 0.0;
    for (const auto& c : r.cases)
        if (starts_with(c.id, "isometry-")) worst = std::max(worst, c.lhs);
    const bool ok = r.verdict && iso.total == 16 && ref.total == 16 && secs < 60.0;
    return {ok, fmt("%zu/16 isometry (max rel err %.2e), %zu/16 refinement, %.2f s (< 60 s)", iso.total - iso.failed,
                    worst, ref.total - ref.failed, secs)};
}

Outcome c9_convolution(const oms::Calibration& cal) {
    const auto r = suite("convolution", cal);
    std::string detail;
    bool ok = r.verdict;
    for (const char* part : {"disc-young-", "semidisc-young-", "wiener-conv-", "lattice-conv-", "sampling-"}) {
        const Tally t = tally(r, [part](const std::string& id) { return starts_with(id, part); });
        const std::size_t need = std::string(part) == "sampling-" ? 50 : 100;
        ok = ok && t.failed == 0 && t.total >= need;
        std::string name(part);
        name.pop_back();
        detail += fmt("%s %zu/%zu; ", name.c_str(), t.total - t.failed, t.total);
    }
    const auto [bad_drift, worst] = drift_summary(r);
    detail += fmt("worst drift %.2e", worst);
    return {ok && bad_drift == 0, detail};
}

Outcome c10_embedding(const oms::Calibration& cal) {
    const auto r = suite("embedding", cal);
    const Tally dom = tally(r, [](const std::string& id) { return starts_with(id, "dominate-"); });
    const Tally wit = tally(r, [](const std::string& id) { return starts_with(id, "witness-"); });
    double last_witness = 0.0;
    for (const auto& c : r.cases)
        if (starts_with(c.id, "witness-")) last_witness = std::max(last_witness, c.lhs);
    return {r.verdict && dom.total > 0 && wit.total == 4,
            fmt("domination %zu/%zu, witness ratio reaches %.3g at N = 256", dom.total - dom.failed, dom.total,
                last_witness)};
}

Outcome c11_compactness(const oms::Calibration& cal) {
    const auto r = suite("compactness-indicator", cal);
    return {r.verdict, fmt("%zu/%zu cases (decay for exp vs const, non-decay for equal weights)",
                           r.cases.size() - r.failures(), r.cases.size())};
}

}  // namespace

int main() {
    const oms::Calibration cal = oms::Calibration::load_or_empty(oms::default_calibration_path());

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"luxemburg oracle", c1_luxemburg_oracle},
        {"order transfer", c2_order_transfer},
        {"quasi-triangle", c3_quasi_triangle},
        {"gabor reconstruction", [&] { return c4_gabor(cal); }},
        {"norm equivalence", [&] { return frozen_suite("norm-equivalence", cal, 200); }},
        {"window independence", [&] { return frozen_suite("window-invariance", cal, 150); }},
        {"wiener ordering", [&] { return c7_wiener(cal); }},
        {"bargmann isometry", [&] { return c8_bargmann(cal); }},
        {"convolution and sampling", [&] { return c9_convolution(cal); }},
        {"embedding criterion", [&] { return c10_embedding(cal); }},
        {"compactness indicator", [&] { return c11_compactness(cal); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %-26s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
