#include "oms/errors.hpp"
#include "oms/orlicz.hpp"
#include "oms/probes.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace oms;

namespace {

Field seq(std::vector<double> v) {
    Field f = make_sequence({Axis{0, v.size(), 1.0}});
    for (std::size_t i = 0; i < v.size(); ++i) f.at(i) = v[i];
    return f;
}

// Rows of `cols` are axis-1 slices (the inner variable runs along each).
Field table(const std::vector<std::vector<double>>& cols) {
    Field f = make_sequence({Axis{0, cols[0].size(), 1.0}, Axis{0, cols.size(), 1.0}});
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) f.at(i, j) = cols[j][i];
    return f;
}

const Weight one = Weight::constant();

}  // namespace

TEST_SUITE("orlicz") {

TEST_CASE("Luxemburg examples") {
    const auto sq = QuasiYoungFunction::plain_power(2);
    CHECK(luxemburg(seq({3, 4}), sq, one).value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(luxemburg(seq({3, 4}), QuasiYoungFunction::linf(), one).value == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(luxemburg(seq({1, 1, 1}), QuasiYoungFunction::plain_power(1), one).value ==
          doctest::Approx(3.0).epsilon(1e-12));
    for (const char* name : {"power:2", "linf", "expm1", "lp:0.5"}) {
        const auto r = luxemburg(seq({0, 0, 0}), parse_quasi_young(name), Weight::poly(2));
        CHECK(r.value == 0.0);
        CHECK(r.method == NormMethod::zero);
    }
}

TEST_CASE("bisection agrees with the closed forms") {
    Rng rng(21);
    LuxemburgOptions bis;
    bis.force_bisection = true;
    for (const char* name : {"power:0.5", "power:1", "power:3", "lp:2", "linf"}) {
        const auto phi = parse_quasi_young(name);
        for (int i = 0; i < 20; ++i) {
            Field f = random_sequence(rng, {Axis{-5, 1 + rng.index(30), 1.0}});
            const auto a = luxemburg(f, phi, Weight::poly(1));
            const auto b = luxemburg(f, phi, Weight::poly(1), bis);
            CHECK(a.method == NormMethod::closed_form);
            CHECK(b.method == NormMethod::bisection);
            CHECK(b.value == doctest::Approx(a.value).epsilon(1e-10));
        }
    }
}

TEST_CASE("exponential core on a single atom") {
    // e^{a/lambda} - 1 = 1  <=>  lambda = a / ln 2
    for (double a : {0.1, 1.0, 7.5}) {
        const double want = a / std::numbers::ln2;
        CHECK(luxemburg(seq({a}), QuasiYoungFunction::expm1(), one).value == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("bracket contract of bisection") {
    Rng rng(4);
    LuxemburgOptions o;
    o.force_bisection = true;
    o.record_trace = true;
    const auto phi = QuasiYoungFunction::expm1().with_order(0.5);
    for (int i = 0; i < 20; ++i) {
        const Field f = random_sequence(rng, {Axis{0, 12, 1.0}});
        const auto r = luxemburg(f, phi, one, o);
        std::vector<double> mags;
        for (const auto& v : f.values()) mags.push_back(std::abs(v));
        CHECK(r.modular_at_value <= 1.0 + 1e-10);
        CHECK(modular(mags, 1.0, phi, r.bracket_lo * (1 - 1e-9)) > 1.0);
        CHECK(!r.trace.empty());
    }
}

TEST_CASE("cell measure scales the norm") {
    // sum h |f|^p = lambda^p  =>  factor h^{1/p}
    Field f = make_sampled_1d(16, 0.25);
    Rng rng(2);
    for (auto& v : f.values()) v = rng.complex_normal();
    Field g = make_sequence({Axis{-8, 16, 1.0}});
    for (std::size_t i = 0; i < 16; ++i) g.at(i) = f.at(i);
    const auto p3 = QuasiYoungFunction::plain_power(3);
    CHECK(luxemburg(f, p3, one).value == doctest::Approx(std::cbrt(0.25) * luxemburg(g, p3, one).value).epsilon(1e-12));
}

TEST_CASE("NaN input is a domain error; infinite input is not in the space") {
    CHECK_THROWS_AS(luxemburg(seq({1.0, std::nan("")}), QuasiYoungFunction::standard_power(2), one), DomainError);
    const auto r = luxemburg(seq({1.0, std::numeric_limits<double>::infinity()}),
                             QuasiYoungFunction::standard_power(2), one);
    CHECK_FALSE(r.in_space);
    CHECK(r.method == NormMethod::not_in_space);
}

TEST_CASE("mixed norm examples") {
    const Field a = table({{3, 0}, {4, 5}});
    const auto r = mixed_luxemburg(a, QuasiYoungFunction::plain_power(2), QuasiYoungFunction::linf(), one);
    CHECK(r.value == doctest::Approx(std::sqrt(41.0)).epsilon(1e-12));
    REQUIRE(r.inner_values.size() == 2);
    CHECK(r.inner_values[0] == doctest::Approx(3.0));

    Rng rng(9);
    const Field b = random_sequence(rng, {Axis{-3, 7, 1.0}, Axis{-2, 5, 1.0}});
    double peak = 0.0;
    for (const auto& v : b.values()) peak = std::max(peak, std::abs(v));
    CHECK(mixed_luxemburg(b, QuasiYoungFunction::linf(), QuasiYoungFunction::linf(), one).value ==
          doctest::Approx(peak).epsilon(1e-12));
}

TEST_CASE("mixed standard-power norm of a tensor is a product") {
    // Each power:2 layer contributes 2^{-1/2}: ||a (x) b|| = ||a||_2 ||b||_2 / 2.
    const std::vector<double> a{1, -2, 0.5}, b{3, 1, 2};
    std::vector<std::vector<double>> cols;
    for (double bj : b) {
        std::vector<double> c;
        for (double ai : a) c.push_back(ai * bj);
        cols.push_back(c);
    }
    const double na = std::sqrt(1 + 4 + 0.25), nb = std::sqrt(9 + 1 + 4);
    const auto p2 = QuasiYoungFunction::standard_power(2);
    CHECK(mixed_luxemburg(table(cols), p2, p2, one).value == doctest::Approx(na * nb / 2).epsilon(1e-12));
}

TEST_CASE("order transfer") {
    Rng rng(8);
    const auto p2 = QuasiYoungFunction::standard_power(2), lin = QuasiYoungFunction::standard_power(1);
    const Field f = random_sequence(rng, {Axis{0, 8, 1.0}, Axis{0, 8, 1.0}});
    CHECK(order_transfer_check(f, p2, lin, Weight::poly(1)) <= 1e-12);
    CHECK(order_transfer_check(f, parse_quasi_young("lp:0.5"), p2, Weight::poly(1)) <= 1e-9);
    CHECK(order_transfer_check(f, QuasiYoungFunction::expm1(), parse_quasi_young("power:0.5"),
                               Weight::exp(1, 1, 0.25)) <= 1e-9);
}

TEST_CASE("quasi-triangle inequality at order r0") {
    Rng rng(13);
    const auto phi1 = parse_quasi_young("lp:0.5"), phi2 = parse_quasi_young("power:0.75");
    for (int i = 0; i < 50; ++i) {
        const Field f = random_sequence(rng, {Axis{0, 6, 1.0}, Axis{0, 5, 1.0}}, 0.6);
        const Field g = random_sequence(rng, {Axis{0, 6, 1.0}, Axis{0, 5, 1.0}}, 0.6);
        const auto n = [&](const Field& x) { return std::sqrt(mixed_luxemburg(x, phi1, phi2, one).value); };
        CHECK(n(f + g) <= n(f) + n(g) + 1e-9);
    }
}

TEST_CASE("translation") {
    Field d = seq({1, 0, 0});
    const std::vector<double> zero{0.0}, three{3.0}, frac{0.5};
    const Field t0 = translate(d, zero);
    CHECK(t0.axis(0) == d.axis(0));
    CHECK(t0.at(0) == d.at(0));
    const Field t3 = translate(d, three);
    CHECK(t3.axis(0).first == 3);
    CHECK(t3.at(0) == std::complex<double>(1.0, 0.0));
    CHECK_THROWS_AS(translate(d, frac), DomainError);

    Rng rng(1);
    const Field f = random_sequence(rng, {Axis{0, 10, 1.0}});
    const auto p = QuasiYoungFunction::standard_power(1.5);
    CHECK(luxemburg(translate(f, three), p, one).value == doctest::Approx(luxemburg(f, p, one).value).epsilon(1e-14));
}

TEST_CASE("decomposition functional against brute force") {
    // K(F) = min_tau ( sum mu (F - tau)_+ + tau ) over tau in [0, max F].
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> m(1 + rng.index(10));
        for (auto& v : m) v = rng.uniform(0, 3);
        const double mu = rng.uniform(0.1, 2.0);
        double best = 1e300;
        for (int k = 0; k <= 30000; ++k) {
            const double tau = 3.0 * k / 30000.0;
            double s = tau;
            for (double v : m) s += mu * std::max(0.0, v - tau);
            best = std::min(best, s);
        }
        CHECK(decomposition_norm(m, mu) == doctest::Approx(best).epsilon(1e-3));
        CHECK(decomposition_norm(m, mu) <= best + 1e-12);
    }
}

}  // TEST_SUITE
