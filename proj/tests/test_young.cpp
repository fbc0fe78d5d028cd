#include "oms/errors.hpp"
#include "oms/probes.hpp"
#include "oms/young.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace oms;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

std::vector<double> grid(double hi, std::size_t n) {
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = hi * static_cast<double>(i) / static_cast<double>(n);
    return g;
}
}  // namespace

TEST_SUITE("young") {

TEST_CASE("evaluation examples") {
    CHECK(QuasiYoungFunction::standard_power(2)(3.0) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(QuasiYoungFunction::linf()(0.5) == 0.0);
    CHECK(QuasiYoungFunction::linf()(1.0) == 0.0);
    CHECK(QuasiYoungFunction::linf()(2.0) == kInf);
    const QuasiYoungFunction half(YoungCore::power(2, 0.5), 0.5);
    CHECK(half(4.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(QuasiYoungFunction::expm1()(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
}

TEST_CASE("negative or NaN argument is a domain error") {
    const auto phi = QuasiYoungFunction::standard_power(2);
    CHECK_THROWS_AS(phi(-1e-300), DomainError);
    CHECK_THROWS_AS(phi(std::nan("")), DomainError);
    CHECK_THROWS_AS(QuasiYoungFunction(YoungCore::power(2, 1), 1.5), DomainError);
    CHECK_THROWS_AS(QuasiYoungFunction(YoungCore::power(2, 1), 0.0), DomainError);
}

TEST_CASE("builders") {
    CHECK(parse_quasi_young("power:0.5").order() == 0.5);
    CHECK(parse_quasi_young("lp:3")(2.0) == doctest::Approx(8.0));
    CHECK(parse_quasi_young("power:3")(2.0) == doctest::Approx(8.0 / 3.0));
    CHECK(parse_quasi_young("linf")(3.0) == kInf);
    CHECK_THROWS_AS(parse_quasi_young("cosh"), DomainError);
    CHECK_THROWS_AS(parse_quasi_young("power:x"), DomainError);
    CHECK_THROWS_AS(parse_quasi_young("power:-1"), DomainError);
}

TEST_CASE("standard power matches t^p/p on a log grid") {
    for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 4.0}) {
        const auto phi = QuasiYoungFunction::standard_power(p);
        for (double t = 1e-6; t < 1e6; t *= 3.7) {
            const double want = std::pow(t, p) / p;
            CHECK(phi(t) == doctest::Approx(want).epsilon(1e-14));
        }
    }
}

TEST_CASE("re-expression at a smaller order keeps the values") {
    Rng rng(11);
    for (const char* name : {"power:2", "power:0.75", "lp:1.5", "expm1", "linf"}) {
        const auto phi = parse_quasi_young(name);
        for (double r : {1.0, 0.75, 0.5, 0.25}) {
            if (r > phi.order()) continue;
            const auto psi = phi.with_order(r);
            CHECK(psi.order() == r);
            for (int i = 0; i < 50; ++i) {
                const double t = rng.uniform(0.0, 3.0);
                const double a = phi(t), b = psi(t);
                if (std::isinf(a))
                    CHECK(std::isinf(b));
                else
                    CHECK(b == doctest::Approx(a).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("monotone on random points") {
    Rng rng(3);
    for (const char* name : {"power:0.5", "power:3", "expm1", "lp:0.3"}) {
        const auto phi = parse_quasi_young(name);
        for (int i = 0; i < 200; ++i) {
            double s = rng.uniform(0, 5), t = rng.uniform(0, 5);
            if (s > t) std::swap(s, t);
            CHECK(phi(s) <= phi(t));
        }
        CHECK(phi(0.0) == 0.0);
    }
}

TEST_CASE("verification on a grid") {
    SUBCASE("linear core passes") {
        const auto rep = verify_quasi_young(QuasiYoungFunction::standard_power(1), grid(10, 10));
        CHECK(rep.pass);
        CHECK_FALSE(rep.first_violation);
    }
    SUBCASE("linf with infinite values passes") {
        CHECK(verify_quasi_young(QuasiYoungFunction::linf(), grid(2, 20)).pass);
    }
    SUBCASE("concave knot fails at that knot") {
        // slopes 1, 3, 2: the chord through t = 2 bends down.
        const auto core = YoungCore::piecewise({{0, 0}, {1, 1}, {2, 4}, {3, 6}});
        const auto rep = verify_quasi_young(QuasiYoungFunction(core, 1.0), grid(3, 3));
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.convex);
        REQUIRE(rep.first_violation);
        CHECK(*rep.first_violation == 2);
    }
    SUBCASE("nonzero at the origin fails") {
        const auto core = YoungCore::piecewise({{0, 1}, {1, 2}, {2, 4}});
        const auto rep = verify_quasi_young(QuasiYoungFunction(core, 1.0), grid(2, 4));
        CHECK_FALSE(rep.zero_at_origin);
        CHECK_FALSE(rep.pass);
    }
    SUBCASE("bad grids are rejected") {
        const std::vector<double> g{0.5, 1.0, 2.0};
        CHECK_THROWS_AS(verify_quasi_young(QuasiYoungFunction::linf(), g), DomainError);
        const std::vector<double> h{0.0, 1.0};
        CHECK_THROWS_AS(verify_quasi_young(QuasiYoungFunction::linf(), h), DomainError);
    }
}

TEST_CASE("piecewise core interpolates and extends") {
    const auto core = YoungCore::piecewise({{0, 0}, {1, 1}, {2, 3}});
    CHECK(core(0.5) == doctest::Approx(0.5));
    CHECK(core(1.5) == doctest::Approx(2.0));
    CHECK(core(3.0) == doctest::Approx(5.0));
    const auto flat = YoungCore::piecewise({{0, 0}, {1, 1}, {2, 1}});
    CHECK(flat(2.5) == kInf);
}

TEST_CASE("limit ratio at zero") {
    std::vector<double> ts;
    for (double t = 0.5; t > 1e-9; t /= 2) ts.push_back(t);
    const auto sq = QuasiYoungFunction::plain_power(2), lin = QuasiYoungFunction::plain_power(1);

    const auto a = limit_ratio_at_zero(sq, lin, ts);
    CHECK(a.finite);
    CHECK(a.value == doctest::Approx(0.0));

    const auto b = limit_ratio_at_zero(sq, sq, ts);
    CHECK(b.finite);
    CHECK(b.stabilized);
    CHECK(b.value == doctest::Approx(1.0));

    const auto c = limit_ratio_at_zero(lin, sq, ts);
    CHECK_FALSE(c.finite);

    const auto d = limit_ratio_at_zero(lin, QuasiYoungFunction::linf(), ts);
    CHECK(d.division_flag);
    CHECK_FALSE(d.finite);
}

}  // TEST_SUITE
