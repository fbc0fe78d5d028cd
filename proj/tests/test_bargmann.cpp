#include "oms/bargmann.hpp"
#include "oms/errors.hpp"
#include "oms/gabor.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace oms;

namespace {

const std::size_t kN = 256;
const double kH = 20.0 / kN;

double quad(const Field& a, const Field& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a.values()[i] * std::conj(b.values()[i])).real();
    return s * a.point_measure();
}

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

Field tensor(const Field& a, const Field& b) {
    Field f({a.axis(0), b.axis(0)}, Measure::cell);
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 0; i < a.size(); ++i) f.at(i, j) = a.at(i) * b.at(j);
    return f;
}

}  // namespace

TEST_SUITE("bargmann") {

TEST_CASE("Hermite values") {
    CHECK(hermite_eval(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
    // h_3 = (2^3 3! sqrt(pi))^{-1/2} (8x^3 - 12x) e^{-x^2/2}
    for (double x : {-2.0, -0.3, 0.7, 3.1}) {
        const double want = (8 * x * x * x - 12 * x) * std::exp(-x * x / 2) / std::sqrt(48 * std::sqrt(std::numbers::pi));
        CHECK(hermite_eval(3, x) == doctest::Approx(want).epsilon(1e-13));
    }
    const std::size_t a[] = {1, 2};
    const double x[] = {0.4, -1.1};
    CHECK(hermite_eval(a, x) == doctest::Approx(hermite_eval(1, 0.4) * hermite_eval(2, -1.1)).epsilon(1e-14));
}

TEST_CASE("high orders stay finite") {
    for (double x : {0.0, 5.0, 30.0, 200.0}) {
        const auto v = hermite_values(200, x);
        REQUIRE(v.size() == 201);
        for (double y : v) CHECK(std::isfinite(y));
    }
    // Cramer's bound |h_n| <= pi^{-1/4}
    for (double y : hermite_values(150, 3.3)) CHECK(std::abs(y) <= std::pow(std::numbers::pi, -0.25) + 1e-12);
}

TEST_CASE("orthonormality by quadrature") {
    std::vector<Field> hs;
    for (std::size_t n = 0; n <= 10; ++n) hs.push_back(hermite_function(n, kN, kH));
    for (std::size_t i = 0; i <= 10; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double g = quad(hs[i], hs[j]);
            if (i == j)
                CHECK(g == doctest::Approx(1.0).epsilon(1e-8));
            else
                CHECK(std::abs(g) < 1e-10);
        }
}

TEST_CASE("Hermite expansion") {
    const auto c3 = hermite_expand(hermite_function(3, kN, kH), 8);
    for (std::size_t a = 0; a <= 8; ++a) CHECK(std::abs(c3.at(a) - (a == 3 ? 1.0 : 0.0)) < 1e-8);
    CHECK(std::abs(c3.parseval_defect) < 1e-8);
    CHECK_FALSE(c3.boundary_warning);

    const Field f = hermite_function(0, kN, kH) + hermite_function(2, kN, kH);
    const auto c = hermite_expand(f, 6);
    for (std::size_t a = 0; a <= 6; ++a) CHECK(std::abs(c.at(a) - (a == 0 || a == 2 ? 1.0 : 0.0)) < 1e-8);

    const auto wide = hermite_expand(gaussian_window(64, 0.1), 4);
    CHECK(wide.boundary_warning);
}

TEST_CASE("transform of Hermite functions is a normalised monomial") {
    const cplx zs[] = {{0, 0}, {0.7, 0.4}, {-1.2, 0.9}, {2.0, -1.5}};
    for (std::size_t n = 0; n <= 5; ++n) {
        const Field hn = hermite_function(n, kN, kH);
        for (const cplx z : zs) {
            const cplx want = std::pow(z, static_cast<int>(n)) / std::sqrt(factorial(n));
            CHECK(std::abs(bargmann_at(hn, z) - want) < 1e-10);
        }
    }
    CHECK(std::abs(bargmann_at(make_sampled_1d(kN, kH), cplx(1, 1))) == 0.0);
}

TEST_CASE("two-dimensional kernel factorises") {
    const std::size_t n = 128;
    const double h = 16.0 / n;
    const Field f = tensor(hermite_function(1, n, h), hermite_function(2, n, h));
    const std::array<cplx, 2> z{cplx(0.3, -0.2), cplx(-0.5, 0.8)};
    const cplx want = z[0] * z[1] * z[1] / std::sqrt(2.0);
    CHECK(std::abs(bargmann_at(f, z) - want) < 1e-10);
    const auto c = hermite_expand(f, 3);
    CHECK(c.dim == 2);
    CHECK(std::abs(c.at(1, 2) - 1.0) < 1e-8);
    CHECK(std::abs(bargmann_series(c, z) - want) < 1e-8);
}

TEST_CASE("series route agrees with quadrature") {
    const Field f = hermite_function(0, kN, kH) + cplx(0, 1) * hermite_function(2, kN, kH);
    const auto c = hermite_expand(f, 40);
    for (const cplx z : {cplx(0.5, 0.5), cplx(-1.0, 2.0), cplx(2.5, 0.0)})
        CHECK(std::abs(bargmann_series(c, z) - bargmann_at(f, z)) < 1e-8);
}

TEST_CASE("series truncation far from the origin") {
    const Field f = gaussian_window(kN, kH);
    Field shifted = f;
    const std::int64_t s[] = {40};
    shifted = translate(f, s);
    const auto c = hermite_expand(shifted, 6);
    CHECK_THROWS_AS(bargmann_series(c, cplx(8, 0)), TruncationError);
}

TEST_CASE("Cauchy-Riemann residual separates analytic from non-analytic") {
    const Axis ax{-40, 81, 0.05};
    const FockField F = bargmann(hermite_function(1, kN, kH), ax, ax);
    CHECK(cauchy_riemann_residual(F) < 1e-8);
    const FockField G = sample_fock(ax, ax, [](cplx z) { return std::conj(z); });
    CHECK(cauchy_riemann_residual(G) > 0.1);
    // the fourth-order stencil is exact on cubics
    const FockField E = sample_fock(ax, ax, [](cplx z) { return z * z * z - 2.0 * z + 1.0; });
    CHECK(cauchy_riemann_residual(E) < 1e-10);
}

TEST_CASE("B-norm of the constant function") {
    const Axis x = centered_axis(kN, kH);
    const Axis xi = frequency_comb(x);
    const FockField one = sample_fock(x, xi, [](cplx) { return cplx(1.0); });
    const auto p2 = QuasiYoungFunction::standard_power(2);
    CHECK(b_norm(one, p2, p2, Weight::constant()).value == doctest::Approx(0.5).epsilon(1e-8));
    double last = 0.0;
    for (double r : {0.0, 1.0, 2.0}) {
        const double v = b_norm(one, p2, p2, Weight::poly(r)).value;
        CHECK(v > last);
        last = v;
    }
    const FockField zero = sample_fock(x, xi, [](cplx) { return cplx(0.0); });
    CHECK(b_norm(zero, p2, p2, Weight::poly(1)).value == 0.0);
}

TEST_CASE("isometry examples") {
    const Field h0 = hermite_function(0, kN, kH), h1 = hermite_function(1, kN, kH);
    const auto p2 = QuasiYoungFunction::standard_power(2);
    const auto r0 = isometry_check(h0, p2, p2, Weight::constant());
    CHECK(r0.rel_error <= 1e-6);
    CHECK(r0.mod_norm == doctest::Approx(0.5).epsilon(1e-8));

    const auto r1 = isometry_check(h0 + cplx(0, 1) * h1, QuasiYoungFunction::linf(), p2, Weight::poly(1));
    CHECK(r1.rel_error <= 1e-4);

    const auto rz = isometry_check(make_sampled_1d(kN, kH), p2, p2, Weight::constant());
    CHECK(rz.mod_norm == 0.0);
    CHECK(rz.b_norm == 0.0);
    CHECK(rz.rel_error == 0.0);
}

}  // TEST_SUITE
