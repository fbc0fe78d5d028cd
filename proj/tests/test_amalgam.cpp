#include "oms/amalgam.hpp"
#include "oms/errors.hpp"
#include "oms/gabor.hpp"
#include "oms/probes.hpp"

#include <doctest.h>

#include <cmath>

using namespace oms;

namespace {

// Field on [-L/2, L/2)^2 with step h (L = n h), cell measure.
Field plane(std::size_t n, double h) { return Field({centered_axis(n, h), centered_axis(n, h)}, Measure::cell); }

Field unit_cube(std::size_t n, double h, double value) {
    Field F = plane(n, h);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double x = F.axis(0).coord(i), xi = F.axis(1).coord(j);
            if (x >= 0 && x < 1 && xi >= 0 && xi < 1) F.at(i, j) = value;
        }
    return F;
}

Field random_plane(Rng& rng, std::size_t n, double h) {
    Field F = plane(n, h);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double x = F.axis(0).coord(i), xi = F.axis(1).coord(j);
            F.at(i, j) = rng.complex_normal() * std::exp(-(x * x + xi * xi) / 4);
        }
    return F;
}

Field seq(std::int64_t first, std::vector<double> v, double step = 1.0) {
    Field f = make_sequence({Axis{first, v.size(), step}});
    for (std::size_t i = 0; i < v.size(); ++i) f.at(i) = v[i];
    return f;
}

double rel_diff(const Field& a, const Field& b) { return l2_norm(a - b) / std::max(l2_norm(b), 1e-300); }

const auto kLinf = QuasiYoungFunction::linf();

}  // namespace

TEST_SUITE("amalgam") {

TEST_CASE("cells per unit") {
    CHECK(cells_per_unit(Axis{0, 8, 0.25}) == 4);
    CHECK(cells_per_unit(Axis{0, 8, 1.0}) == 1);
    CHECK_THROWS_AS(cells_per_unit(Axis{0, 8, 0.3}), DomainError);
    CHECK_THROWS_AS(cells_per_unit(Axis{0, 8, 2.0}), DomainError);
}

TEST_CASE("discrete convolution") {
    const Field c = conv_discrete(seq(0, {1, 2}), seq(0, {1, 1}));
    REQUIRE(c.size() == 3);
    CHECK(c.at(0) == cplx(1));
    CHECK(c.at(1) == cplx(3));
    CHECK(c.at(2) == cplx(2));
    CHECK(c.axis(0).first == 0);

    Rng rng(3);
    const Field a = random_sequence(rng, {Axis{-2, 5, 1.0}, Axis{1, 3, 1.0}});
    const Field d = seq(0, {1.0});
    Field delta = make_sequence({Axis{0, 1, 1.0}, Axis{0, 1, 1.0}});
    delta.at(0, 0) = 1.0;
    const Field ad = conv_discrete(a, delta);
    CHECK(ad.axes() == a.axes());
    CHECK(rel_diff(ad, a) == 0.0);

    const Field b = random_sequence(rng, {Axis{3, 4, 1.0}, Axis{-1, 6, 1.0}});
    const Field ab = conv_discrete(a, b), ba = conv_discrete(b, a);
    CHECK(ab.axes() == ba.axes());
    CHECK(rel_diff(ab, ba) < 1e-14);
    // direct double loop as oracle at one point
    const std::int64_t n0 = 3, n1 = 2;
    cplx want = 0;
    for (std::size_t j = 0; j < a.axis(1).count; ++j)
        for (std::size_t i = 0; i < a.axis(0).count; ++i) {
            const std::int64_t k0 = n0 - (a.axis(0).first + static_cast<std::int64_t>(i)) - b.axis(0).first;
            const std::int64_t k1 = n1 - (a.axis(1).first + static_cast<std::int64_t>(j)) - b.axis(1).first;
            if (k0 < 0 || k1 < 0 || k0 >= 4 || k1 >= 6) continue;
            want += a.at(i, j) * b.at(static_cast<std::size_t>(k0), static_cast<std::size_t>(k1));
        }
    const cplx got = ab.at(static_cast<std::size_t>(n0 - ab.axis(0).first), static_cast<std::size_t>(n1 - ab.axis(1).first));
    CHECK(std::abs(got - want) < 1e-13);

    CHECK_THROWS_AS(conv_discrete(seq(0, {1, 2}), seq(0, {1, 1}, 2.0)), DomainError);
    CHECK_THROWS_AS(conv_discrete(seq(0, {1}), delta), DomainError);
}

TEST_CASE("semi-discrete convolution") {
    Rng rng(4);
    const Field f = random_atoms_1d(rng, 128, 0.125, 2, 2.0);
    CHECK(rel_diff(conv_semidiscrete(seq(0, {1.0}, 0.5), f), f) < 1e-15);
    // delta_0 + delta_{1.5} on 0.5 Z: 1.5 = 12 grid steps
    const Field two = conv_semidiscrete(seq(0, {1, 0, 0, 1}, 0.5), f);
    const std::int64_t s[] = {12};
    CHECK(rel_diff(two, f + translate(f, s)) < 1e-15);
    CHECK_THROWS_AS(conv_semidiscrete(seq(0, {1.0}, 0.3), f), DomainError);
    CHECK(sup_norm(conv_semidiscrete(seq(-2, {0, 0, 0}, 0.5), f)) == 0.0);
}

TEST_CASE("support weight constant") {
    const PointSet xs = box_grid(2, 3.0, 7), ys = box_grid(2, 2.0, 5);
    CHECK(support_weight_constant(Weight::constant(), Weight::constant(), Weight::constant(), xs, ys) == 1.0);
    CHECK(support_weight_constant(Weight::poly(2), Weight::poly(2), Weight::poly(2), xs, ys) <= 1.0 + 1e-12);
    CHECK(support_weight_constant(Weight::poly(2), Weight::constant(), Weight::constant(), xs, ys) ==
          doctest::Approx(std::pow(1 + 5.0 + 5.0, 2)));
    const Field a = seq(-1, {0, 2, 0, 3}, 0.5);
    const PointSet sp = support_points(a);
    REQUIRE(sp.size() == 2);
    CHECK(sp[0][0] == 0.0);
    CHECK(sp[1][0] == 1.0);
}

TEST_CASE("amalgam decomposition and Wiener norm") {
    const Field F = unit_cube(32, 0.25, 1.0);
    const auto dec = amalgam_decomposition(F, kLinf, Weight::constant());
    CHECK(dec.measure() == Measure::counting);
    CHECK(sup_norm(dec) == 1.0);
    CHECK(l2_norm(dec) == 1.0);
    CHECK(wiener_norm(F, kLinf, kLinf, kLinf, Weight::constant()).value == doctest::Approx(1.0));

    const auto p2 = QuasiYoungFunction::standard_power(2);
    const Field G = unit_cube(32, 0.25, 3.0);
    CHECK(sup_norm(amalgam_decomposition(G, p2, Weight::constant())) == doctest::Approx(3.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS(amalgam_decomposition(plane(30, 0.3), kLinf, Weight::constant()), DomainError);
}

TEST_CASE("Wiener norm dominates the mixed norm") {
    Rng rng(10);
    const char* fams[][3] = {{"power:2", "power:2", "poly:1"}, {"lp:0.5", "power:1", "exp:1,1,0.25"}, {"expm1", "linf", "const"}};
    for (int i = 0; i < 30; ++i) {
        const auto& c = fams[i % 3];
        const auto p1 = parse_quasi_young(c[0]), p2 = parse_quasi_young(c[1]);
        const Weight w = parse_weight(c[2]);
        const Field F = random_plane(rng, 32, 0.5);
        const double lux = mixed_luxemburg(F, p1, p2, w).value;
        const double wie = wiener_norm(F, kLinf, p1, p2, w).value;
        CHECK(lux <= wie * (1 + 1e-10));
    }
}

TEST_CASE("G-functional reproduces the Wiener norm") {
    Rng rng(2);
    const Field F = random_plane(rng, 32, 0.25);
    const auto p = QuasiYoungFunction::standard_power(1);
    const Field dec = amalgam_decomposition(F, kLinf, Weight::constant());
    const Field G = g_functional(dec, F);
    for (std::size_t i = 0; i < F.size(); ++i) CHECK(std::abs(G.values()[i]) >= std::abs(F.values()[i]));
    CHECK(wiener_norm(G, kLinf, p, p, Weight::constant()).value ==
          doctest::Approx(wiener_norm(F, kLinf, p, p, Weight::constant()).value).epsilon(1e-12));
    CHECK(cube_moderateness(F, Weight::constant()) == 1.0);
    CHECK(cube_moderateness(F, Weight::poly(1)) > 1.0);
}

TEST_CASE("sampling to a lattice") {
    const auto p2 = QuasiYoungFunction::standard_power(2), lin = QuasiYoungFunction::standard_power(1);
    const Field F = unit_cube(32, 0.25, 2.0);
    const auto r = sample_to_lattice(F, 1.0, 1.0, p2, lin, Weight::constant());
    CHECK(r.c_alpha == 2.0);
    CHECK(r.c_beta == 2.0);
    CHECK(r.holds);
    CHECK(r.lhs <= r.rhs);
    CHECK(r.rhs == doctest::Approx(4.0 * wiener_norm(F, kLinf, p2, lin, Weight::constant()).value));

    const auto z = sample_to_lattice(plane(32, 0.25), 0.5, 0.25, p2, p2, Weight::poly(1));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK(z.holds);
    CHECK(z.c_alpha == 3.0);
    CHECK(z.c_beta == 5.0);
    CHECK_THROWS_AS(sample_to_lattice(F, 0.3, 1.0, p2, p2, Weight::constant()), DomainError);
}

TEST_CASE("continuous convolution with a mollifier") {
    const std::size_t n = 128;
    const double h = 1.0 / 8;
    Field G = make_sampled_1d(n, h);
    for (std::size_t i = 0; i < n; ++i) G.at(i) = std::exp(-std::pow(G.axis(0).coord(i), 2));
    Field F = bump_window(n, h, 0.125);
    cplx mass = 0;
    for (const auto& v : F.values()) mass += v * h;
    F *= 1.0 / mass;
    CHECK(rel_diff(conv_continuous(F, G), G) <= 0.02);
    CHECK(rel_diff(conv_continuous(F, G), conv_continuous(G, F)) < 1e-12);
    CHECK(sup_norm(conv_continuous(make_sampled_1d(n, h), G)) < 1e-300);
    CHECK_THROWS_AS(conv_continuous(F, make_sampled_1d(64, h)), DomainError);
}

TEST_CASE("semi-discrete convolution on the plane") {
    Rng rng(8);
    const Field F = random_plane(rng, 32, 0.25);
    Field d = make_sequence({Axis{0, 1, 0.5}, Axis{0, 1, 0.5}});
    d.at(0, 0) = 1.0;
    CHECK(rel_diff(conv_semidiscrete_wiener(d, F), F) < 1e-15);
    d.at(0, 0) = 0.0;
    CHECK(sup_norm(conv_semidiscrete_wiener(d, F)) == 0.0);
}

}  // TEST_SUITE
