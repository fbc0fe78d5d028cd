#include "oms/errors.hpp"
#include "oms/probes.hpp"
#include "oms/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace oms;

TEST_SUITE("weights") {

TEST_CASE("closed-form values") {
    const std::vector<double> x11{1.0, 1.0}, x10{1.0, 0.0}, x0{0.0, 0.0};
    CHECK(Weight::poly(0)(x11) == 1.0);
    CHECK(Weight::poly(2)(x11) == doctest::Approx(9.0));
    CHECK(Weight::poly(-1)(x11) == doctest::Approx(1.0 / 3.0));
    CHECK(Weight::exp(1, 1, 0)(x11) == 1.0);
    CHECK(Weight::exp(1, 1, 1)(x10) == doctest::Approx(std::exp(1.0)));
    CHECK(Weight::exp(2, 2, 1)(std::vector<double>{4.0, 0.0}) == doctest::Approx(std::exp(2.0)));
    CHECK(Weight::exp_norm(1)(std::vector<double>{3.0, 4.0}) == doctest::Approx(std::exp(5.0)));
    CHECK(Weight::constant()(x0) == 1.0);
    CHECK(Weight::poly(2)(std::vector<double>{-2.0}) == doctest::Approx(9.0));
}

TEST_CASE("log evaluation stays finite past overflow") {
    const Weight w = Weight::exp_norm(1);
    const std::vector<double> far{800.0, 0.0};
    CHECK(std::isinf(w(far)));
    CHECK(w.log_eval(far) == doctest::Approx(800.0));
}

TEST_CASE("builders and companions") {
    CHECK(parse_weight("poly:2").kind() == WeightKind::poly);
    CHECK(parse_weight("exp:1,1,0.5").r() == 0.5);
    CHECK(parse_weight("expnorm:1").kind() == WeightKind::exp_norm);
    CHECK_THROWS_AS(parse_weight("exp:1,1"), DomainError);
    CHECK_THROWS_AS(parse_weight("gauss:1"), DomainError);
    REQUIRE(Weight::poly(-3).companion());
    CHECK(Weight::poly(-3).companion()->r() == 3.0);
    CHECK_FALSE(Weight::exp(0.5, 1, 1).companion());
}

TEST_CASE("moderateness examples") {
    const PointSet g = box_grid(2, 4.0, 9);
    CHECK(g.size() == 81);
    CHECK(check_moderate(Weight::constant(), Weight::constant(), g).C == doctest::Approx(1.0));
    CHECK(check_moderate(Weight::poly(2), Weight::poly(2), g).C <= 1.0 + 1e-12);
    CHECK(check_moderate(Weight::exp(1, 1, 1), Weight::exp(1, 1, 1), g).C <= 1.0 + 1e-12);
    CHECK_THROWS_AS(check_moderate(Weight::poly(1), Weight::poly(1), PointSet{}), DomainError);

    // exp against a polynomial companion: the worst ratio keeps growing with the box.
    double last = 0.0;
    for (double R : {2.0, 4.0, 8.0, 16.0}) {
        const double C = check_moderate(Weight::exp(1, 1, 1), Weight::poly(1), box_grid(2, R, 9)).C;
        CHECK(C > 1.5 * last);
        last = C;
    }
}

TEST_CASE("Peetre inequality holds for random poly weights") {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const double r = rng.uniform(-4, 4);
        const Weight w = Weight::poly(r);
        CHECK(check_moderate(w, *w.companion(), box_grid(2, 6.0, 7)).C <= 1.0 + 1e-12);
    }
}

TEST_CASE("classification") {
    // Up to |X| = 100 a sub-exponential weight is still dominated by (1 + |X|)^16,
    // so the radii reach far enough for the polynomial ladder to break.
    const std::vector<double> radii{10.0, 1e3, 1e5};
    CHECK(classify_weight(Weight::poly(3), radii).tag == WeightClass::P);
    const auto e = classify_weight(Weight::exp(1, 1, 1), radii);
    CHECK(e.tag == WeightClass::PE);
    CHECK_FALSE(e.pe0_pass);
    CHECK(classify_weight(Weight::exp(2, 2, 1), radii).tag == WeightClass::PE0);
    CHECK_THROWS_AS(classify_weight(Weight::poly(1), std::vector<double>{1.0, 10.0}), DomainError);
    CHECK(to_string(WeightClass::PE0) == "PE0");
}

}  // TEST_SUITE
