#include <doctest.h>

#include <cmath>

#include "coupled/errors.hpp"
#include "coupled/oracle.hpp"
#include "fixtures.hpp"

using namespace coupled;
using namespace coupled::testing;

TEST_CASE("affine_fixed_point on the worked systems") {
    // 3x + y = 100, x + 3y = 100
    CHECK(product_distance(affine_fixed_point(example2_oracle()), pt(25, 25)) <= 1e-12);
    // 1.98x + 0.09y = 45, 0.01x + 1.9y = 50
    const auto ex3 = affine_fixed_point(example3_oracle());
    CHECK(ex3.first[0] == doctest::Approx(21.53625269).epsilon(1e-9));
    CHECK(ex3.second[0] == doctest::Approx(26.20244078).epsilon(1e-9));

    const AffineResponse zero{1, {0, 0, 0, 0}, {4.0, -2.0}};
    CHECK(affine_fixed_point(zero) == pt(4, -2));
}

TEST_CASE("affine_fixed_point satisfies z = Az + b") {
    for (const auto& ar : {example2_oracle(), example3_oracle(), surplus_oracle()}) {
        const auto z = concat(affine_fixed_point(ar));
        CHECK(l1_distance(z, ar.apply(z)) <= 1e-9);
    }
}

TEST_CASE("affine_fixed_point of the composed surplus map") {
    const auto z = concat(affine_fixed_point(surplus_oracle()));
    CHECK(z[0] == doctest::Approx(30.1561601).epsilon(1e-8));
    CHECK(z[1] == doctest::Approx(1.95003387).epsilon(1e-8));
    CHECK(z[2] == doctest::Approx(9.51710966).epsilon(1e-8));
    CHECK(z[3] == doctest::Approx(1.9736961).epsilon(1e-7));
    // produced quantities u = realized + surplus
    CHECK(z[0] + z[1] == doctest::Approx(32.106194).epsilon(1e-7));
    CHECK(z[2] + z[3] == doctest::Approx(11.490806).epsilon(1e-7));
}

TEST_CASE("affine_fixed_point rejects singular systems") {
    const AffineResponse identity{1, {1, 0, 0, 1}, {1.0, 1.0}};
    CHECK_THROWS_AS((void)affine_fixed_point(identity), SingularSystem);
    const AffineResponse ragged{1, {1, 0, 0}, {1.0, 1.0}};
    CHECK_THROWS_AS((void)affine_fixed_point(ragged), DimensionMismatch);
}

TEST_CASE("grid_fixed_point on the piecewise example") {
    const auto found = grid_fixed_point(example4(), 101);
    REQUIRE(found.size() == 1);
    CHECK(product_distance(found[0], pt(0.2, 0.8)) <= 1e-12);
}

TEST_CASE("grid_fixed_point on the cycling example matches the affine solve") {
    const auto found = grid_fixed_point(example2(), 101);
    REQUIRE(found.size() == 1);
    CHECK(product_distance(found[0], affine_fixed_point(example2_oracle())) <= 1e-9);
}

TEST_CASE("grid_fixed_point agrees with the affine solve within a refined cell") {
    const auto oracle = affine_fixed_point(example3_oracle());
    const auto found = grid_fixed_point(example3(), 101);
    REQUIRE(found.size() == 1);
    // final cell: 100 / 10^3 / 100 per axis
    CHECK(product_distance(found[0], oracle) <= 2 * 2e-3);
}

TEST_CASE("grid_fixed_point on the surplus model") {
    const auto oracle = affine_fixed_point(surplus_oracle());
    const auto coarse = grid_fixed_point(surplus_system(), 15);
    REQUIRE(coarse.size() == 1);
    // final cells after three rounds sum to about 0.28 across the four axes
    CHECK(product_distance(coarse[0], oracle) <= 0.28);
    const auto fine = grid_fixed_point(surplus_system(), 15, 8);
    REQUIRE(fine.size() == 1);
    CHECK(product_distance(fine[0], oracle) <= 1e-3);
}

TEST_CASE("grid_fixed_point needs a bounded domain") {
    const auto open = build_affine({0.5, 0, 1, 0, 0.5, 1}, {0.0, INFINITY}, {0.0, 1.0});
    CHECK_THROWS_AS((void)grid_fixed_point(open, 11), ConfigurationError);
}

TEST_CASE("finite_difference") {
    const ScalarMap square = [](std::span<const double> z) { return z[0] * z[0]; };
    const double at3[] = {3.0};
    CHECK(std::abs(finite_difference(square, at3, 0, 1e-5).value - 6.0) <= 1e-8);

    const ScalarMap constant = [](std::span<const double>) { return 7.0; };
    CHECK(finite_difference(constant, at3, 0, 1e-5).value == 0.0);

    // dPi1/dx for Pi1 = x (100 - x - y) - x^2 / 2 is 100 - 3x - y
    const ScalarMap profit = [](std::span<const double> z) {
        return z[0] * (100.0 - z[0] - z[1]) - z[0] * z[0] / 2.0;
    };
    const double at[] = {20.0, 30.0};
    CHECK(finite_difference(profit, at, 0, 1e-5).value == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("finite_difference of a quadratic across step sizes") {
    const ScalarMap q = [](std::span<const double> z) { return 2.5 * z[0] * z[0] - 4.0 * z[0] + 1.0; };
    for (double x : {-3.0, 0.7, 12.0}) {
        const double at[] = {x};
        const double exact = 5.0 * x - 4.0;
        for (double h : {1e-6, 1e-5, 1e-4}) {
            const double got = finite_difference(q, at, 0, h).value;
            CHECK(std::abs(got - exact) <= 1e-7 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("finite_difference falls back to one side at a boundary") {
    const ScalarMap lin = [](std::span<const double> z) { return 3.0 * z[0]; };
    const Box box{{0.0, 1.0}};
    const double lo[] = {0.0};
    const auto d = finite_difference(lin, lo, 0, 1e-3, &box);
    CHECK(d.one_sided);
    CHECK(d.value == doctest::Approx(3.0));
    const double mid[] = {0.5};
    CHECK_FALSE(finite_difference(lin, mid, 0, 1e-3, &box).one_sided);
    CHECK_THROWS_AS((void)finite_difference(lin, mid, 0, 2.0, &box), DomainError);
}
