#include <doctest.h>

#include <cmath>
#include <random>

#include "coupled/contraction.hpp"
#include "coupled/errors.hpp"
#include "coupled/markets.hpp"
#include "coupled/solver.hpp"
#include "fixtures.hpp"

using namespace coupled;
using namespace coupled::testing;

TEST_CASE("payoffs") {
    const auto m = example2_cournot();
    // P = 50, c1 = 25^2 / 2
    CHECK(payoffs(m, 25, 25).first == doctest::Approx(937.5));
    CHECK(payoffs(m, 25, 25).first == payoffs(m, 25, 25).second);
    CHECK(payoffs(m, 10, 40).first == payoffs(m, 40, 10).second);

    CournotModel fixed_cost = m;
    fixed_cost.cost_first = [](double x) { return x * x / 2.0 + 7.0; };
    CHECK(payoffs(fixed_cost, 0, 30).first == -7.0);
    CHECK_THROWS_AS((void)payoffs(m, -1, 5), DomainError);
}

TEST_CASE("foc_residual") {
    const auto m = example2_cournot();
    const auto at_eq = foc_residual(m, 25, 25, 1e-5);
    CHECK(std::abs(at_eq.first) <= 1e-6);
    CHECK(std::abs(at_eq.second) <= 1e-6);
    const auto off = foc_residual(m, 20, 30, 1e-5);
    CHECK(off.first == doctest::Approx(10.0).epsilon(1e-7));
    CHECK(off.second == doctest::Approx(-10.0).epsilon(1e-7));
    CHECK_FALSE(off.one_sided);
    CHECK(foc_residual(m, 0, 30, 1e-5).one_sided);

    // 2.15x + 0.01y = 50, 0.09x + 1.74y = 50
    const auto ex3 = example3_cournot();
    const double det = 2.15 * 1.74 - 0.01 * 0.09;
    const double x = (50.0 * 1.74 - 0.01 * 50.0) / det;
    const double y = (2.15 * 50.0 - 0.09 * 50.0) / det;
    const auto r = foc_residual(ex3, x, y, 1e-5);
    CHECK(std::abs(r.first) <= 1e-6);
    CHECK(std::abs(r.second) <= 1e-6);
}

TEST_CASE("second_order_check") {
    const auto ex2 = second_order_check(example2_cournot(), 25, 25, 1e-3);
    CHECK(ex2.first_ok);
    CHECK(ex2.second_ok);
    CHECK(ex2.first_curvature == doctest::Approx(-3.0).epsilon(1e-6));

    CournotModel convex;
    convex.price = [](double, double) { return 0.0; };
    convex.cost_first = [](double x) { return -x * x; };
    convex.cost_second = [](double y) { return y * y; };
    const auto toy = second_order_check(convex, 5, 5, 1e-3);
    CHECK_FALSE(toy.first_ok);
    CHECK(toy.second_ok);

    const auto ex3 = second_order_check(example3_cournot(), 23.1277, 27.5394, 1e-3);
    CHECK(ex3.first_ok);
    CHECK(ex3.second_ok);
    CHECK(ex3.first_curvature == doctest::Approx(-0.18 - 1.97).epsilon(1e-6));

    const auto edge = second_order_check(example2_cournot(), 0, 100, 1e-3);
    CHECK(edge.one_sided);
    CHECK(edge.first_ok);
}

TEST_CASE("response_from_payoff reproduces the affine responses") {
    const auto sys = response_from_payoff(example2_cournot(), 1e-5);
    for (double x : {0.0, 10.0, 33.3, 60.0}) {
        for (double y : {0.0, 5.0, 30.0}) {
            const auto p = pt(x, y);
            CHECK(std::abs(sys.raw_first(p)[0] - (100.0 - 2 * x - y)) <= 1e-5);
            CHECK(std::abs(sys.raw_second(p)[0] - (100.0 - x - 2 * y)) <= 1e-5);
        }
    }
    CHECK(product_distance(sys.apply(pt(25, 25)), pt(25, 25)) <= 1e-5);
    const auto found = grid_fixed_point(sys, 101);
    REQUIRE(found.size() == 1);
    CHECK(product_distance(found[0], pt(25, 25)) <= 1e-5);
}

TEST_CASE("response_from_payoff agrees with foc_residual") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1.0, 99.0);
    const auto m = example3_cournot();
    const auto sys = response_from_payoff(m, 1e-5);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng), y = u(rng);
        const auto foc = foc_residual(m, x, y, 1e-5);
        CHECK(std::abs(sys.raw_first(pt(x, y))[0] - x - foc.first) <= 1e-6);
        CHECK(std::abs(sys.raw_second(pt(x, y))[0] - y - foc.second) <= 1e-6);
    }
}

TEST_CASE("response_from_payoff with flat price drifts") {
    CournotModel flat;
    flat.price = [](double, double) { return 5.0; };
    flat.cost_first = [](double) { return 0.0; };
    flat.cost_second = [](double) { return 0.0; };
    const auto sys = response_from_payoff(flat, 1e-5);
    CHECK(sys.raw_first(pt(3, 4))[0] == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("build_affine") {
    const auto ex2 = example2();
    CHECK(step(ex2, pt(20, 31)) == pt(29, 18));
    CHECK_FALSE(example3().symmetric_hint());
    CHECK(ex2.symmetric_hint());
    CHECK(certify(example3(), {0.99, 0, 0}, grid(41)).passed);

    const auto flat = build_affine({0, 0, 3.0, 0, 0, 4.0}, {0.0, 10.0}, {0.0, 10.0});
    const auto r = solve(flat, pt(9, 9));
    CHECK(*r.report.point == pt(3, 4));
}

TEST_CASE("isoelastic feasibility") {
    CHECK(isoelastic_feasible(0.25, 0.1, 1.0));
    CHECK_FALSE(isoelastic_feasible(0.5, 0.01, 1.0));
    CHECK_FALSE(isoelastic_feasible(0.5, 1e-9, 0.1));
    CHECK_FALSE(isoelastic_feasible(0.25, 0.3, 1.0));
    CHECK_FALSE(isoelastic_feasible(0.25, 0.0, 1.0));
}

TEST_CASE("build_isoelastic") {
    const IsoelasticParams p{0.25, 0.1, 1.0};
    const auto sys = build_isoelastic(p, {0.0, 0.5}, {0.0, 0.5});
    CHECK(sys.symmetric_hint());
    CHECK(sys.raw_first(pt(0.5, 0.5))[0] == doctest::Approx(0.225).epsilon(1e-14));
    CHECK(sys.raw_first(pt(0, 0))[0] == 0.0);
    CHECK(sys.raw_first(pt(0.1, 0.3)) == sys.raw_second(pt(0.3, 0.1)));

    const auto r = solve(sys, pt(0.3, 0.2));
    CHECK(r.report.stop == StopReason::Converged);
    CHECK(product_distance(*r.report.point, pt(0, 0)) <= 1e-9);

    const auto found = grid_fixed_point(sys, 51);
    REQUIRE(found.size() == 1);
    CHECK(product_distance(found[0], pt(0, 0)) <= 1e-9);

    CHECK_THROWS_AS((void)build_isoelastic({0.25, 0.3, 1.0}, {0.0, 0.5}, {0.0, 0.5}),
                    FeasibilityError);
    CHECK_THROWS_AS((void)build_isoelastic(p, {0.0, 0.7}, {0.0, 0.5}), FeasibilityError);
}

TEST_CASE("build_isoelastic refuses exactly the infeasible triples") {
    for (double eta : {0.05, 0.2, 0.25, 0.4, 0.49, 0.5, 0.7}) {
        for (double c : {0.01, 0.05, 0.1, 0.2, 0.3, 1.0}) {
            for (double q : {0.5, 1.0, 1.5}) {
                const bool feasible = isoelastic_feasible(eta, c, q);
                bool built = true;
                try {
                    (void)build_isoelastic({eta, c, q}, {0.0, q / 2}, {0.0, q / 2});
                } catch (const FeasibilityError&) {
                    built = false;
                }
                CHECK(built == feasible);
            }
        }
    }
}

TEST_CASE("surplus model") {
    const auto sys = surplus_system();
    const auto oracle = affine_fixed_point(surplus_oracle());
    SolverPolicy policy;
    policy.constants = HardyRogersConstants{0.76, 0, 0};
    const auto r = solve(sys, ProductPoint{Bundle{0, 0}, Bundle{0, 0}}, policy);
    REQUIRE(r.report.stop == StopReason::Converged);
    CHECK(product_distance(*r.report.point, oracle) <= 1e-9);
    CHECK(r.report.bound_violations == 0);
}

TEST_CASE("surplus model conserves production") {
    const auto coeffs = surplus_coefficients();
    const auto model = affine_surplus_model(coeffs);
    const auto sys = surplus_system();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double x = 10 * u(rng), dx = u(rng), y = 5 * u(rng), dy = u(rng);
        const ProductPoint p{Bundle{x, dx}, Bundle{y, dy}};
        const auto f1 = sys.raw_first(p);
        const auto f2 = sys.raw_second(p);
        CHECK(std::abs(f1[0] + f1[1] - model.f1(x, y, dx)) <= 1e-12);
        CHECK(std::abs(f2[0] + f2[1] - model.f2(x, y, dy)) <= 1e-12);
    }
}

TEST_CASE("surplus model without market response has no surplus") {
    auto c = surplus_coefficients();
    c.q1_u1 = c.q1_u2 = c.q2_u1 = c.q2_u2 = 0.0;
    const auto sys = build_surplus(affine_surplus_model(c), Box{{0.0, 100.0}, {0.0, 10.0}},
                                   Box{{0.0, 50.0}, {0.0, 10.0}});
    const auto r = solve(sys, ProductPoint{Bundle{1, 1}, Bundle{1, 1}});
    REQUIRE(r.report.point);
    CHECK(r.report.point->first[1] == 0.0);
    CHECK(r.report.point->second[1] == 0.0);
}

TEST_CASE("surplus variant without surplus attention") {
    const auto sys = build_affine({-0.5, 0.25, 45.0, -0.2, -0.25, 20.0}, {0.0, 100.0}, {0.0, 50.0});
    SolverPolicy policy;
    policy.convergence_tol = 1e-12;
    const auto r = solve(sys, pt(0, 0), policy);
    REQUIRE(r.report.point);
    // 1.5x - 0.25y = 45, 0.2x + 1.25y = 20
    CHECK(r.report.point->first[0] == doctest::Approx(61.25 / 1.925).epsilon(1e-9));
    CHECK(r.report.point->second[0] == doctest::Approx(21.0 / 1.925).epsilon(1e-9));
}

TEST_CASE("build_surplus checks shapes") {
    CHECK_THROWS_AS((void)build_surplus(affine_surplus_model(surplus_coefficients()),
                                        Box{{0.0, 1.0}}, Box{{0.0, 1.0}, {0.0, 1.0}}),
                    DimensionMismatch);
}

TEST_CASE("piecewise breakpoints belong to the left piece") {
    const PiecewiseResponse f1({{0.0, 0.8, 0.2}, {0.8, 1.0, 0.1}});
    const PiecewiseResponse f2({{0.0, 0.1, 0.9}, {0.1, 1.0, 0.8}});
    CHECK(f1(0.8) == 0.2);
    CHECK(f1(0.81) == 0.1);
    CHECK(f1(0.0) == 0.2);
    CHECK(f1(1.0) == 0.1);
    CHECK(f2(0.1) == 0.9);
    CHECK(f2(0.11) == 0.8);
    CHECK_THROWS_AS((void)f1(1.01), DomainError);
}

TEST_CASE("piecewise partitions are validated") {
    CHECK_THROWS_AS(PiecewiseResponse({}), ConfigurationError);
    CHECK_THROWS_AS(PiecewiseResponse({{0.0, 0.5, 0.1}, {0.6, 1.0, 0.2}}), ConfigurationError);
    CHECK_THROWS_AS(PiecewiseResponse({{0.0, 0.5, 0.1}, {0.4, 1.0, 0.2}}), ConfigurationError);
    CHECK_THROWS_AS(PiecewiseResponse({{0.5, 0.5, 0.1}}), ConfigurationError);
    CHECK_THROWS_AS((void)build_piecewise(PiecewiseResponse({{0.0, 1.0, 2.0}}),
                                    PiecewiseResponse({{0.0, 1.0, 0.5}})),
                    ConfigurationError);
}

TEST_CASE("piecewise example reaches (0.2, 0.8) in at most three steps from any start") {
    const auto sys = example4();
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const auto r = solve(sys, pt(i / 20.0, j / 20.0));
            REQUIRE(r.report.point);
            CHECK(*r.report.point == pt(0.2, 0.8));
            CHECK(r.report.iterations <= 3);
        }
    }
}

TEST_CASE("piecewise example fails Banach constants along x = 0.8") {
    const auto r = certify(example4(), {0.99, 0, 0}, grid(101));
    CHECK_FALSE(r.passed);
    REQUIRE(r.violating_pair);
    const auto& [p, q] = *r.violating_pair;
    CHECK(p.first[0] == 0.8);
    CHECK(q.first[0] > 0.8);
    CHECK(q.first[0] <= 0.8 + 0.01 + 1e-12);
}
