#include <cmath>
#include <random>

#include "doctest.h"
#include "invlim/moebius.hpp"
#include "test_instances.hpp"

using namespace invlim;

namespace {

// Random well-conditioned transform.
MoebiusTransform random_transform(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        try {
            MoebiusTransform m = make_moebius(u(rng), u(rng), u(rng), u(rng));
            if (std::fabs(determinant(m)) > 0.05) return m;
        } catch (const SingularComposition&) {
        }
    }
}

bool proj_equal(const MoebiusTransform& a, const MoebiusTransform& b, double tol = 1e-12) {
    // Compare up to overall sign.
    double s = (a.a * b.a + a.b * b.b + a.c * b.c + a.d * b.d) >= 0 ? 1.0 : -1.0;
    return std::fabs(a.a - s * b.a) <= tol && std::fabs(a.b - s * b.b) <= tol &&
           std::fabs(a.c - s * b.c) <= tol && std::fabs(a.d - s * b.d) <= tol;
}

}  // namespace

TEST_CASE("compose: identity and inverse cases") {
    std::mt19937_64 rng(7);
    MoebiusTransform m = random_transform(rng);
    CHECK(proj_equal(compose(moebius_identity(), m), m));
    CHECK(proj_equal(compose(m, invert(m)), moebius_identity(), 1e-12));
    CHECK(proj_equal(invert(invert(m)), m, 1e-12));

    // Degenerate products are refused.
    MoebiusTransform near_singular = make_moebius(1.0, 0.0, 0.0, 1e-8);
    CHECK_THROWS_AS(compose(near_singular, near_singular), SingularComposition);
}

TEST_CASE("compose: second-iterate trace of the period-four instance vanishes") {
    UnimodalMap m = case3b_map();
    MoebiusTransform f2 = compose(m.f0, m.f1);
    // Closed form of the unnormalized trace: alpha - gamma rho + delta (1 - rho).
    double tr = m.alpha - m.gamma * m.rho + m.delta * (1.0 - m.rho);
    CHECK(std::fabs(tr) < 1e-15);
    CHECK(std::fabs(trace(f2)) < 1e-14);
    // f2 o f2 is the identity on a grid of the right branch interval.
    for (int i = 0; i <= 100; ++i) {
        double x = m.rho + (m.rho1 - m.rho) * i / 100.0;
        CHECK(evaluate(f2, evaluate(f2, x)) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("evaluate: branch values at the marked points") {
    UnimodalMap c2 = case2_map();
    CHECK(evaluate(c2.f0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    UnimodalMap c3b = case3b_map();
    CHECK(evaluate(c3b.f0, 0.0) == doctest::Approx(0.39).epsilon(1e-14));
    CHECK(c3b.rho1 == doctest::Approx(0.39).epsilon(1e-14));
    for (const UnimodalMap& m : {case1_map(), case2_map(), case3a_map(), case3b_map()})
        CHECK(evaluate(m.f1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("evaluate: pole reported with its location") {
    MoebiusTransform m = make_moebius(1.0, 0.0, 1.0, -0.5);
    CHECK_THROWS_AS(evaluate(m, 0.5), PoleError);
    try {
        evaluate(m, 0.5);
    } catch (const PoleError& e) {
        CHECK(e.pole == doctest::Approx(0.5));
    }
}

TEST_CASE("invert: case-2 right branch maps back by (y+1)/2") {
    UnimodalMap c2 = case2_map();
    MoebiusTransform inv = invert(c2.f1);
    for (double y : {0.0, 0.25, 0.5, 1.0})
        CHECK(evaluate(inv, y) == doctest::Approx((y + 1.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("derivative_at: closed forms and finite differences") {
    CHECK(derivative_at(moebius_identity(), 0.3) == doctest::Approx(1.0));
    UnimodalMap c3a = case3a_map();
    CHECK(derivative_at(c3a.f0, 0.2) == doctest::Approx(-4.0 / 3.0).epsilon(1e-13));
    UnimodalMap c1 = case1_map();
    for (double x : {0.0, 0.2, 0.4})
        CHECK(derivative_at(c1.f0, x) == doctest::Approx(-0.5).epsilon(1e-15));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 200; ++trial) {
        MoebiusTransform m = random_transform(rng);
        double x = u(rng);
        if (std::fabs(m.c * x + m.d) < 0.1) continue;
        double fd = (evaluate(m, x + h) - evaluate(m, x - h)) / (2.0 * h);
        double exact = derivative_at(m, x);
        CHECK(fd == doctest::Approx(exact).epsilon(1e-5));
    }
}

TEST_CASE("fixed_points: verified roots in ascending order") {
    UnimodalMap c1 = case1_map();
    FixedPointResult r1 = fixed_points(c1.f0);
    REQUIRE(r1.roots.size() == 1);  // linear branch: one finite fixed point
    CHECK(r1.roots[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    UnimodalMap c3a = case3a_map();
    FixedPointResult r3 = fixed_points(c3a.f0);
    REQUIRE(r3.roots.size() == 2);
    CHECK(r3.roots[0] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(r3.roots[1] == doctest::Approx(0.9).epsilon(1e-13));
    CHECK(r3.roots[0] >= 0.0);
    CHECK(r3.roots[0] < c3a.rho);

    // x + 1 has no real fixed point.
    FixedPointResult shifted = fixed_points(make_moebius(1.0, 1.0, 0.0, 1.0));
    CHECK(shifted.roots.empty());
    CHECK_FALSE(shifted.all_points_fixed);

    CHECK(fixed_points(moebius_identity()).all_points_fixed);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        MoebiusTransform m = random_transform(rng);
        for (double root : fixed_points(m).roots) {
            if (std::fabs(m.c * root + m.d) < 1e-6) continue;
            CHECK(std::fabs(evaluate(m, root) - root) <= 1e-10 * std::max(1.0, std::fabs(root)));
        }
    }
}

TEST_CASE("is_involution: reflections and the classification boundary") {
    UnimodalMap c2 = case2_map();
    CHECK(is_involution(c2.f0, 1e-12));  // x -> rho - x

    MoebiusTransform f2b = compose(case3b_map().f0, case3b_map().f1);
    CHECK(is_involution(f2b, 1e-9));
    for (int i = 0; i <= 100; ++i) {
        double x = 0.3 + (0.39 - 0.3) * i / 100.0;
        CHECK(std::fabs(evaluate(f2b, evaluate(f2b, x)) - x) <= 1e-8);
    }

    UnimodalMap c3a = case3a_map();
    MoebiusTransform f2a = compose(c3a.f0, c3a.f1);
    CHECK_FALSE(is_involution(f2a, 1e-9));
    // Unnormalized trace is 0.1 for this tuple.
    double tr = c3a.alpha - c3a.gamma * c3a.rho + c3a.delta * (1.0 - c3a.rho);
    CHECK(tr == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("composition is associative on random triples") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        MoebiusTransform a = random_transform(rng), b = random_transform(rng),
                         c = random_transform(rng);
        MoebiusTransform ab_c = compose(compose(a, b), c);
        MoebiusTransform a_bc = compose(a, compose(b, c));
        for (int i = 0; i < 5; ++i) {
            double x = u(rng);
            if (std::fabs(ab_c.c * x + ab_c.d) < 0.05 || std::fabs(a_bc.c * x + a_bc.d) < 0.05)
                continue;
            CHECK(std::fabs(evaluate(ab_c, x) - evaluate(a_bc, x)) <= 1e-12);
        }
    }
}

TEST_CASE("inverse roundtrip on random transforms") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 1000) {
        MoebiusTransform m = random_transform(rng);
        double x = u(rng);
        if (std::fabs(m.c * x + m.d) < 0.1) continue;
        double y = evaluate(m, x);
        MoebiusTransform inv = invert(m);
        if (std::fabs(inv.c * y + inv.d) < 0.05) continue;
        CHECK(std::fabs(evaluate(inv, y) - x) <= 1e-11);
        ++checked;
    }
}
