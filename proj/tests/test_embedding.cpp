#include <cmath>
#include <random>

#include "doctest.h"
#include "invlim/embedding.hpp"
#include "test_instances.hpp"

using namespace invlim;

namespace {

Embedding make_embedding(const UnimodalMap& m, int bricks = 40) {
    EmbeddingOptions opt;
    opt.line_bricks = bricks;
    return Embedding(m, opt);
}

double orbit_psi_offset(const UnimodalMap& m, int n) {
    // 2 sum_{k=1}^{n-1} (-1)^k f^k(0)
    double off = 0.0, x = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
        x = apply(m, x);
        off += 2.0 * ((k % 2) ? -x : x);
    }
    return off;
}

}  // namespace

TEST_CASE("line chart reproduces the alternating-sum formula (rho >= rho1)") {
    for (const UnimodalMap& m : {case1_map(), case2_map()}) {
        Embedding e = make_embedding(m);
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.02, 0.98);
        for (const auto& brick : e.line_bricks()) {
            int n = *t_n_index(brick.code);
            for (int trial = 0; trial < 5; ++trial) {
                double phi = brick.phi.lo + brick.phi.width() * u(rng);
                LimitPoint p = decode_point(m, phi, brick.code);
                double expected = ((n % 2) ? -phi : phi) + orbit_psi_offset(m, n);
                CHECK(psi_case12(e, p) == doctest::Approx(expected).epsilon(1e-11));
            }
        }
        // T_0 and T_1 charts are the head coordinate and its negative.
        LimitPoint p0 = decode_point(m, 0.8, TypeCode::t_n(0));
        CHECK(e.psi_line(p0) == doctest::Approx(0.8));
        LimitPoint p1 = decode_point(m, 0.1, TypeCode::t_n(1));
        CHECK(e.psi_line(p1) == doctest::Approx(-0.1));
    }

    // rho = rho1: the formula collapses to (-1)^n phi - 2 floor(n/2) rho.
    UnimodalMap c2 = case2_map();
    Embedding e2 = make_embedding(c2);
    for (int n = 0; n < 12; ++n) {
        BrickInterval b = brick_interval(c2, TypeCode::t_n(n));
        double phi = 0.5 * (b.lo + b.hi);
        LimitPoint p = decode_point(c2, phi, TypeCode::t_n(n));
        double expected = ((n % 2) ? -phi : phi) - 2.0 * (n / 2) * c2.rho;
        CHECK(e2.psi_line(p) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("line chart for rho < rho1: cluster formula and gluing") {
    UnimodalMap m = case3a_map();
    Embedding e = make_embedding(m);
    const auto& bricks = e.line_bricks();

    // A_0 -> phi, A_1 -> -phi, A_2 -> phi - 2 rho1.
    LimitPoint a0 = decode_point(m, 0.7, TypeCode::t_n(0));
    CHECK(psi_case3(e, a0) == doctest::Approx(0.7));
    LimitPoint a2 = decode_point(m, 0.2, TypeCode::t_n(2));
    CHECK(psi_case3(e, a2) == doctest::Approx(0.2 - 2.0 * m.rho1).epsilon(1e-12));

    // Images chain leftward sharing exactly one endpoint.
    for (std::size_t i = 0; i + 1 < bricks.size(); ++i) {
        CHECK(bricks[i].lo == doctest::Approx(bricks[i + 1].hi).epsilon(1e-12));
        CHECK(bricks[i].lo > bricks[i + 1].lo);
    }

    // The shared endpoint value is the chart value of the junction thread.
    for (std::size_t i = 0; i + 1 < std::min<std::size_t>(bricks.size(), 21); ++i) {
        auto j = connected_in(m, bricks[i].code, bricks[i + 1].code);
        REQUIRE(j.has_value());
        double via_own = e.psi_line(*j);
        CHECK(std::fabs(via_own - bricks[i].lo) <= 1e-10);
    }

    // Interval lengths follow the d-sequence tags (the head brick aside,
    // whose image is all of (0, 1]).
    for (std::size_t i = 1; i < bricks.size(); ++i)
        CHECK(bricks[i].hi - bricks[i].lo ==
              doctest::Approx(e.d()[bricks[i].d_index]).epsilon(1e-10));
}

TEST_CASE("arc chart matches its published annotations") {
    for (const UnimodalMap& m : {case3a_map(), case3b_map()}) {
        Embedding e = make_embedding(m);
        const auto& d = e.d();
        // T_infinity |-> phi; T^1_1 |-> -phi; T^1_2 |-> phi - 2 f(rho1);
        // T^0_1 |-> -phi + 2 rho1; T^0_2 |-> phi + 2 rho1 - 2 f^2(rho1).
        Landmarks lm = landmarks(m);
        double f1 = lm.f_rho1;
        double f2 = apply(m, f1);

        LimitPoint pinf = decode_point(m, 0.2, TypeCode::t_infinity());
        CHECK(e.theta(pinf).sheet == Sheet::ArcInf);
        CHECK(e.theta(pinf).value == doctest::Approx(0.2).epsilon(1e-12));

        BrickInterval b11 = brick_interval(m, TypeCode::t_lower(1, 1));
        double phi11 = 0.5 * (b11.lo + b11.hi);
        LimitPoint p11 = decode_point(m, phi11, TypeCode::t_lower(1, 1));
        CHECK(e.theta(p11).value == doctest::Approx(-phi11).epsilon(1e-12));

        BrickInterval b12 = brick_interval(m, TypeCode::t_lower(1, 2));
        double phi12 = 0.5 * (b12.lo + b12.hi);
        LimitPoint p12 = decode_point(m, phi12, TypeCode::t_lower(1, 2));
        CHECK(e.theta(p12).value == doctest::Approx(phi12 - 2.0 * f1).epsilon(1e-11));

        BrickInterval b01 = brick_interval(m, TypeCode::t_lower(0, 1));
        double phi01 = 0.5 * (b01.lo + b01.hi);
        LimitPoint p01 = decode_point(m, phi01, TypeCode::t_lower(0, 1));
        CHECK(e.theta(p01).value == doctest::Approx(-phi01 + 2.0 * m.rho1).epsilon(1e-11));

        BrickInterval b02 = brick_interval(m, TypeCode::t_lower(0, 2));
        double phi02 = 0.5 * (b02.lo + b02.hi);
        LimitPoint p02 = decode_point(m, phi02, TypeCode::t_lower(0, 2));
        CHECK(e.theta(p02).value ==
              doctest::Approx(phi02 + 2.0 * m.rho1 - 2.0 * f2).epsilon(1e-11));

        // Arc bricks tile contiguously with lengths d_{2k-i}.
        const auto& arcs = e.arc_bricks();
        for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
            CHECK(arcs[i].hi == doctest::Approx(arcs[i + 1].lo).epsilon(1e-11));
        for (const auto& b : arcs)
            CHECK(b.hi - b.lo == doctest::Approx(d[b.d_index]).epsilon(1e-10));

        // Alternating-tail points.
        if (e.label().value == Case::Case3a) {
            LimitPoint w1 = decode_point(m, *lm.w1, TypeCode::t_lower_infinity(1));
            CHECK(e.theta(w1).sheet == Sheet::ArcInf);
            CHECK(e.theta(w1).value == doctest::Approx(e.a_inf()).epsilon(1e-10));
            LimitPoint w2 = decode_point(m, *lm.w2, TypeCode::t_lower_infinity(0));
            CHECK(e.theta(w2).value == doctest::Approx(e.b_inf()).epsilon(1e-10));
        } else {
            LimitPoint q = decode_point(m, 0.05, TypeCode::t_lower_infinity(1));
            CHECK(e.theta(q).sheet == Sheet::ArcMinusInf);
            CHECK(e.theta(q).value == doctest::Approx(0.05));
            LimitPoint r = decode_point(m, 0.35, TypeCode::t_lower_infinity(0));
            CHECK(e.theta(r).sheet == Sheet::ArcPlusInf);
            CHECK(e.theta(r).value == doctest::Approx(0.35));
        }
        LimitPoint line_pt = decode_point(m, 0.5, TypeCode::t_n(0));
        CHECK_THROWS_AS(e.theta(line_pt), CaseError);

        // The alternating-orbit closed form agrees with the table-built
        // offsets: a chart with a tiny table falls back to the former.
        EmbeddingOptions small;
        small.arc_bricks_per_side = 2;
        Embedding e_small(m, small);
        for (int i : {0, 1}) {
            TypeCode deep = TypeCode::t_lower(i, 5);
            BrickInterval b = brick_interval(m, deep);
            double phi = 0.5 * (b.lo + b.hi);
            LimitPoint p = decode_point(m, phi, deep);
            CHECK(e_small.theta(p).value == doctest::Approx(e.theta(p).value).epsilon(1e-11));
        }
    }
}

TEST_CASE("decode_line: roundtrip and boundary ties") {
    std::mt19937_64 rng(41);
    for (const UnimodalMap& m : {case1_map(), case2_map(), case3a_map(), case3b_map()}) {
        Embedding e = make_embedding(m);
        LimitPoint top = e.decode_line(1.0, 32);
        CHECK(top.code == TypeCode::t_n(0));
        for (double v : top.thread) CHECK(v == doctest::Approx(1.0));

        std::uniform_real_distribution<double> u(e.covered_inf() + 1e-9, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            double y = u(rng);
            LimitPoint p = e.decode_line(y, 48);
            CHECK(std::fabs(e.psi_line(p) - y) <= 1e-10);
        }
        CHECK_THROWS_AS(e.decode_line(e.covered_inf() - 0.5, 32), RangeError);

        // Boundary tie at 0 goes to the lower brick index (T_0) and decodes
        // to the junction thread.
        LimitPoint tie = e.decode_line(0.0, 32);
        CHECK(tie.code == TypeCode::t_n(0));
        CHECK(std::fabs(e.psi_line(tie)) <= 1e-14);
        CHECK(tie.thread[1] == doctest::Approx(m.rho).epsilon(1e-12));
    }

    UnimodalMap c2 = case2_map();
    Embedding e2 = make_embedding(c2);
    LimitPoint mid = e2.decode_line(0.5, 32);
    CHECK(mid.code == TypeCode::t_n(0));
    CHECK(mid.x0 == doctest::Approx(0.5));
}

TEST_CASE("embedded shift: closed forms in the symmetric case") {
    UnimodalMap m = case2_map();
    Embedding e = make_embedding(m);

    CHECK(e.embedded_shift({Sheet::Line, 0.75}).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.embedded_shift({Sheet::Line, -0.3}).value == doctest::Approx(-0.8).epsilon(1e-12));
    ExtendedCoord arc = e.embedded_shift({Sheet::ArcInf, 0.1});
    CHECK(arc.sheet == Sheet::ArcInf);
    CHECK(arc.value == doctest::Approx(0.4).epsilon(1e-13));

    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(e.covered_inf() + 1e-6, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        double y = u(rng);
        double expected = y > m.rho ? (y - m.rho) / (1.0 - m.rho) : y - m.rho;
        if (expected <= e.covered_inf()) continue;
        CHECK(std::fabs(e.embedded_shift({Sheet::Line, y}).value - expected) <= 1e-10);
    }
    std::uniform_real_distribution<double> ua(0.0, m.rho);
    for (int trial = 0; trial < 1000; ++trial) {
        double x = ua(rng);
        ExtendedCoord once = e.embedded_shift({Sheet::ArcInf, x});
        CHECK(once.value == doctest::Approx(m.rho - x).epsilon(1e-13));
        ExtendedCoord twice = e.embedded_shift(once);
        CHECK(std::fabs(twice.value - x) <= 1e-12);
    }
}

TEST_CASE("embedded shift: sheet swap and arc endpoints (rho < rho1)") {
    UnimodalMap b = case3b_map();
    Embedding eb = make_embedding(b);
    ExtendedCoord swapped = eb.embedded_shift({Sheet::ArcMinusInf, 0.05});
    CHECK(swapped.sheet == Sheet::ArcPlusInf);
    CHECK(swapped.value == doctest::Approx(apply(b, 0.05)).epsilon(1e-13));
    ExtendedCoord back = eb.embedded_shift(swapped);
    CHECK(back.sheet == Sheet::ArcMinusInf);
    ExtendedCoord fourth = eb.embedded_shift(eb.embedded_shift(back));
    CHECK(fourth.sheet == Sheet::ArcMinusInf);
    CHECK(std::fabs(eb.embedded_shift(fourth).value -
                    eb.embedded_shift(ExtendedCoord{Sheet::ArcMinusInf, 0.05}).value) <= 1e-11);

    UnimodalMap a = case3a_map();
    Embedding ea = make_embedding(a);
    ExtendedCoord to_b = ea.embedded_shift({Sheet::ArcInf, ea.a_inf()});
    CHECK(to_b.sheet == Sheet::ArcInf);
    CHECK(to_b.value == doctest::Approx(ea.b_inf()).epsilon(1e-11));
    ExtendedCoord to_a = ea.embedded_shift(to_b);
    CHECK(to_a.value == doctest::Approx(ea.a_inf()).epsilon(1e-11));
}

TEST_CASE("fixed points of the embedded shift") {
    for (const UnimodalMap& m : {case1_map(), case2_map(), case3a_map(), case3b_map()}) {
        Embedding e = make_embedding(m);
        CHECK(e.embedded_shift({Sheet::Line, 1.0}).value == doctest::Approx(1.0).epsilon(1e-13));
        Landmarks lm = landmarks(m);
        if (e.label().value == Case::Case2 || e.label().value == Case::Case3a ||
            e.label().value == Case::Case3b) {
            ExtendedCoord om = e.embedded_shift({Sheet::ArcInf, lm.omega0});
            CHECK(om.sheet == Sheet::ArcInf);
            CHECK(om.value == doctest::Approx(lm.omega0).epsilon(1e-11));
        }
    }
}

TEST_CASE("conjugacy: chart of the shifted point equals the embedded shift") {
    std::mt19937_64 rng(71);
    for (const UnimodalMap& m : {case1_map(), case2_map(), case3a_map(), case3b_map()}) {
        Embedding e = make_embedding(m, 80);
        CaseLabel label = e.label();
        // Line points, kept shallow enough that the shifted code stays in
        // the table.
        std::size_t shallow = std::min<std::size_t>(15, e.line_bricks().size() - 1);
        std::uniform_real_distribution<double> u(e.line_bricks()[shallow].lo + 1e-6, 1.0);
        for (int trial = 0; trial < 300; ++trial) {
            double y = u(rng);
            LimitPoint p = e.decode_line(y, kDefaultDepth);
            LimitPoint sp = shift(m, p);
            ExtendedCoord via_space = e.psi(sp);
            ExtendedCoord via_chart = e.embedded_shift({Sheet::Line, y});
            CHECK(via_space.sheet == via_chart.sheet);
            CHECK(std::fabs(via_space.value - via_chart.value) <= 1e-10);
        }
        // Arc points.
        if (label.value == Case::Case2) {
            std::uniform_real_distribution<double> ua(0.0, m.rho);
            for (int trial = 0; trial < 200; ++trial) {
                double x = ua(rng);
                LimitPoint p = decode_point(m, x, TypeCode::t_infinity());
                ExtendedCoord via_space = e.psi(shift(m, p));
                ExtendedCoord via_chart = e.embedded_shift({Sheet::ArcInf, x});
                CHECK(via_space.sheet == via_chart.sheet);
                CHECK(std::fabs(via_space.value - via_chart.value) <= 1e-10);
            }
        } else if (label.value == Case::Case3a || label.value == Case::Case3b) {
            double lo = std::max(e.arc_covered_lo() * 0.5, e.a_inf() * 0.999);
            double hi = std::min(e.arc_covered_hi() * 0.5, e.b_inf());
            std::uniform_real_distribution<double> ua(lo, hi);
            for (int trial = 0; trial < 200; ++trial) {
                double t = ua(rng);
                LimitPoint p = e.decode_arc(t, kDefaultDepth);
                ExtendedCoord via_space = e.psi(shift(m, p));
                ExtendedCoord via_chart = e.embedded_shift({Sheet::ArcInf, t});
                CHECK(via_space.sheet == via_chart.sheet);
                CHECK(std::fabs(via_space.value - via_chart.value) <= 1e-10);
            }
        }
        if (label.value == Case::Case3b) {
            std::uniform_real_distribution<double> um(0.0, e.marks().f_rho1);
            for (int trial = 0; trial < 100; ++trial) {
                double x = um(rng);
                LimitPoint p = decode_point(m, x, TypeCode::t_lower_infinity(1));
                ExtendedCoord via_space = e.psi(shift(m, p));
                ExtendedCoord via_chart = e.embedded_shift({Sheet::ArcMinusInf, x});
                CHECK(via_space.sheet == via_chart.sheet);
                CHECK(std::fabs(via_space.value - via_chart.value) <= 1e-11);
            }
        }
    }
}

TEST_CASE("injectivity of the chart on sampled pairs") {
    UnimodalMap m = case3a_map();
    Embedding e = make_embedding(m);
    std::mt19937_64 rng(83);
    const auto& bricks = e.line_bricks();
    std::uniform_int_distribution<std::size_t> pick(0, bricks.size() - 1);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    int distinct = 0;
    while (distinct < 10000) {
        const auto& ba = bricks[pick(rng)];
        const auto& bb = bricks[pick(rng)];
        double phia = ba.phi.lo + ba.phi.width() * u(rng);
        double phib = bb.phi.lo + bb.phi.width() * u(rng);
        if (ba.code == bb.code && std::fabs(phia - phib) < 1e-9) continue;
        double ya = ba.sign * phia + ba.offset;
        double yb = bb.sign * phib + bb.offset;
        CHECK(std::fabs(ya - yb) > 1e-12);
        ++distinct;
    }
}

TEST_CASE("interval-length dynamics of the embedded shift") {
    UnimodalMap m = case3a_map();
    EmbeddingOptions opt;
    opt.line_bricks = 176;
    Embedding e(m, opt);
    std::vector<double> d = d_sequence(m, 20);
    for (int n = 1; n <= 15; ++n) {
        const Embedding::Brick* brick = nullptr;
        for (const auto& b : e.line_bricks())
            if (b.d_index == n) {
                brick = &b;
                break;
            }
        REQUIRE(brick != nullptr);
        double im_lo = e.embedded_shift({Sheet::Line, brick->lo}).value;
        double im_hi = e.embedded_shift({Sheet::Line, brick->hi}).value;
        double measured = std::fabs(im_hi - im_lo);
        CHECK(std::fabs(measured - d[n + 1]) <= 1e-9);
    }
}

TEST_CASE("neighborhood bases") {
    UnimodalMap c2 = case2_map();
    Embedding e2 = make_embedding(c2);
    NeighborhoodBase nb = e2.neighborhood_base({Sheet::ArcInf, 0.0}, 1, 0.01, 3);
    REQUIRE(nb.line_pieces.size() == 3);
    CHECK(0.5 * (nb.line_pieces[0].lo + nb.line_pieces[0].hi) ==
          doctest::Approx(-2.0 * c2.rho));
    CHECK(0.5 * (nb.line_pieces[1].lo + nb.line_pieces[1].hi) ==
          doctest::Approx(-2.0 * c2.rho));
    CHECK(0.5 * (nb.line_pieces[2].lo + nb.line_pieces[2].hi) ==
          doctest::Approx(-4.0 * c2.rho));

    // Interior-point pieces are pairwise disjoint for small epsilon.
    auto disjoint = [](std::vector<Interval> pieces) {
        std::sort(pieces.begin(), pieces.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            if (std::fabs(pieces[i].lo - pieces[i + 1].lo) < 1e-15 &&
                std::fabs(pieces[i].hi - pieces[i + 1].hi) < 1e-15)
                continue;  // coincident centers collapse to the same piece
            if (pieces[i].hi > pieces[i + 1].lo) return false;
        }
        return true;
    };

    NeighborhoodBase nb2 = e2.neighborhood_base({Sheet::ArcInf, c2.rho / 2.0}, 0,
                                                c2.rho / 4.0 * 0.9, 8);
    CHECK(disjoint(nb2.line_pieces));

    for (const UnimodalMap& m : {case3a_map(), case3b_map()}) {
        Embedding e = make_embedding(m);
        std::vector<double> d = d_sequence(m, 4);
        double eps = std::min(d[0], d[1]) / 4.0 * 0.5;
        NeighborhoodBase nb3 =
            e.neighborhood_base({Sheet::ArcInf, e.marks().omega0}, 0, eps, 6);
        CHECK(disjoint(nb3.line_pieces));
        CHECK(nb3.satellite_sheet == Sheet::Line);

        if (e.label().value == Case::Case3b) {
            double x = d[1] / 2.0;
            NeighborhoodBase nbm = e.neighborhood_base({Sheet::ArcMinusInf, x}, 1, eps, 5);
            CHECK(nbm.satellite_sheet == Sheet::ArcInf);
            for (int i = 0; i < 5; ++i) {
                int n = 2 + i;
                double expect = ((n % 2 == 0) ? x : -x) - 2.0 * (n / 2) * d[1];
                CHECK(0.5 * (nbm.line_pieces[i].lo + nbm.line_pieces[i].hi) ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
            CHECK(disjoint(nbm.line_pieces));
        }
        if (e.label().value == Case::Case3a) {
            NeighborhoodBase nba = e.neighborhood_base({Sheet::ArcInf, e.a_inf()}, 1, eps, 4);
            CHECK_FALSE(nba.arc_pieces.empty());
            CHECK_FALSE(nba.line_pieces.empty());
        }
    }
}

TEST_CASE("neighborhood satellite centers are genuine chart positions") {
    // For an arc point over head coordinate phi0, the satellite centers are
    // the line-chart values of the deeper relabellings of the same head
    // coordinate.
    UnimodalMap m = case3a_map();
    EmbeddingOptions opt;
    opt.line_bricks = 80;
    Embedding e(m, opt);
    double phi0 = 0.04;  // interior of the first left arc brick
    LimitPoint arc_pt = decode_point(m, phi0, TypeCode::t_lower(1, 1));
    double x = e.theta(arc_pt).value;
    NeighborhoodBase nb = e.neighborhood_base({Sheet::ArcInf, x}, 0, 1e-6, 3);
    REQUIRE(nb.line_pieces.size() == 6);
    for (int n = 1; n <= 3; ++n) {
        LimitPoint plus = decode_point(m, phi0, TypeCode::t_upper(1, 2 * n, 1));
        LimitPoint minus = decode_point(m, phi0, TypeCode::t_upper(1, 2 * n + 1, 1));
        double c_plus = 0.5 * (nb.line_pieces[2 * (n - 1)].lo + nb.line_pieces[2 * (n - 1)].hi);
        double c_minus =
            0.5 * (nb.line_pieces[2 * (n - 1) + 1].lo + nb.line_pieces[2 * (n - 1) + 1].hi);
        CHECK(e.psi_line(plus) == doctest::Approx(c_plus).epsilon(1e-11));
        CHECK(e.psi_line(minus) == doctest::Approx(c_minus).epsilon(1e-11));
    }
}

TEST_CASE("model coordinates") {
    UnimodalMap c1 = case1_map();
    Embedding e1 = make_embedding(c1);
    double a = e1.tail_a().value;
    CHECK(e1.model_coordinates({Sheet::Line, a}).x[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(e1.model_coordinates({Sheet::Line, 1.0}).x[0] == doctest::Approx(1.0));
    CHECK(e1.model_coordinates({Sheet::Line, 1.0}).dims == 1);

    UnimodalMap c2 = case2_map();
    Embedding e2 = make_embedding(c2);
    CHECK(e2.model_coordinates({Sheet::ArcInf, 0.0}).x[0] == doctest::Approx(0.0));
    CHECK(e2.model_coordinates({Sheet::ArcInf, 0.0}).x[1] == doctest::Approx(-1.0));
    CHECK(e2.model_coordinates({Sheet::ArcInf, c2.rho}).x[1] == doctest::Approx(1.0));

    // Successive fold extrema alternate in sign, h-positions decrease.
    for (const UnimodalMap& m : {case2_map(), case3a_map()}) {
        Embedding e = make_embedding(m, 30);
        std::vector<double> vs, hs;
        for (std::size_t i = 0; i + 1 < e.line_bricks().size(); ++i) {
            auto j = connected_in(m, e.line_bricks()[i].code, e.line_bricks()[i + 1].code);
            REQUIRE(j.has_value());
            vs.push_back(e.arc_normalized(e.shadow_theta(*j)));
            hs.push_back(e.h_compress(e.line_bricks()[i].lo));
        }
        for (std::size_t i = 0; i + 1 < hs.size(); ++i) CHECK(hs[i] > hs[i + 1]);
        std::vector<double> extrema;
        for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
            if ((vs[i] - vs[i - 1]) * (vs[i + 1] - vs[i]) < 0.0) extrema.push_back(vs[i]);
        }
        REQUIRE(extrema.size() >= 4);
        for (std::size_t i = 0; i + 1 < extrema.size(); ++i)
            CHECK(extrema[i] * extrema[i + 1] < 0.0);
    }

    UnimodalMap c3b = case3b_map();
    Embedding e3 = make_embedding(c3b);
    ModelPoint mp = e3.model_coordinates({Sheet::Line, 0.5});
    CHECK(mp.dims == 3);
    CHECK(mp.x[2] > 0.0);
    CHECK(e3.model_coordinates({Sheet::ArcInf, 0.1}).x[2] == doctest::Approx(0.0));
    CHECK(e3.model_coordinates({Sheet::ArcMinusInf, 0.0}).x[0] == doctest::Approx(0.0));
    CHECK(e3.model_coordinates({Sheet::ArcPlusInf, c3b.rho1}).x[0] == doctest::Approx(1.0));
}

TEST_CASE("deep line samples approach the finite endpoint (rho > rho1)") {
    UnimodalMap m = case1_map();
    Embedding e = make_embedding(m, 64);
    TailEndpoint a = tail_endpoint_a(m, 50);
    double inf_seen = 0.0;
    for (const auto& b : e.line_bricks()) inf_seen = std::min(inf_seen, b.lo);
    CHECK(std::fabs(inf_seen - a.value) <= std::max(a.remainder_bound, 1e-11) + 1e-11);
}
