#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "perron/lattice.hpp"
#include "perron/perron_tree.hpp"

using namespace perron;

TEST_CASE("build_triangles: dyadic blocks") {
    DirectionSet lin = gen_power(1, 16);

    std::vector<ConvexPolygon> b0 = build_triangles(lin, 0);
    REQUIRE(b0.size() == 1);
    CHECK(area(b0[0]) == doctest::Approx(0.5));

    std::vector<ConvexPolygon> b1 = build_triangles(lin, 1);
    REQUIRE(b1.size() == 2);
    CHECK(union_area({b1}) == doctest::Approx(1.0).epsilon(1e-12));

    DirectionSet quad = gen_power(2, 16);
    std::vector<ConvexPolygon> q1 = build_triangles(quad, 1);
    CHECK(union_area({q1}) == doctest::Approx(4.0).epsilon(1e-12));  // (9 - 1)/2

    CHECK_THROWS_AS(build_triangles(gen_power(1, 3), 2), std::invalid_argument);
}

TEST_CASE("block union area equals the closed form") {
    DirectionSet quad = gen_power(2, 63);
    for (int n = 0; n <= 3; ++n) {
        std::vector<ConvexPolygon> tris = build_triangles(quad, n);
        double expect = (quad.u()[(1 << (n + 1)) - 1] - quad.u()[(1 << n) - 1]) / 2.0;
        CHECK(union_area({tris}) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("optimize_translations: single triangle is incompressible") {
    DirectionSet lin = gen_power(1, 4);
    TranslationResult tr =
        optimize_translations(build_triangles(lin, 0), TranslationMethod::kPairwiseBisection);
    CHECK(tr.taus == std::vector<double>{0.0});
    CHECK(tr.epsilon == doctest::Approx(1.0));
}

TEST_CASE("optimize_translations: two triangles against the exhaustive grid") {
    // u = (0, 1, 2): triangles (0,1),(0,0),(1,0) and (0,1),(1,0),(2,0).
    ConvexPolygon t1 = ConvexPolygon::make({{0, 1}, {0, 0}, {1, 0}});
    ConvexPolygon t2 = ConvexPolygon::make({{0, 1}, {1, 0}, {2, 0}});

    TranslationResult bisect =
        optimize_translations({t1, t2}, TranslationMethod::kPairwiseBisection);
    CHECK(bisect.epsilon < 1.0);
    CHECK(bisect.taus[0] == 0.0);
    // h = 1/2 slides the right triangle by (1-h) * 2 = 1; overlap to height 1/2.
    CHECK(bisect.taus[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(bisect.epsilon == doctest::Approx(0.75).epsilon(1e-9));

    double oracle = oracles::grid_search_two_triangle_epsilon(t1, t2, -2.0, 0.0, 1e-3);
    TranslationResult refined =
        optimize_translations({t1, t2}, TranslationMethod::kCoordinateSearch);
    CHECK(refined.epsilon <= bisect.epsilon + 1e-12);
    CHECK(std::abs(refined.epsilon - oracle) <= 1e-3);
}

TEST_CASE("translations preserve triangle areas; epsilon within (0, 1]") {
    DirectionSet lin = gen_power(1, 16);
    for (int n : {1, 2, 3}) {
        std::vector<ConvexPolygon> tris = build_triangles(lin, n);
        TranslationResult tr = optimize_translations(tris, TranslationMethod::kCoordinateSearch);
        REQUIRE(tr.taus.size() == tris.size());
        CHECK(tr.taus[0] == 0.0);
        double sum = 0;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            ConvexPolygon moved = tris[i].translated({tr.taus[i], 0});
            CHECK(area(moved) == doctest::Approx(area(tris[i])).epsilon(1e-12));
            sum += area(moved);
        }
        CHECK(tr.epsilon > 0.0);
        CHECK(tr.epsilon <= 1.0);
        CHECK(tr.union_translated <= sum + 1e-9);
    }
}

TEST_CASE("compression is monotone across blocks 0..3 for k and k^2") {
    for (double s : {1.0, 2.0}) {
        DirectionSet d = gen_power(s, 16);
        double prev = 2.0;
        std::vector<double> eps;
        for (int n = 0; n <= 3; ++n) {
            TranslationResult tr = optimize_translations(build_triangles(d, n),
                                                         TranslationMethod::kCoordinateSearch);
            eps.push_back(tr.epsilon);
            CHECK(tr.epsilon <= prev + 1e-12);
            prev = tr.epsilon;
        }
        CHECK(eps.back() < eps.front());
    }
}

TEST_CASE("assemble_block: trapezium share, disjointness, containment") {
    DirectionSet lin = gen_power(1, 16);
    PerronBlock b1 = assemble_block(lin, 1, TranslationMethod::kCoordinateSearch);
    REQUIRE(b1.triangles.size() == 2);
    // |∪ tau_k V_k| >= (1/9) |∪ Delta_k| = 1/9 here (|∪ Delta| = 1).
    CHECK(union_area({b1.translated_trapezia()}) >= 1.0 / 9.0);
    CHECK(b1.trapezia_area_ratio >= 1.0 / 9.0);

    PerronBlock b0 = assemble_block(lin, 0, TranslationMethod::kPairwiseBisection);
    CHECK(b0.epsilon == doctest::Approx(1.0));
    CHECK(b0.taus == std::vector<double>{0.0});

    DirectionSet quad = gen_power(2, 16);
    PerronBlock q2 = assemble_block(quad, 2, TranslationMethod::kCoordinateSearch);
    REQUIRE(q2.trapezia.size() == 4);
    for (std::size_t i = 0; i < q2.trapezia.size(); ++i)
        for (std::size_t j = i + 1; j < q2.trapezia.size(); ++j) {
            auto inter = clip(q2.trapezia[i], q2.trapezia[j]);
            double a = inter ? area(*inter) : 0.0;
            CHECK(a <= 1e-9);  // interior-disjoint before translation
        }

    // Each V_k lies inside the enlarged triangle A B' C' of its Delta_k.
    const std::vector<double>& u = quad.u();
    for (std::size_t i = 0; i < q2.trapezia.size(); ++i) {
        int k = q2.k_first + int(i);
        Point2 apex{0, 1};
        Point2 nearp{u[k - 1], 0};
        Point2 farp{u[k], 0};
        Point2 bp = apex + 1.5 * (farp - apex);
        Point2 cp = apex + 1.5 * (nearp - apex);
        ConvexPolygon enlarged = ConvexPolygon::make({apex, cp, bp});
        for (const Point2& v : q2.trapezia[i].vertices()) CHECK(enlarged.contains(v, 1e-9));
    }
}

TEST_CASE("select_delta on the linear block n = 1") {
    DirectionSet lin = gen_power(1, 16);
    PerronBlock block = assemble_block(lin, 1, TranslationMethod::kCoordinateSearch);
    std::vector<double> grid{16, 32, 64, 128, 256, 512, 1024, 2048};
    DeltaSelection sel = select_delta(block, grid);
    REQUIRE(sel.delta.has_value());

    // Doubling a qualifying delta keeps (a)-(c).
    DeltaSelection doubled = select_delta(block, {*sel.delta * 2});
    CHECK(doubled.delta.has_value());

    // n = 0: epsilon = 1 makes (a) immediate once the scale resolves the sets.
    PerronBlock b0 = assemble_block(lin, 0, TranslationMethod::kCoordinateSearch);
    DeltaSelection s0 = select_delta(b0, grid);
    REQUIRE(s0.delta.has_value());
    CHECK(s0.trace.back().count_ratio <= 3.0);
}

TEST_CASE("block_svg emits a world-to-view affine and all three layers") {
    DirectionSet lin = gen_power(1, 16);
    PerronBlock block = assemble_block(lin, 1, TranslationMethod::kCoordinateSearch);
    std::string svg = block_svg(block);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("world-to-view") != std::string::npos);
    CHECK(svg.find("hatch") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
}
