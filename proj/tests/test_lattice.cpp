#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "perron/lattice.hpp"

using namespace perron;

TEST_CASE("count_points: closed squares and rectangles") {
    CHECK(count_points(ConvexPolygon::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == 4);
    CHECK(count_points(ConvexPolygon::make({{0, 0}, {3, 0}, {3, 2}, {0, 2}})) == 12);
}

TEST_CASE("count_points: big right triangle matches Pick's theorem") {
    ConvexPolygon tri = ConvexPolygon::make({{0, 0}, {200, 0}, {0, 200}});
    std::int64_t expect = oracles::pick_closed_count({{0, 0}, {200, 0}, {0, 200}});
    CHECK(expect == 20301);  // A = 20000, B = 600: 20000 - 300 + 1 + 600
    CHECK(count_points(tri) == expect);
}

TEST_CASE("count_points: random integer polygons match Pick's theorem") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        // Integer triangle with nonzero area.
        std::vector<std::pair<std::int64_t, std::int64_t>> v;
        while (true) {
            v = {{rng.uniform_int(-30, 30), rng.uniform_int(-30, 30)},
                 {rng.uniform_int(-30, 30), rng.uniform_int(-30, 30)},
                 {rng.uniform_int(-30, 30), rng.uniform_int(-30, 30)}};
            std::int64_t a2 = (v[1].first - v[0].first) * (v[2].second - v[0].second) -
                              (v[2].first - v[0].first) * (v[1].second - v[0].second);
            if (std::abs(a2) > 0) {
                if (a2 < 0) std::swap(v[1], v[2]);
                break;
            }
        }
        ConvexPolygon poly = ConvexPolygon::make({{double(v[0].first), double(v[0].second)},
                                                  {double(v[1].first), double(v[1].second)},
                                                  {double(v[2].first), double(v[2].second)}});
        CHECK(count_points(poly) == oracles::pick_closed_count(v));
    }
}

TEST_CASE("enumerate_points: unit square, sliver, tilted rect vs brute force") {
    LatticeSet sq = enumerate_points(ConvexPolygon::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(sq.points == std::vector<IVec>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});

    ConvexPolygon sliver = ConvexPolygon::make({{0.1, 0.1}, {0.9, 0.1}, {0.5, 0.2}});
    CHECK(enumerate_points(sliver).count() == 0);
    CHECK(count_points(sliver) == 0);

    TiltedRect r({0, 0}, 5, 1, std::atan(0.5));  // L=10, l=2, slope 1/2
    LatticeSet got = enumerate_points(r);
    std::vector<IVec> expect = oracles::scan_rect_points(r);
    CHECK(got.points == expect);
}

TEST_CASE("check_density_ratio: closed forms and envelope threshold") {
    ConvexPolygon sq = ConvexPolygon::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    DensityRatioReport rep = check_density_ratio(sq, {50, 100, 200, 400});
    CHECK(rep.samples[2].count == 201 * 201);
    CHECK(rep.samples[2].ratio == doctest::Approx(1.010025).epsilon(1e-12));
    REQUIRE(rep.delta0.has_value());
    CHECK(*rep.delta0 == 50);  // already inside [1/2, 3/2] at the first sample

    ConvexPolygon tri = ConvexPolygon::make({{0, 0}, {1, 0}, {0, 1}});
    DensityRatioReport rt = check_density_ratio(tri, {200});
    CHECK(rt.samples[0].count == 20301);
    CHECK(rt.samples[0].ratio == doctest::Approx(1.01505).epsilon(1e-12));

    CHECK_THROWS_AS(check_density_ratio(sq, {10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(check_density_ratio(sq, {-5}), std::invalid_argument);
}

TEST_CASE("density ratio tends to 1 with O(1/delta) envelope") {
    // Fitted exponent of |count - area| against delta stays near 1 (boundary
    // term), in particular at most 1.2.
    ConvexPolygon tri = ConvexPolygon::make({{0, 0}, {1, 0}, {0, 1}});
    std::vector<double> deltas{10, 20, 40, 80, 160, 320, 640};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double d : deltas) {
        ConvexPolygon p = tri.scaled(d);
        double err = std::abs(double(count_points(p)) - area(p));
        if (err <= 0) continue;
        double lx = std::log(d), ly = std::log(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= 1.2);
    CHECK(slope >= 0.5);
}

TEST_CASE("check_process_ratio: axis-aligned closed forms") {
    // [0,100] x [0,50]
    TiltedRect r({50, 25}, 50, 25, 0);
    double ratio = check_process_ratio(r);
    CHECK(ratio == doctest::Approx(101.0 * 51.0 / 5000.0).epsilon(1e-12));
    auto sb = sandwich_bounds(r);
    REQUIRE(sb.has_value());
    CHECK(ratio >= sb->first);
    CHECK(ratio <= sb->second);

    TiltedRect small({1.5, 1}, 1.5, 1, 0);  // 3 x 2: l <= 2*sqrt(2)
    CHECK(check_process_ratio(small) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(sandwich_bounds(small).has_value());
}

TEST_CASE("check_process_ratio: tilted rect within sandwich, count matches scan") {
    TiltedRect r({0.3, -0.2}, 100, 25, std::atan(1.0 / 3.0));  // l=50, L=200, slope 1/3
    std::int64_t c = count_points(r);
    CHECK(c == std::int64_t(oracles::scan_rect_points(r).size()));
    double ratio = check_process_ratio(r);
    auto sb = sandwich_bounds(r);
    REQUIRE(sb.has_value());
    CHECK(ratio >= sb->first);
    CHECK(ratio <= sb->second);
}

TEST_CASE("sandwich holds for random rects; tight envelope for l >= 100") {
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        double l = rng.uniform(3.0, 60.0);
        double L = l * rng.uniform(1.0, 6.0);
        TiltedRect r({rng.uniform(-3, 3), rng.uniform(-3, 3)}, L / 2, l / 2,
                     rng.uniform(0, 3.14159265));
        auto sb = sandwich_bounds(r);
        if (!sb) continue;
        double ratio = check_process_ratio(r);
        CHECK(ratio >= sb->first);
        CHECK(ratio <= sb->second);
    }
    for (int i = 0; i < 100; ++i) {
        double l = rng.uniform(100.0, 140.0);
        double L = l * rng.uniform(1.0, 3.0);
        TiltedRect r({rng.uniform(-3, 3), rng.uniform(-3, 3)}, L / 2, l / 2,
                     rng.uniform(0, 3.14159265));
        double ratio = check_process_ratio(r);
        CHECK(ratio >= 0.9);
        CHECK(ratio <= 1.1);
    }
}

TEST_CASE("monotonicity and integer translation invariance") {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        // p inside q: scale p down about its own centroid.
        ConvexPolygon q = ConvexPolygon::make({{rng.uniform(-20, -10), rng.uniform(-20, -10)},
                                               {rng.uniform(10, 20), rng.uniform(-20, -10)},
                                               {rng.uniform(10, 20), rng.uniform(10, 20)},
                                               {rng.uniform(-20, -10), rng.uniform(10, 20)}});
        Point2 c{0, 0};
        for (const Point2& v : q.vertices()) c = c + v;
        c = c * (1.0 / double(q.size()));
        std::vector<Point2> inner;
        for (const Point2& v : q.vertices()) inner.push_back(c + (v - c) * 0.5);
        ConvexPolygon p = ConvexPolygon::make(inner);
        CHECK(count_points(p) <= count_points(q));

        IVec t{rng.uniform_int(-50, 50), rng.uniform_int(-50, 50)};
        ConvexPolygon moved = q.translated({double(t.x), double(t.y)});
        CHECK(count_points(moved) == count_points(q));
    }
}

TEST_CASE("row scans are order independent (union merging)") {
    // The union of two overlapping translates counts each point once.
    ConvexPolygon a = ConvexPolygon::make({{0, 0}, {4, 0}, {4, 3}, {0, 3}});
    ConvexPolygon b = a.translated({2, 1});
    std::int64_t u = count_points_union({{a, b}});
    std::int64_t direct = 0;
    {
        auto pa = oracles::scan_polygon_points(a);
        auto pb = oracles::scan_polygon_points(b);
        std::set<std::pair<int, int>> s;
        for (const IVec& p : pa) s.insert({p.x, p.y});
        for (const IVec& p : pb) s.insert({p.x, p.y});
        direct = std::int64_t(s.size());
    }
    CHECK(u == direct);
}
