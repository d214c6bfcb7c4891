#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "perron/discrete_maximal.hpp"

using namespace perron;

namespace {

GridFunction point_mass(IVec p) {
    LatticeSet e;
    e.points = {p};
    e.window = {p.x, p.y, p.x, p.y};
    return GridFunction::indicator(e);
}

TiltedRect nine_point_square() { return TiltedRect({0, 0}, 1.0, 1.0, 0.0); }  // [-1,1]^2

GridFunction random_grid(Rng& rng, IBox w) {
    GridFunction g = GridFunction::zeros(w);
    for (double& v : g.values) v = rng.uniform(-2.0, 2.0);
    return g;
}

TiltedRect random_small_rect(Rng& rng) {
    double lh = rng.uniform(1.0, 5.0);
    double sh = rng.uniform(0.8, lh);
    double ang = rng.uniform(0, 3.14159265);
    // Keep the origin inside: center within the half-sides.
    Point2 c{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    return TiltedRect(c, lh, sh, ang);
}

}  // namespace

TEST_CASE("average: unit mean, point mass, disjoint support") {
    GridFunction ones = GridFunction::zeros({-10, -10, 10, 10});
    for (double& v : ones.values) v = 1.0;
    CHECK(average(ones, nine_point_square(), {0, 0}) == doctest::Approx(1.0));

    GridFunction delta = point_mass({0, 0});
    CHECK(average(delta, nine_point_square(), {0, 0}) == doctest::Approx(1.0 / 9.0));
    CHECK(average(delta, nine_point_square(), {5, 5}) == 0.0);
}

TEST_CASE("average: linearity and monotonicity") {
    Rng rng(3);
    RectOffsets off = make_offsets(random_small_rect(rng));
    IBox w{-8, -8, 8, 8};
    GridFunction f = random_grid(rng, w);
    GridFunction g = random_grid(rng, w);
    GridFunction fg = GridFunction::zeros(w);
    for (std::size_t i = 0; i < fg.values.size(); ++i)
        fg.values[i] = 2.0 * f.values[i] + 3.0 * g.values[i];
    double lhs = average(fg, off, {1, -2});
    double rhs = 2.0 * average(f, off, {1, -2}) + 3.0 * average(g, off, {1, -2});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    GridFunction lo = random_grid(rng, w);
    GridFunction hi = lo;
    for (double& v : hi.values) v += rng.uniform(0.0, 1.0);
    CHECK(average(lo, off, {0, 0}) <= average(hi, off, {0, 0}) + 1e-12);
}

TEST_CASE("maximal: zeros, indicator range, dominates each average") {
    RectFamily fam({nine_point_square(), TiltedRect({0, 0}, 3, 1, std::atan(0.5))});
    GridFunction zero = GridFunction::zeros({-5, -5, 5, 5});
    GridFunction mz = maximal(zero, fam, {-3, -3, 3, 3});
    for (double v : mz.values) CHECK(v == 0.0);

    Rng rng(5);
    LatticeSet e;
    for (int i = 0; i < 12; ++i) {
        IVec p{rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};
        e.points.push_back(p);
        e.window = e.window.merged({p.x, p.y, p.x, p.y});
    }
    std::sort(e.points.begin(), e.points.end());
    e.points.erase(std::unique(e.points.begin(), e.points.end()), e.points.end());
    GridFunction chi = GridFunction::indicator(e);
    GridFunction m = maximal(chi, fam, {-6, -6, 6, 6});
    for (double v : m.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    for (const RectOffsets& off : fam.offsets())
        for (int y = -6; y <= 6; ++y)
            for (int x = -6; x <= 6; ++x)
                CHECK(m.at({x, y}) >= average(chi, off, {x, y}) - 1e-15);
}

TEST_CASE("maximal equals the brute-force double loop bit for bit") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        int nrects = rng.uniform_int(1, 5);
        std::vector<TiltedRect> rects;
        for (int i = 0; i < nrects; ++i) rects.push_back(random_small_rect(rng));
        RectFamily fam(rects);
        GridFunction phi = random_grid(rng, {-20, -20, 19, 19});  // 40 x 40
        IBox window{-10, -10, 9, 9};
        GridFunction got = maximal(phi, fam, window);
        GridFunction expect = oracles::brute_force_maximal(phi, rects, window);
        REQUIRE(got.values.size() == expect.values.size());
        for (std::size_t i = 0; i < got.values.size(); ++i) CHECK(got.values[i] == expect.values[i]);
    }
}

TEST_CASE("maximal over a family union is the pointwise max") {
    Rng rng(11);
    std::vector<TiltedRect> r1{random_small_rect(rng), random_small_rect(rng)};
    std::vector<TiltedRect> r2{random_small_rect(rng)};
    std::vector<TiltedRect> all = r1;
    all.insert(all.end(), r2.begin(), r2.end());
    GridFunction phi = random_grid(rng, {-10, -10, 10, 10});
    IBox w{-5, -5, 5, 5};
    GridFunction mu = maximal(phi, RectFamily(all), w);
    GridFunction m1 = maximal(phi, RectFamily(r1), w);
    GridFunction m2 = maximal(phi, RectFamily(r2), w);
    for (std::size_t i = 0; i < mu.values.size(); ++i)
        CHECK(mu.values[i] == std::max(m1.values[i], m2.values[i]));
}

TEST_CASE("integer translation equivariance") {
    Rng rng(13);
    RectFamily fam({random_small_rect(rng), random_small_rect(rng)});
    GridFunction phi = random_grid(rng, {-8, -8, 8, 8});
    IVec shift{3, -2};
    GridFunction shifted = GridFunction::zeros(
        {phi.window.x0 + shift.x, phi.window.y0 + shift.y, phi.window.x1 + shift.x,
         phi.window.y1 + shift.y});
    for (int y = phi.window.y0; y <= phi.window.y1; ++y)
        for (int x = phi.window.x0; x <= phi.window.x1; ++x)
            shifted.ref({x + shift.x, y + shift.y}) = phi.at({x, y});
    IBox w{-4, -4, 4, 4};
    IBox ws{w.x0 + shift.x, w.y0 + shift.y, w.x1 + shift.x, w.y1 + shift.y};
    GridFunction m = maximal(phi, fam, w);
    GridFunction ms = maximal(shifted, fam, ws);
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x)
            CHECK(m.at({x, y}) == ms.at({x + shift.x, y + shift.y}));
}

TEST_CASE("superlevel_count: closed inequality") {
    GridFunction zero = GridFunction::zeros({-2, -2, 2, 2});
    CHECK(superlevel_count(zero, 0.5) == 0);
    CHECK_THROWS_AS(superlevel_count(zero, 0.0), std::invalid_argument);

    LatticeSet e;
    e.points = {{0, 0}, {1, 1}, {2, 0}};
    e.window = {0, 0, 2, 1};
    GridFunction chi = GridFunction::indicator(e);
    CHECK(superlevel_count(chi, 1.0) == 3);  // g = chi_E at lambda = 1 counts #E
}

TEST_CASE("indicator scanner equals the naive path exactly") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        int nrects = rng.uniform_int(1, 4);
        std::vector<TiltedRect> rects;
        for (int i = 0; i < nrects; ++i) rects.push_back(random_small_rect(rng));
        RectFamily fam(rects);

        LatticeSet e;
        std::set<std::pair<int, int>> used;
        int npts = rng.uniform_int(1, 25);
        for (int i = 0; i < npts; ++i) used.insert({rng.uniform_int(-6, 6), rng.uniform_int(-6, 6)});
        for (auto [x, y] : used) {
            e.points.push_back({x, y});
            e.window = e.window.merged({x, y, x, y});
        }
        std::sort(e.points.begin(), e.points.end());

        GridFunction chi = GridFunction::indicator(e);
        IBox hull = eval_hull(e.window, fam);
        GridFunction m = maximal(chi, fam, hull);

        // Compare at several lambdas, including exact achieved averages.
        std::vector<double> lambdas{0.01, 0.1, 0.5, 0.99, 1.0};
        for (const RectOffsets& off : fam.offsets())
            lambdas.push_back(1.0 / double(off.m));
        for (double lambda : lambdas) {
            TauberianResult t = tauberian_ratio(e, fam, lambda);
            CHECK(t.superlevel == superlevel_count(m, lambda));
        }
    }
}

TEST_CASE("tauberian_ratio: one-point set and large lambda") {
    LatticeSet e;
    e.points = {{2, 3}};
    e.window = {2, 3, 2, 3};
    RectFamily fam({nine_point_square()});
    std::int64_t m = fam.offsets()[0].m;
    CHECK(m == 9);
    TauberianResult t = tauberian_ratio(e, fam, 1.0 / 9.0);
    CHECK(t.superlevel == 9);  // every center whose translate hits the point
    CHECK(t.ratio == doctest::Approx(9.0));

    TauberianResult none = tauberian_ratio(e, fam, 1.5);
    CHECK(none.superlevel == 0);
    CHECK(none.ratio == 0.0);

    LatticeSet empty;
    CHECK_THROWS_AS(tauberian_ratio(empty, fam, 0.5), std::invalid_argument);
}

TEST_CASE("weak_p_witness: hand value and homogeneity") {
    GridFunction delta = point_mass({0, 0});
    RectFamily fam({nine_point_square()});
    double w = weak_p_witness(delta, fam, 1.0 / 9.0, 2.0);
    CHECK(w == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

    // Scaling phi by t and lambda by t leaves the witness unchanged.
    Rng rng(19);
    GridFunction phi = random_grid(rng, {-6, -6, 6, 6});
    for (double& v : phi.values) v = std::abs(v);
    double t = 7.0;
    GridFunction scaled = phi;
    for (double& v : scaled.values) v *= t;
    double base = weak_p_witness(phi, fam, 0.25, 1.5);
    double homog = weak_p_witness(scaled, fam, 0.25 * t, 1.5);
    CHECK(base == doctest::Approx(homog).epsilon(1e-9));

    CHECK_THROWS_AS(weak_p_witness(GridFunction::zeros({-1, -1, 1, 1}), fam, 0.5, 2.0),
                    std::invalid_argument);
}

TEST_CASE("weak_p_witness_indicator agrees with the general path") {
    Rng rng(23);
    LatticeSet e;
    std::set<std::pair<int, int>> used;
    for (int i = 0; i < 15; ++i) used.insert({rng.uniform_int(-5, 5), rng.uniform_int(-5, 5)});
    for (auto [x, y] : used) {
        e.points.push_back({x, y});
        e.window = e.window.merged({x, y, x, y});
    }
    std::sort(e.points.begin(), e.points.end());
    RectFamily fam({nine_point_square(), TiltedRect({0, 0}, 4, 1.2, std::atan(1.0 / 3))});
    for (double lambda : {0.05, 0.2}) {
        for (double p : {1.0, 2.0, 4.0}) {
            double general = weak_p_witness(GridFunction::indicator(e), fam, lambda, p);
            WeakWitnessResult fast = weak_p_witness_indicator(e, fam, lambda, p);
            CHECK(general == doctest::Approx(fast.witness).epsilon(1e-12));
        }
    }
}

TEST_CASE("measure_t0 on the single-triangle block") {
    DirectionSet lin = gen_power(1, 16);
    PerronBlock b0 = assemble_block(lin, 0, TranslationMethod::kCoordinateSearch);
    DeltaSelection sel = select_delta(b0, {16, 32, 64, 128, 256, 512});
    REQUIRE(sel.delta.has_value());
    b0.delta = *sel.delta;
    T0Result t0 = measure_t0(b0);
    CHECK(t0.t0 > 0.0);
    CHECK(t0.t0 <= 1.0);
    CHECK(t0.v_count > 0);
}
