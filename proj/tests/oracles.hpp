// Independent oracles used by the test suites: Monte-Carlo rasterization for
// union areas, Pick's theorem for lattice counts of integer polygons, brute
// force half-plane scans for lattice membership, and a double-loop evaluation
// of the maximal averaging operator. These deliberately avoid the library's
// scanline/sweep code paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "perron/discrete_maximal.hpp"
#include "perron/geometry.hpp"
#include "perron/util.hpp"

namespace oracles {

using perron::ConvexPolygon;
using perron::GridFunction;
using perron::IBox;
using perron::IVec;
using perron::Point2;
using perron::PolygonFamily;
using perron::Rng;
using perron::TiltedRect;

struct McEstimate {
    double value = 0;
    double sigma = 0;
};

// Monte-Carlo union area over the joint bounding box.
inline McEstimate mc_union_area(const PolygonFamily& fam, std::int64_t samples,
                                std::uint64_t seed) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const ConvexPolygon& p : fam.members) {
        x0 = std::min(x0, p.min_x());
        x1 = std::max(x1, p.max_x());
        y0 = std::min(y0, p.min_y());
        y1 = std::max(y1, p.max_y());
    }
    Rng rng(seed);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        Point2 pt{rng.uniform(x0, x1), rng.uniform(y0, y1)};
        for (const ConvexPolygon& p : fam.members) {
            if (p.contains(pt, 0.0)) {
                ++hits;
                break;
            }
        }
    }
    double box = (x1 - x0) * (y1 - y0);
    double frac = double(hits) / double(samples);
    McEstimate e;
    e.value = frac * box;
    e.sigma = box * std::sqrt(std::max(frac * (1 - frac), 1e-12) / double(samples));
    return e;
}

// Closed lattice count of a polygon with integer vertices: A + B/2 + 1.
inline std::int64_t pick_closed_count(const std::vector<std::pair<std::int64_t, std::int64_t>>& v) {
    std::int64_t a2 = 0, boundary = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto [x1p, y1p] = v[i];
        auto [x2p, y2p] = v[(i + 1) % v.size()];
        a2 += x1p * y2p - x2p * y1p;
        boundary += std::gcd(std::abs(x2p - x1p), std::abs(y2p - y1p));
    }
    a2 = std::abs(a2);
    // closed count = interior + boundary = (A - B/2 + 1) + B
    return (a2 - boundary) / 2 + 1 + boundary;
}

// Brute-force closed membership scan of a tilted rectangle over its bounding
// box, with the same snap constant as the library but a different predicate.
inline std::vector<IVec> scan_rect_points(const TiltedRect& r) {
    auto c = r.corners();
    double x0 = c[0].x, x1 = c[0].x, y0 = c[0].y, y1 = c[0].y;
    for (const Point2& p : c) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    std::vector<IVec> pts;
    for (int y = int(std::ceil(y0 - 1e-9)); y <= int(std::floor(y1 + 1e-9)); ++y)
        for (int x = int(std::ceil(x0 - 1e-9)); x <= int(std::floor(x1 + 1e-9)); ++x) {
            Point2 d = Point2{double(x), double(y)} - r.center();
            if (std::abs(dot(d, r.long_dir())) <= r.long_half() + 1e-9 &&
                std::abs(dot(d, r.short_dir())) <= r.short_half() + 1e-9)
                pts.push_back({x, y});
        }
    return pts;
}

inline std::vector<IVec> scan_polygon_points(const ConvexPolygon& poly) {
    std::vector<IVec> pts;
    for (int y = int(std::ceil(poly.min_y() - 1e-9)); y <= int(std::floor(poly.max_y() + 1e-9)); ++y)
        for (int x = int(std::ceil(poly.min_x() - 1e-9)); x <= int(std::floor(poly.max_x() + 1e-9));
             ++x)
            if (poly.contains({double(x), double(y)}, 1e-9)) pts.push_back({x, y});
    return pts;
}

// Double-loop maximal operator: per grid point, per rectangle, sum |phi| over
// the rectangle's lattice points found by the brute-force scan (row-major),
// divide by the scan count, take the max.
inline GridFunction brute_force_maximal(const GridFunction& phi,
                                        const std::vector<TiltedRect>& rects, IBox window) {
    std::vector<std::vector<IVec>> offsets;
    offsets.reserve(rects.size());
    for (const TiltedRect& r : rects) offsets.push_back(scan_rect_points(r));
    GridFunction out = GridFunction::zeros(window);
    for (int y = window.y0; y <= window.y1; ++y)
        for (int x = window.x0; x <= window.x1; ++x) {
            double best = 0;
            for (const std::vector<IVec>& off : offsets) {
                double s = 0;
                for (const IVec& o : off) s += std::abs(phi.at({x + o.x, y + o.y}));
                best = std::max(best, s / double(off.size()));
            }
            out.ref({x, y}) = best;
        }
    return out;
}

// Exhaustive 1-D grid search for the translation of the second triangle that
// minimizes the union area of two triangles; returns the best epsilon.
inline double grid_search_two_triangle_epsilon(const ConvexPolygon& t1, const ConvexPolygon& t2,
                                               double lo, double hi, double step) {
    double original = perron::union_area(PolygonFamily{{t1, t2}});
    double best = 1e300;
    for (double t = lo; t <= hi + 1e-12; t += step) {
        double a = perron::union_area(PolygonFamily{{t1, t2.translated({t, 0})}});
        best = std::min(best, a);
    }
    return best / original;
}

}  // namespace oracles
