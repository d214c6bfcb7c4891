#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "perron/geometry.hpp"
#include "perron/util.hpp"

namespace perron {

// Snap tolerance toward inclusion for boundary lattice points: rectangles and
// polygons are closed sets throughout.
inline constexpr double kLatticeSnap = 1e-9;

struct LatticeSet {
    std::vector<IVec> points;  // sorted row-major (y, then x)
    IBox window;               // integer bounding box of the points

    std::int64_t count() const { return std::int64_t(points.size()); }
};

// Closed row interval of lattice abscissas; empty when xlo > xhi.
struct RowInterval {
    int y = 0;
    int xlo = 0;
    int xhi = -1;
    bool empty() const { return xlo > xhi; }
    std::int64_t length() const { return empty() ? 0 : std::int64_t(xhi) - xlo + 1; }
};

// Scanline per integer row: one interval per row for a convex region.
std::vector<RowInterval> row_intervals(const ConvexPolygon& p);
std::vector<RowInterval> row_intervals(const TiltedRect& r);

// Union of convex polygons, one merged set of disjoint intervals per row.
std::vector<RowInterval> row_intervals_union(const PolygonFamily& f);

std::int64_t count_points(const ConvexPolygon& p);
std::int64_t count_points(const TiltedRect& r);
std::int64_t count_points_union(const PolygonFamily& f);

LatticeSet enumerate_points(const ConvexPolygon& p);
LatticeSet enumerate_points(const TiltedRect& r);
LatticeSet enumerate_points_union(const PolygonFamily& f);

// count(delta * p) / area(delta * p) for each sampled delta, plus the least
// sampled delta after which every sampled ratio stays inside [1/2, 3/2].
struct DensityRatioReport {
    struct Sample {
        double delta;
        std::int64_t count;
        double area;
        double ratio;
    };
    std::vector<Sample> samples;
    std::optional<double> delta0;
};
DensityRatioReport check_density_ratio(const ConvexPolygon& p, const std::vector<double>& deltas);

// count(r) / area(r). When l(r) > 2*sqrt(2) the caller may assert the
// sandwich [(l-2r2)(L-2r2)/(lL), (l+2r2)(L+2r2)/(lL)]; sandwich_bounds
// returns it (nullopt otherwise).
double check_process_ratio(const TiltedRect& r);
std::optional<std::pair<double, double>> sandwich_bounds(const TiltedRect& r);

}  // namespace perron
