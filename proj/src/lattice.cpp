#include "perron/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace perron {

namespace {

// Real section [xmin, xmax] of the polygon on the horizontal line y = k.
std::optional<std::pair<double, double>> horizontal_section(const std::vector<Point2>& v,
                                                            double k) {
    bool found = false;
    double lo = 0, hi = 0;
    auto add = [&](double x) {
        if (!found) {
            lo = hi = x;
            found = true;
        } else {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point2 a = v[i];
        Point2 b = v[(i + 1) % v.size()];
        double da = a.y - k, db = b.y - k;
        if (da == 0 && db == 0) {
            add(a.x);
            add(b.x);
            continue;
        }
        if ((da <= 0 && db >= 0) || (da >= 0 && db <= 0)) {
            double w = da / (da - db);
            add(a.x + w * (b.x - a.x));
        }
    }
    if (!found) return std::nullopt;
    return std::make_pair(lo, hi);
}

std::vector<RowInterval> rows_of_vertices(const std::vector<Point2>& v) {
    double ymin = v[0].y, ymax = v[0].y;
    for (const Point2& p : v) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    int y0 = int(std::ceil(ymin - kLatticeSnap));
    int y1 = int(std::floor(ymax + kLatticeSnap));
    std::vector<RowInterval> rows;
    rows.reserve(std::max(0, y1 - y0 + 1));
    for (int y = y0; y <= y1; ++y) {
        auto sec = horizontal_section(v, double(y));
        if (!sec) continue;
        int xlo = int(std::ceil(sec->first - kLatticeSnap));
        int xhi = int(std::floor(sec->second + kLatticeSnap));
        if (xlo > xhi) continue;
        rows.push_back({y, xlo, xhi});
    }
    return rows;
}

LatticeSet rows_to_set(const std::vector<RowInterval>& rows) {
    LatticeSet s;
    std::int64_t n = 0;
    for (const RowInterval& r : rows) n += r.length();
    s.points.reserve(std::size_t(n));
    for (const RowInterval& r : rows)
        for (int x = r.xlo; x <= r.xhi; ++x) s.points.push_back({x, r.y});
    for (const RowInterval& r : rows) {
        IBox b{r.xlo, r.y, r.xhi, r.y};
        s.window = s.window.merged(b);
    }
    return s;
}

std::int64_t rows_count(const std::vector<RowInterval>& rows) {
    std::int64_t n = 0;
    for (const RowInterval& r : rows) n += r.length();
    return n;
}

}  // namespace

std::vector<RowInterval> row_intervals(const ConvexPolygon& p) {
    return rows_of_vertices(p.vertices());
}

std::vector<RowInterval> row_intervals(const TiltedRect& r) {
    auto c = r.corners();
    return rows_of_vertices({c.begin(), c.end()});
}

std::vector<RowInterval> row_intervals_union(const PolygonFamily& f) {
    if (f.members.empty()) throw std::invalid_argument("row_intervals_union: empty family");
    std::map<int, std::vector<std::pair<int, int>>> per_row;
    for (const ConvexPolygon& p : f.members)
        for (const RowInterval& r : row_intervals(p)) per_row[r.y].push_back({r.xlo, r.xhi});
    std::vector<RowInterval> out;
    for (auto& [y, ivs] : per_row) {
        std::sort(ivs.begin(), ivs.end());
        int lo = ivs[0].first, hi = ivs[0].second;
        for (std::size_t i = 1; i < ivs.size(); ++i) {
            if (ivs[i].first > hi + 1) {
                out.push_back({y, lo, hi});
                lo = ivs[i].first;
                hi = ivs[i].second;
            } else {
                hi = std::max(hi, ivs[i].second);
            }
        }
        out.push_back({y, lo, hi});
    }
    return out;
}

std::int64_t count_points(const ConvexPolygon& p) { return rows_count(row_intervals(p)); }
std::int64_t count_points(const TiltedRect& r) { return rows_count(row_intervals(r)); }
std::int64_t count_points_union(const PolygonFamily& f) {
    return rows_count(row_intervals_union(f));
}

LatticeSet enumerate_points(const ConvexPolygon& p) { return rows_to_set(row_intervals(p)); }
LatticeSet enumerate_points(const TiltedRect& r) { return rows_to_set(row_intervals(r)); }
LatticeSet enumerate_points_union(const PolygonFamily& f) {
    return rows_to_set(row_intervals_union(f));
}

DensityRatioReport check_density_ratio(const ConvexPolygon& p, const std::vector<double>& deltas) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (deltas[i] <= 0) throw std::invalid_argument("check_density_ratio: deltas must be positive");
        if (i > 0 && deltas[i] <= deltas[i - 1])
            throw std::invalid_argument("check_density_ratio: deltas must be increasing");
    }
    DensityRatioReport rep;
    rep.samples.reserve(deltas.size());
    for (double d : deltas) {
        ConvexPolygon dp = p.scaled(d);
        std::int64_t c = count_points(dp);
        double a = area(dp);
        rep.samples.push_back({d, c, a, double(c) / a});
    }
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        bool ok = true;
        for (std::size_t j = i; j < rep.samples.size(); ++j) {
            double r = rep.samples[j].ratio;
            if (r < 0.5 || r > 1.5) {
                ok = false;
                break;
            }
        }
        if (ok) {
            rep.delta0 = rep.samples[i].delta;
            break;
        }
    }
    return rep;
}

double check_process_ratio(const TiltedRect& r) {
    return double(count_points(r)) / r.area();
}

std::optional<std::pair<double, double>> sandwich_bounds(const TiltedRect& r) {
    const double r2 = 2.0 * std::sqrt(2.0);
    double l = r.short_side(), L = r.long_side();
    if (l <= r2) return std::nullopt;
    return std::make_pair((l - r2) * (L - r2) / (l * L), (l + r2) * (L + r2) / (l * L));
}

}  // namespace perron
