#include "perron/perron_tree.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "perron/lattice.hpp"

namespace perron {

namespace {

PolygonFamily translated_family(const std::vector<ConvexPolygon>& polys,
                                const std::vector<double>& taus) {
    PolygonFamily fam;
    fam.members.reserve(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i)
        fam.members.push_back(polys[i].translated({taus[i], 0}));
    return fam;
}

double union_area_at(const std::vector<ConvexPolygon>& triangles, const std::vector<double>& taus) {
    return union_area(translated_family(triangles, taus));
}

// Horizontal extent of a triangle's base (the side on the x-axis before
// translation; after translation the extent just shifts).
std::pair<double, double> base_extent(const ConvexPolygon& tri) {
    return {tri.min_x(), tri.max_x()};
}

std::vector<double> pairwise_bisection(const std::vector<ConvexPolygon>& triangles, double h) {
    struct Unit {
        std::vector<std::size_t> members;
        double lo, hi;  // current base extent
    };
    std::vector<double> taus(triangles.size(), 0.0);
    std::vector<Unit> units;
    units.reserve(triangles.size());
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        auto [lo, hi] = base_extent(triangles[i]);
        units.push_back({{i}, lo, hi});
    }
    while (units.size() > 1) {
        std::vector<Unit> next;
        for (std::size_t i = 0; i + 1 < units.size(); i += 2) {
            Unit& a = units[i];
            Unit& b = units[i + 1];
            double t = (1.0 - h) * (b.hi - a.lo);  // slide right unit left
            for (std::size_t m : b.members) taus[m] -= t;
            Unit merged;
            merged.members = a.members;
            merged.members.insert(merged.members.end(), b.members.begin(), b.members.end());
            merged.lo = std::min(a.lo, b.lo - t);
            merged.hi = std::max(a.hi, b.hi - t);
            next.push_back(std::move(merged));
        }
        if (units.size() % 2 == 1) next.push_back(units.back());
        units = std::move(next);
    }
    return taus;
}

// Coarse scan followed by golden-section descent of f over [lo, hi].
template <typename F>
double line_search(F&& f, double lo, double hi, int scan_points) {
    double best_x = lo, best_v = f(lo);
    for (int i = 1; i <= scan_points; ++i) {
        double x = lo + (hi - lo) * double(i) / scan_points;
        double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    double step = (hi - lo) / scan_points;
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-7 * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    double x = 0.5 * (a + b);
    return f(x) <= best_v ? x : best_x;
}

}  // namespace

std::vector<ConvexPolygon> PerronBlock::translated_triangles() const {
    return translated_family(triangles, taus).members;
}

std::vector<ConvexPolygon> PerronBlock::translated_trapezia() const {
    return translated_family(trapezia, taus).members;
}

std::vector<ConvexPolygon> build_triangles(const DirectionSet& d, int n) {
    if (n < 0) throw std::invalid_argument("build_triangles: n must be >= 0");
    int k_first = 1 << n;
    int k_last = (1 << (n + 1)) - 1;
    if (d.max_index() < k_last)
        throw std::invalid_argument("build_triangles: direction set too short; need u up to index " +
                                    std::to_string(k_last));
    const std::vector<double>& u = d.u();
    std::vector<ConvexPolygon> tris;
    tris.reserve(std::size_t(k_last - k_first + 1));
    for (int k = k_first; k <= k_last; ++k)
        tris.push_back(ConvexPolygon::make({{0, 1}, {u[k - 1], 0}, {u[k], 0}}));
    return tris;
}

TranslationResult optimize_translations(const std::vector<ConvexPolygon>& triangles,
                                        TranslationMethod method, double h) {
    if (triangles.empty()) throw std::invalid_argument("optimize_translations: no triangles");
    if (!(h > 0 && h < 1))
        throw std::invalid_argument("optimize_translations: h must be in (0,1)");

    TranslationResult out;
    out.union_original = triangles.size() == 1
                             ? area(triangles.front())
                             : union_area(PolygonFamily{triangles});
    if (triangles.size() == 1) {
        out.taus = {0.0};
        out.union_translated = out.union_original;
        out.epsilon = 1.0;
        return out;
    }

    std::vector<double> taus = pairwise_bisection(triangles, h);

    if (method == TranslationMethod::kCoordinateSearch) {
        double span = triangles.back().max_x() - triangles.front().min_x();
        double cur = union_area_at(triangles, taus);
        for (int cycle = 0; cycle < 60; ++cycle) {
            double before = cur;
            for (std::size_t i = 1; i < taus.size(); ++i) {
                auto f = [&](double t) {
                    std::vector<double> trial = taus;
                    trial[i] = t;
                    return union_area_at(triangles, trial);
                };
                taus[i] = line_search(f, taus[i] - span, taus[i] + span, 64);
            }
            cur = union_area_at(triangles, taus);
            if (before - cur < 1e-4 * before) break;
        }
    }

    // Any common shift is immaterial; pin the first triangle at 0.
    double shift = taus.front();
    for (double& t : taus) t -= shift;

    out.taus = std::move(taus);
    out.union_translated = union_area_at(triangles, out.taus);
    out.epsilon = out.union_translated / out.union_original;
    if (out.epsilon > 1.0) out.epsilon = 1.0;  // FP guard; translations cannot grow the union
    return out;
}

PerronBlock assemble_block(const DirectionSet& d, int n, TranslationMethod method, double h) {
    int k_last = (1 << (n + 1)) - 1;
    double ci = condition_i_constant(d, std::min(k_last, d.max_index()));
    if (!(ci > 0))
        throw std::invalid_argument("assemble_block: condition-(i) constant must be positive");

    PerronBlock block;
    block.n = n;
    block.k_first = 1 << n;
    block.triangles = build_triangles(d, n);
    TranslationResult tr = optimize_translations(block.triangles, method, h);
    block.taus = tr.taus;
    block.epsilon = tr.epsilon;
    block.union_area_original = tr.union_original;
    block.union_area_translated = tr.union_translated;

    const std::vector<double>& u = d.u();
    for (int k = block.k_first; k <= k_last; ++k) {
        Point2 apex{0, 1};
        Point2 near{u[k - 1], 0};
        Point2 far{u[k], 0};
        MappedConstruction mc = build_for_triangle(apex, near, far);
        block.trapezia.push_back(mc.V);
        block.rects.push_back(mc.P);
        block.alphas.push_back(mc.normal.alpha);
        block.normals.push_back(mc.normal);
    }

    PolygonFamily v_translated{block.translated_trapezia()};
    block.trapezia_area_ratio = union_area(v_translated) / block.union_area_original;
    return block;
}

DeltaSelection select_delta(const PerronBlock& block, const std::vector<double>& delta_grid,
                            std::uint64_t seed) {
    if (delta_grid.empty()) throw std::invalid_argument("select_delta: empty grid");
    DeltaSelection sel;

    ConvexPolygon big = ConvexPolygon::make(
        {{0, 1},
         {block.triangles.front().min_x(), 0},
         {block.triangles.back().max_x(), 0}});  // ∪ Delta_k is a single triangle

    PolygonFamily k_fam{block.translated_triangles()};
    PolygonFamily v_fam{block.translated_trapezia()};

    // Per-triangle x-samples reused across the grid.
    std::vector<std::vector<Point2>> samples;
    samples.reserve(block.normals.size());
    for (const Construction1& cons : block.normals)
        samples.push_back(sample_trapezium(cons, 50, seed));

    for (double delta : delta_grid) {
        DeltaSelection::Probe probe{delta, false, false, false, 0, 0};
        std::int64_t n_union = count_points(big.scaled(delta));
        std::int64_t n_k = count_points_union(
            PolygonFamily{[&] {
                std::vector<ConvexPolygon> v;
                for (const ConvexPolygon& p : k_fam.members) v.push_back(p.scaled(delta));
                return v;
            }()});
        std::int64_t n_v = count_points_union(
            PolygonFamily{[&] {
                std::vector<ConvexPolygon> v;
                for (const ConvexPolygon& p : v_fam.members) v.push_back(p.scaled(delta));
                return v;
            }()});
        if (n_union > 0) {
            probe.count_ratio = double(n_k) / double(n_union);
            probe.v_ratio = double(n_v) / double(n_union);
        }
        probe.a = n_union > 0 && probe.count_ratio <= 3.0 * block.epsilon;
        probe.c = n_union > 0 && probe.v_ratio >= 0.5 / 9.0;
        probe.b = true;
        for (std::size_t i = 0; i < block.normals.size() && probe.b; ++i)
            probe.b = discrete_overlap_at(block.normals[i], samples[i], delta).pass;
        sel.trace.push_back(probe);
        if (probe.a && probe.b && probe.c) {
            sel.delta = delta;
            break;
        }
    }
    return sel;
}

std::string block_svg(const PerronBlock& block) {
    // World bounds over everything drawn.
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    auto extend = [&](const ConvexPolygon& p) {
        x0 = std::min(x0, p.min_x());
        x1 = std::max(x1, p.max_x());
        y0 = std::min(y0, p.min_y());
        y1 = std::max(y1, p.max_y());
    };
    std::vector<ConvexPolygon> orig = block.triangles;
    std::vector<ConvexPolygon> trans = block.translated_triangles();
    std::vector<ConvexPolygon> traps = block.translated_trapezia();
    for (const ConvexPolygon& p : orig) extend(p);
    for (const ConvexPolygon& p : trans) extend(p);
    for (const ConvexPolygon& p : traps) extend(p);

    double w = x1 - x0, hgt = y1 - y0;
    double margin = 40;
    double s = std::min((1000 - 2 * margin) / w, (1000 - 2 * margin) / hgt);
    double ox = margin - s * x0, oy = margin + s * y1;  // y flipped for SVG

    auto pt = [&](Point2 p) {
        std::ostringstream os;
        os << (s * p.x + ox) << "," << (oy - s * p.y);
        return os.str();
    };
    auto poly = [&](const ConvexPolygon& p, const std::string& style) {
        std::ostringstream os;
        os << "  <polygon points=\"";
        for (std::size_t i = 0; i < p.vertices().size(); ++i)
            os << (i ? " " : "") << pt(p.vertices()[i]);
        os << "\" style=\"" << style << "\"/>\n";
        return os.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
    svg << "  <metadata>world-to-view: x' = " << s << "*x + " << ox << "; y' = " << oy << " - "
        << s << "*y</metadata>\n";
    svg << "  <defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
           "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
           "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#444\" stroke-width=\"1\"/>"
           "</pattern></defs>\n";
    for (const ConvexPolygon& p : traps) svg << poly(p, "fill:url(#hatch);stroke:#444;stroke-width:0.5");
    for (const ConvexPolygon& p : trans)
        svg << poly(p, "fill:#4a78c4;fill-opacity:0.45;stroke:#1d3f7a;stroke-width:0.8");
    for (const ConvexPolygon& p : orig)
        svg << poly(p, "fill:none;stroke:#b03030;stroke-width:1.2");
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace perron
