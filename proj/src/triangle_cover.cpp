#include "perron/triangle_cover.hpp"

#include <cmath>
#include <stdexcept>

#include "perron/lattice.hpp"

namespace perron {

double Construction1::overlap_bound() const {
    return std::min(alpha, 1.0) / 72.0 * P.area();
}

Construction1 build_construction1(double b, double c) {
    if (!(b > 0) || c < 0 || !(c < b))
        throw std::invalid_argument("build_construction1: need 0 <= c < b");

    Point2 A{1, 0}, B{0, b}, C{0, c};
    Point2 Bp = A + 1.5 * (B - A);
    Point2 Cp = A + 1.5 * (C - A);

    // Smallest rectangle with one side on the far lateral extension (A B')
    // containing the triangle A B' C'. All three projections land inside the
    // segment (c <= b), so the side is exactly AB' and the height is the
    // distance of C' from that line; hence |Ptilde| = 2 |AB'C'|.
    Point2 e = Bp - A;
    double elen = norm(e);
    Point2 ehat = e * (1.0 / elen);
    Point2 nhat = perp(ehat);
    double hC = dot(Cp - A, nhat);
    if (hC < 0) {
        nhat = nhat * -1.0;
        hC = -hC;
    }
    double t_lo = std::min({0.0, elen, dot(Cp - A, ehat)});
    double t_hi = std::max({0.0, elen, dot(Cp - A, ehat)});
    double span = t_hi - t_lo;
    Point2 center = A + ehat * (0.5 * (t_lo + t_hi)) + nhat * (0.5 * hC);
    double half_e = 0.5 * span, half_n = 0.5 * hC;
    double ang_e = std::atan2(ehat.y, ehat.x);
    TiltedRect ptilde = half_e >= half_n ? TiltedRect(center, half_e, half_n, ang_e)
                                         : TiltedRect(center, half_n, half_e,
                                                      std::atan2(nhat.y, nhat.x));

    Construction1 cons{
        b,
        c,
        A,
        B,
        C,
        Bp,
        Cp,
        ptilde,
        TiltedRect({0, 0}, ptilde.long_half(), ptilde.short_half(), ptilde.angle()),
        ConvexPolygon::make({B, C, Cp, Bp}),
        ConvexPolygon::make({A, B, C}),
        norm(B - A) / norm(B - C),
    };
    return cons;
}

MappedConstruction build_for_triangle(Point2 apex, Point2 base_near, Point2 base_far) {
    TriangleNormalForm nf = normalize_triangle(apex, base_near, base_far);
    Construction1 normal = build_construction1(nf.b, nf.c);
    Similarity back = nf.to_normal.inverse();
    return MappedConstruction{
        normal,
        back,
        normal.V.transformed(back),
        normal.P.transformed(back),
    };
}

OverlapCheck verify_overlap(const Construction1& cons, Point2 x) {
    if (!cons.V.contains(x))
        throw std::invalid_argument("verify_overlap: x is not in the trapezium V");
    ConvexPolygon moved = rect_to_polygon(cons.P).translated(x);
    auto inter = clip(moved, cons.triangle);
    OverlapCheck out;
    out.measured = inter ? area(*inter) : 0.0;
    out.bound = cons.overlap_bound();
    out.pass = out.measured >= out.bound;
    return out;
}

std::vector<Point2> sample_trapezium(const Construction1& cons, int interior, std::uint64_t seed) {
    std::vector<Point2> xs;
    const std::vector<Point2>& v = cons.V.vertices();
    for (const Point2& p : v) xs.push_back(p);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point2 a = v[i], b = v[(i + 1) % v.size()];
        xs.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
    }
    Rng rng(seed);
    double x0 = cons.V.min_x(), x1 = cons.V.max_x();
    double y0 = cons.V.min_y(), y1 = cons.V.max_y();
    int got = 0;
    while (got < interior) {
        Point2 p{rng.uniform(x0, x1), rng.uniform(y0, y1)};
        if (cons.V.contains(p, 0.0)) {
            xs.push_back(p);
            ++got;
        }
    }
    return xs;
}

DiscreteOverlapResult discrete_overlap_at(const Construction1& cons,
                                          const std::vector<Point2>& xs, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("discrete_overlap_at: delta must be positive");
    DiscreteOverlapResult out;
    out.threshold = 0.5 * std::min(cons.alpha, 1.0) / 72.0 * (2.0 / 3.0);
    std::int64_t pcount = count_points(rect_to_polygon(cons.P).scaled(delta));
    if (pcount == 0) {
        out.worst_ratio = 0;
        out.pass = false;
        return out;
    }
    double worst = std::numeric_limits<double>::infinity();
    ConvexPolygon prect = rect_to_polygon(cons.P);
    for (const Point2& x : xs) {
        auto inter = clip(prect.translated(x), cons.triangle);
        double ratio = 0;
        if (inter) ratio = double(count_points(inter->scaled(delta))) / double(pcount);
        worst = std::min(worst, ratio);
    }
    out.worst_ratio = worst;
    out.pass = worst >= out.threshold;
    return out;
}

DiscreteOverlapScale discrete_overlap_scale(const Construction1& cons,
                                            const std::vector<double>& delta_grid,
                                            std::uint64_t seed) {
    for (std::size_t i = 1; i < delta_grid.size(); ++i)
        if (delta_grid[i] <= delta_grid[i - 1])
            throw std::invalid_argument("discrete_overlap_scale: grid must be increasing");
    std::vector<Point2> xs = sample_trapezium(cons, 50, seed);
    DiscreteOverlapScale out;
    for (double d : delta_grid) {
        DiscreteOverlapResult r = discrete_overlap_at(cons, xs, d);
        out.trace.push_back({d, r.worst_ratio});
        out.threshold = r.threshold;
        out.worst_ratio = r.worst_ratio;
        if (r.pass) {
            out.delta = d;
            break;
        }
    }
    return out;
}

}  // namespace perron
