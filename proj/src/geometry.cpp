#include "perron/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace perron {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kPi);
    if (a < 0) a += kPi;
    if (a >= kPi) a -= kPi;
    return a;
}

double signed_area2(const std::vector<Point2>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return s;  // twice the signed area
}

}  // namespace

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Similarity Similarity::inverse() const {
    double det = m00 * m11 - m01 * m10;
    if (std::abs(det) < 1e-300) throw std::invalid_argument("Similarity: singular");
    Similarity inv;
    inv.m00 = m11 / det;
    inv.m01 = -m01 / det;
    inv.m10 = -m10 / det;
    inv.m11 = m00 / det;
    Point2 it = inv.apply_vec(t);
    inv.t = {-it.x, -it.y};
    return inv;
}

TiltedRect::TiltedRect(Point2 center, double long_half, double short_half, double angle)
    : center_(center), long_half_(long_half), short_half_(short_half), angle_(wrap_angle(angle)) {
    if (!finite(center) || !std::isfinite(long_half) || !std::isfinite(short_half) ||
        !std::isfinite(angle))
        throw std::invalid_argument("TiltedRect: non-finite parameter");
    if (long_half_ <= 0 || short_half_ <= 0)
        throw std::invalid_argument("TiltedRect: half sides must be positive");
    if (long_half_ < short_half_) {
        std::swap(long_half_, short_half_);
        angle_ = wrap_angle(angle_ + kPi / 2);
    }
}

bool TiltedRect::is_square() const {
    return std::abs(long_half_ - short_half_) <= kOrientTol * std::max(1.0, long_half_);
}

double TiltedRect::slope() const {
    if (is_square()) {
        double a = std::fmod(angle_, kPi / 2);
        if (a < 0) a += kPi / 2;
        double smallest = std::min(a, kPi / 2 - a);  // in [0, pi/4]
        return std::tan(smallest);
    }
    if (std::abs(angle_ - kPi / 2) < 1e-15) return std::numeric_limits<double>::infinity();
    return std::tan(angle_);
}

std::array<Point2, 4> TiltedRect::corners() const {
    Point2 u = long_dir() * long_half_;
    Point2 v = short_dir() * short_half_;
    return {center_ - u - v, center_ + u - v, center_ + u + v, center_ - u + v};
}

bool TiltedRect::contains(Point2 p, double tol) const {
    Point2 d = p - center_;
    return std::abs(dot(d, long_dir())) <= long_half_ + tol &&
           std::abs(dot(d, short_dir())) <= short_half_ + tol;
}

TiltedRect TiltedRect::translated(Point2 d) const {
    return TiltedRect(center_ + d, long_half_, short_half_, angle_);
}

TiltedRect TiltedRect::scaled(double s) const {
    if (!(s > 0)) throw std::invalid_argument("TiltedRect::scaled: scale must be positive");
    return TiltedRect(center_ * s, long_half_ * s, short_half_ * s, angle_);
}

TiltedRect TiltedRect::transformed(const Similarity& sim) const {
    double s = sim.scale();
    Point2 ld = sim.apply_vec(long_dir());
    double ang = std::atan2(ld.y, ld.x);
    return TiltedRect(sim.apply(center_), long_half_ * s, short_half_ * s, ang);
}

TiltedRect enlarge_rect(const TiltedRect& r, double pad) {
    if (pad < 0) throw std::invalid_argument("enlarge_rect: pad must be nonnegative");
    if (pad == 0) return r;
    return TiltedRect(r.center(), r.long_half() + pad, r.short_half() + pad, r.angle());
}

std::optional<ConvexPolygon> ConvexPolygon::try_make(std::vector<Point2> vertices) {
    for (const Point2& p : vertices)
        if (!finite(p)) return std::nullopt;
    if (vertices.size() < 3) return std::nullopt;

    if (signed_area2(vertices) < 0) std::reverse(vertices.begin(), vertices.end());

    // Drop duplicates and collinear middle vertices one at a time, always
    // against the current neighbors (a duplicate next to a real vertex must
    // not take the real vertex down with it).
    std::vector<Point2> v = std::move(vertices);
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
            Point2 prev = v[(i + v.size() - 1) % v.size()];
            Point2 cur = v[i];
            Point2 next = v[(i + 1) % v.size()];
            if (norm(cur - prev) <= kOrientTol ||
                std::abs(cross(cur - prev, next - cur)) <= kOrientTol) {
                v.erase(v.begin() + std::ptrdiff_t(i));
                changed = true;
                break;
            }
        }
    }
    if (v.size() < 3) return std::nullopt;
    if (signed_area2(v) <= 2 * kOrientTol) return std::nullopt;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point2 a = v[i];
        Point2 b = v[(i + 1) % v.size()];
        Point2 c = v[(i + 2) % v.size()];
        if (cross(b - a, c - b) < -kOrientTol) return std::nullopt;  // not convex
    }
    return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::make(std::vector<Point2> vertices) {
    auto p = try_make(std::move(vertices));
    if (!p) throw std::invalid_argument("ConvexPolygon: degenerate or non-convex vertex list");
    return *p;
}

double ConvexPolygon::min_x() const {
    double m = verts_[0].x;
    for (const Point2& p : verts_) m = std::min(m, p.x);
    return m;
}
double ConvexPolygon::max_x() const {
    double m = verts_[0].x;
    for (const Point2& p : verts_) m = std::max(m, p.x);
    return m;
}
double ConvexPolygon::min_y() const {
    double m = verts_[0].y;
    for (const Point2& p : verts_) m = std::min(m, p.y);
    return m;
}
double ConvexPolygon::max_y() const {
    double m = verts_[0].y;
    for (const Point2& p : verts_) m = std::max(m, p.y);
    return m;
}

bool ConvexPolygon::contains(Point2 p, double tol) const {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        Point2 a = verts_[i];
        Point2 b = verts_[(i + 1) % verts_.size()];
        Point2 e = b - a;
        // Scale-aware: tol is a distance, cross is distance * |e|.
        if (cross(e, p - a) < -tol * std::max(norm(e), 1e-30)) return false;
    }
    return true;
}

ConvexPolygon ConvexPolygon::translated(Point2 d) const {
    std::vector<Point2> v = verts_;
    for (Point2& p : v) p = p + d;
    return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::scaled(double s) const {
    if (!(s > 0)) throw std::invalid_argument("ConvexPolygon::scaled: scale must be positive");
    std::vector<Point2> v = verts_;
    for (Point2& p : v) p = p * s;
    return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::transformed(const Similarity& sim) const {
    std::vector<Point2> v = verts_;
    for (Point2& p : v) p = sim.apply(p);
    return make(std::move(v));  // re-normalizes orientation under reflections
}

double area(const ConvexPolygon& p) {
    double a2 = signed_area2(p.vertices());
    if (a2 <= 2 * kOrientTol) throw std::invalid_argument("area: degenerate polygon");
    return 0.5 * a2;
}

std::optional<ConvexPolygon> clip(const ConvexPolygon& p, const ConvexPolygon& q) {
    std::vector<Point2> cur(p.vertices().begin(), p.vertices().end());
    const std::vector<Point2>& qv = q.vertices();
    for (std::size_t i = 0; i < qv.size() && !cur.empty(); ++i) {
        Point2 a = qv[i];
        Point2 b = qv[(i + 1) % qv.size()];
        Point2 e = b - a;
        std::vector<Point2> next;
        next.reserve(cur.size() + 2);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            Point2 s = cur[j];
            Point2 t = cur[(j + 1) % cur.size()];
            double ds = cross(e, s - a);
            double dt = cross(e, t - a);
            if (ds >= 0) next.push_back(s);
            if ((ds > 0 && dt < 0) || (ds < 0 && dt > 0)) {
                double w = ds / (ds - dt);
                next.push_back({s.x + w * (t.x - s.x), s.y + w * (t.y - s.y)});
            }
        }
        cur = std::move(next);
    }
    if (cur.size() < 3) return std::nullopt;
    return ConvexPolygon::try_make(std::move(cur));
}

namespace {

// Vertical section [lo, hi] of a convex polygon at abscissa x, if any.
std::optional<std::pair<double, double>> section_at(const ConvexPolygon& poly, double x) {
    bool found = false;
    double lo = 0, hi = 0;
    const std::vector<Point2>& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point2 a = v[i];
        Point2 b = v[(i + 1) % v.size()];
        double dxa = a.x - x, dxb = b.x - x;
        if (dxa == 0 && dxb == 0) {  // vertical edge exactly at x
            double y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
            if (!found) {
                lo = y0;
                hi = y1;
                found = true;
            } else {
                lo = std::min(lo, y0);
                hi = std::max(hi, y1);
            }
            continue;
        }
        if ((dxa <= 0 && dxb >= 0) || (dxa >= 0 && dxb <= 0)) {
            double w = dxa / (dxa - dxb);
            double y = a.y + w * (b.y - a.y);
            if (!found) {
                lo = hi = y;
                found = true;
            } else {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
    }
    if (!found) return std::nullopt;
    return std::make_pair(lo, hi);
}

double union_length_at(const std::vector<const ConvexPolygon*>& polys, double x) {
    // Merge the vertical sections into disjoint intervals and sum lengths.
    std::vector<std::pair<double, double>> ivs;
    for (const ConvexPolygon* p : polys) {
        if (x < p->min_x() || x > p->max_x()) continue;
        if (auto s = section_at(*p, x)) ivs.push_back(*s);
    }
    if (ivs.empty()) return 0.0;
    std::sort(ivs.begin(), ivs.end());
    double total = 0, lo = ivs[0].first, hi = ivs[0].second;
    for (std::size_t i = 1; i < ivs.size(); ++i) {
        if (ivs[i].first > hi) {
            total += hi - lo;
            lo = ivs[i].first;
            hi = ivs[i].second;
        } else {
            hi = std::max(hi, ivs[i].second);
        }
    }
    total += hi - lo;
    return total;
}

// x-coordinates of proper crossings between two segments, if any.
void add_segment_intersection_x(Point2 a, Point2 b, Point2 c, Point2 d, std::vector<double>& xs) {
    Point2 r = b - a, s = d - c;
    double denom = cross(r, s);
    if (std::abs(denom) <= kOrientTol) return;  // parallel; endpoints are breakpoints anyway
    double t = cross(c - a, s) / denom;
    double u = cross(c - a, r) / denom;
    if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) return;
    xs.push_back(a.x + t * r.x);
}

}  // namespace

double union_area(const PolygonFamily& f) {
    if (f.members.empty()) throw std::invalid_argument("union_area: empty family");
    std::vector<const ConvexPolygon*> polys;
    polys.reserve(f.members.size());
    for (const ConvexPolygon& p : f.members) polys.push_back(&p);

    std::vector<double> xs;
    for (const ConvexPolygon* p : polys)
        for (const Point2& v : p->vertices()) xs.push_back(v.x);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const std::vector<Point2>& vi = polys[i]->vertices();
        for (std::size_t j = i + 1; j < polys.size(); ++j) {
            const std::vector<Point2>& vj = polys[j]->vertices();
            for (std::size_t e = 0; e < vi.size(); ++e)
                for (std::size_t g = 0; g < vj.size(); ++g)
                    add_segment_intersection_x(vi[e], vi[(e + 1) % vi.size()], vj[g],
                                               vj[(g + 1) % vj.size()], xs);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
             xs.end());

    double total = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double x0 = xs[i], x1 = xs[i + 1];
        double w = x1 - x0;
        if (w <= 0) continue;
        // The union length is linear inside the open slab but can jump at its
        // ends (vertical edges), so the trapezoid endpoints are the one-sided
        // limits, sampled at the quarter points.
        double la = union_length_at(polys, x0 + 0.25 * w);
        double lb = union_length_at(polys, x0 + 0.75 * w);
        total += 0.5 * w * (la + lb);
    }
    return total;
}

ConvexPolygon transform(const ConvexPolygon& p, Point2 translation, double scale) {
    if (!(scale > 0)) throw std::invalid_argument("transform: scale must be positive");
    return p.scaled(scale).translated(translation);
}

TiltedRect transform(const TiltedRect& r, Point2 translation, double scale) {
    if (!(scale > 0)) throw std::invalid_argument("transform: scale must be positive");
    return r.scaled(scale).translated(translation);
}

ConvexPolygon rect_to_polygon(const TiltedRect& r) {
    auto c = r.corners();
    return ConvexPolygon::make({c[0], c[1], c[2], c[3]});
}

TriangleNormalForm normalize_triangle(Point2 apex, Point2 base1, Point2 base2) {
    Point2 e = base2 - base1;
    double blen = norm(e);
    if (blen <= kOrientTol) throw std::invalid_argument("normalize_triangle: degenerate base");
    Point2 ehat = e * (1.0 / blen);
    Point2 nhat = perp(ehat);
    double h = dot(apex - base1, nhat);
    if (std::abs(h) <= kOrientTol) throw std::invalid_argument("normalize_triangle: flat triangle");
    if (h < 0) {
        nhat = nhat * -1.0;
        h = -h;
    }
    // Foot of the apex perpendicular on the base line.
    Point2 foot = apex - nhat * h;
    double o1 = dot(base1 - foot, ehat);
    double o2 = dot(base2 - foot, ehat);
    if (o1 < 0 && o2 < 0) {
        ehat = ehat * -1.0;
        o1 = -o1;
        o2 = -o2;
    }
    if (std::min(o1, o2) < -kOrientTol * std::max(1.0, blen))
        throw std::invalid_argument(
            "normalize_triangle: apex foot must not fall strictly inside the base");
    double s = 1.0 / h;
    // Maps foot -> (0,0), ehat -> (0, s), nhat -> (s, 0): base line onto the
    // y-axis, apex onto (1, 0). This is a similarity possibly composed with a
    // reflection; sign of the determinant is not constrained.
    TriangleNormalForm nf;
    nf.to_normal.m00 = s * nhat.x;
    nf.to_normal.m01 = s * nhat.y;
    nf.to_normal.m10 = s * ehat.x;
    nf.to_normal.m11 = s * ehat.y;
    nf.to_normal.t = {-(nf.to_normal.m00 * foot.x + nf.to_normal.m01 * foot.y),
                      -(nf.to_normal.m10 * foot.x + nf.to_normal.m11 * foot.y)};
    double c = std::max(0.0, std::min(o1, o2)) * s;
    double b = std::max(o1, o2) * s;
    nf.b = b;
    nf.c = c;
    return nf;
}

}  // namespace perron
