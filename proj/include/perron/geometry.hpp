#pragma once

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "perron/util.hpp"

namespace perron {

// Absolute tolerance on cross products used for orientation and collinearity
// tests. All constructions in this library are inequalities with slack, so
// double precision with a fixed tolerance is sufficient.
inline constexpr double kOrientTol = 1e-12;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    friend Point2 operator*(double s, Point2 p) { return p * s; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::sqrt(dot(a, a)); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

bool finite(Point2 p);

// Direct similarity or similarity-with-reflection: p -> M p + t with
// M = s * Q, Q orthogonal. Preserves ratios of lengths and therefore every
// scale-invariant inequality used here; a reflection also preserves Z^2
// when it is the coordinate swap.
struct Similarity {
    double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    Point2 t;

    Point2 apply(Point2 p) const {
        return {m00 * p.x + m01 * p.y + t.x, m10 * p.x + m11 * p.y + t.y};
    }
    Point2 apply_vec(Point2 v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
    double scale() const { return std::sqrt(std::abs(m00 * m11 - m01 * m10)); }
    Similarity inverse() const;
};

// Rectangle with arbitrary orientation. `angle` is the direction of the
// longest side against the horizontal axis, normalized to [0, pi).
class TiltedRect {
  public:
    TiltedRect(Point2 center, double long_half, double short_half, double angle);

    Point2 center() const { return center_; }
    double long_half() const { return long_half_; }
    double short_half() const { return short_half_; }
    double angle() const { return angle_; }
    double long_side() const { return 2 * long_half_; }   // L(R)
    double short_side() const { return 2 * short_half_; } // l(R)
    double area() const { return 4 * long_half_ * short_half_; }
    bool is_square() const;

    // Tangent of the angle between the longest side and the horizontal axis;
    // for squares, tangent of the smallest angle any side makes with the
    // horizontal (reduced to [0, pi/4]).
    double slope() const;

    Point2 long_dir() const { return {std::cos(angle_), std::sin(angle_)}; }
    Point2 short_dir() const { return perp(long_dir()); }
    std::array<Point2, 4> corners() const;  // CCW
    bool contains(Point2 p, double tol = 1e-9) const;

    TiltedRect translated(Point2 d) const;
    TiltedRect scaled(double s) const;  // about the origin; s > 0
    TiltedRect transformed(const Similarity& sim) const;

  private:
    Point2 center_;
    double long_half_;
    double short_half_;
    double angle_;
};

// Extends each side of the rectangle by `pad` beyond the original on all
// ends; pad = sqrt(2) realizes the enlarged rectangle of the embedding
// argument (area ratio at most 9 + 4*sqrt(2) once l(R) >= 1).
TiltedRect enlarge_rect(const TiltedRect& r, double pad);

// Convex polygon as a CCW vertex list with strictly positive area and no
// three consecutive collinear vertices. Construction cleans duplicate and
// collinear vertices and normalizes orientation.
class ConvexPolygon {
  public:
    static ConvexPolygon make(std::vector<Point2> vertices);
    // Non-throwing variant used by clipping: nullopt on degenerate input.
    static std::optional<ConvexPolygon> try_make(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    double min_x() const;
    double max_x() const;
    double min_y() const;
    double max_y() const;

    bool contains(Point2 p, double tol = 1e-9) const;

    ConvexPolygon translated(Point2 d) const;
    ConvexPolygon scaled(double s) const;
    ConvexPolygon transformed(const Similarity& sim) const;

  private:
    explicit ConvexPolygon(std::vector<Point2> v) : verts_(std::move(v)) {}
    std::vector<Point2> verts_;
};

struct PolygonFamily {
    std::vector<ConvexPolygon> members;  // non-empty
};

// Shoelace area; throws on degenerate input (the polygon type already
// guarantees positivity, this is the standalone entry point).
double area(const ConvexPolygon& p);

// Intersection of two convex polygons (Sutherland–Hodgman against q's
// half-planes). Empty intersection is a value, not an error.
std::optional<ConvexPolygon> clip(const ConvexPolygon& p, const ConvexPolygon& q);

// Exact area of the set union by a vertical slab sweep: breakpoints at all
// vertex x's and all pairwise edge-intersection x's; inside a sub-slab every
// member's vertical section is one interval with linearly varying endpoints,
// so the union length is linear and the trapezoid rule per slab is exact.
double union_area(const PolygonFamily& f);

// Scale about the origin (s > 0), then translate.
ConvexPolygon transform(const ConvexPolygon& p, Point2 translation, double scale);
TiltedRect transform(const TiltedRect& r, Point2 translation, double scale);

ConvexPolygon rect_to_polygon(const TiltedRect& r);

// Similarity mapping (apex, near, far) onto the normal position: apex to
// (1,0), base onto the y-axis with the foot of the apex perpendicular at the
// origin and both base points at nonnegative y. May include a reflection.
// Returns the map together with the resulting (b, c) = (far, near) offsets.
struct TriangleNormalForm {
    Similarity to_normal;
    double b = 0;  // offset of the far base endpoint
    double c = 0;  // offset of the near base endpoint
};
TriangleNormalForm normalize_triangle(Point2 apex, Point2 base1, Point2 base2);

}  // namespace perron
