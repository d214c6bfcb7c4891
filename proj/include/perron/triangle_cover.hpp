#pragma once

#include <optional>
#include <vector>

#include "perron/geometry.hpp"
#include "perron/util.hpp"

namespace perron {

// Geometric construction around the triangle with apex A = (1,0) and base
// endpoints B = (0,b), C = (0,c) on the y-axis, 0 <= c < b:
//   B' = A + (3/2)(B - A),  C' = A + (3/2)(C - A),
//   Ptilde = smallest rectangle with one side on the far lateral extension
//            (A B') containing the triangle AB'C' (the side is the segment
//            AB' itself, so |Ptilde| = 2 |AB'C'| = (9/2) |ABC|),
//   P      = Ptilde recentered at the origin,
//   V      = trapezium with vertex set {B, C, C', B'}.
// For any x in V, |(x + P) ∩ ABC| >= min(alpha, 1)/72 * |P| with
// alpha = |AB| / |BC|; the bound is attained (sharp) at an extremal corner.
struct Construction1 {
    double b = 0;
    double c = 0;
    Point2 A, B, C;
    Point2 Bp, Cp;
    TiltedRect Ptilde;
    TiltedRect P;
    ConvexPolygon V;
    ConvexPolygon triangle;  // ABC
    double alpha = 0;

    double overlap_bound() const;  // min(alpha, 1)/72 * |P|
};

Construction1 build_construction1(double b, double c);

// Builds the construction for an arbitrary triangle by similarity to the
// normal position, then maps V, P, Ptilde back. The similarity may include a
// reflection; the overlap inequality is invariant under it.
struct MappedConstruction {
    Construction1 normal;      // construction in normal coordinates
    Similarity from_normal;    // normal -> original coordinates
    ConvexPolygon V;           // trapezium in original coordinates
    TiltedRect P;              // recentred rectangle in original coordinates
};
MappedConstruction build_for_triangle(Point2 apex, Point2 base_near, Point2 base_far);

struct OverlapCheck {
    double measured = 0;
    double bound = 0;
    bool pass = false;
};

// measured = |(x + P) ∩ ABC| for x in V (membership enforced).
OverlapCheck verify_overlap(const Construction1& cons, Point2 x);

// Deterministic sample of V: vertices, edge midpoints, then uniform
// rejection samples (seeded).
std::vector<Point2> sample_trapezium(const Construction1& cons, int interior, std::uint64_t seed);

// Discrete criterion at a single scale: over the given x-sample,
//   min_x #(delta((x+P) ∩ ABC) ∩ Z²) / #(delta P ∩ Z²)
// compared against the continuous bound degraded by the volume-vs-count
// envelope: (1/2) * min(alpha,1)/72 * (2/3).
struct DiscreteOverlapResult {
    double worst_ratio = 0;
    double threshold = 0;
    bool pass = false;
};
DiscreteOverlapResult discrete_overlap_at(const Construction1& cons,
                                          const std::vector<Point2>& xs, double delta);

// Smallest sampled delta from the grid at which the criterion holds; the
// sample is vertices + midpoints + 50 interior points.
struct DiscreteOverlapScale {
    std::optional<double> delta;
    double worst_ratio = 0;  // at the qualifying delta (or the last tried)
    double threshold = 0;
    std::vector<std::pair<double, double>> trace;  // (delta, worst ratio)
};
DiscreteOverlapScale discrete_overlap_scale(const Construction1& cons,
                                            const std::vector<double>& delta_grid,
                                            std::uint64_t seed = 7);

}  // namespace perron
