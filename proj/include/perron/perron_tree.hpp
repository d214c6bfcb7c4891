#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perron/directions.hpp"
#include "perron/geometry.hpp"
#include "perron/triangle_cover.hpp"

namespace perron {

enum class TranslationMethod {
    kPairwiseBisection,  // recursive pair merging at overlap height fraction h
    kCoordinateSearch,   // bisection seed + cyclic golden-section refinement
};

// Dyadic block of triangles Delta_k, k = 2^n .. 2^(n+1)-1, with vertices
// A = (0,1), B_{k-1} = (u_{k-1}, 0), B_k = (u_k, 0), their horizontal
// translations tau_k, the achieved compression epsilon, the per-triangle
// trapezia V_k and rectangles P_k, and the lattice scale delta once selected.
struct PerronBlock {
    int n = 0;
    int k_first = 1;                      // 2^n
    std::vector<ConvexPolygon> triangles; // untranslated Delta_k
    std::vector<double> taus;             // tau of the first triangle is 0
    double epsilon = 1.0;                 // |∪ tau_k Delta_k| / |∪ Delta_k|
    double union_area_original = 0.0;
    double union_area_translated = 0.0;
    std::vector<ConvexPolygon> trapezia;  // V_k, untranslated, original coords
    std::vector<TiltedRect> rects;        // P_k, centered at the origin
    std::vector<double> alphas;           // |AB_k| / |B_{k-1}B_k| per triangle
    std::vector<Construction1> normals;   // per-triangle section-5.1 normal form
    double delta = 0.0;                   // 0 until selected
    double trapezia_area_ratio = 0.0;     // |∪ tau_k V_k| / |∪ Delta_k|, measured

    std::vector<ConvexPolygon> translated_triangles() const;
    std::vector<ConvexPolygon> translated_trapezia() const;
};

// The 2^n triangles of block n; requires u up to index 2^(n+1)-1.
std::vector<ConvexPolygon> build_triangles(const DirectionSet& d, int n);

struct TranslationResult {
    std::vector<double> taus;
    double epsilon = 1.0;
    double union_original = 0.0;
    double union_translated = 0.0;
};

// Finds horizontal translations compressing the union area. The classical
// recursive pairwise scheme slides the right member of each adjacent pair
// left until the two overlap up to height fraction h, then treats the merged
// pair as one unit; coordinate search refines each tau by a scan plus
// golden-section descent until the relative improvement drops below 1e-4.
// The achieved epsilon is measured, never assumed.
TranslationResult optimize_translations(const std::vector<ConvexPolygon>& triangles,
                                        TranslationMethod method, double h = 0.5);

// Builds the full block: triangles, translations, per-triangle V_k / P_k via
// the similarity to the section-5.1 normal position. Requires a positive
// condition-(i) constant on the needed index range.
PerronBlock assemble_block(const DirectionSet& d, int n, TranslationMethod method,
                           double h = 0.5);

// Smallest sampled delta satisfying
//  (a) #(dK^n ∩ Z²) <= 3 eps_n #(d ∪Delta_k ∩ Z²)   (3 = (3/2) / (1/2)),
//  (b) the per-triangle discrete trapezium criterion at d,
//  (c) #(dV^n ∩ Z²) >= (1/2)(1/9) #(d ∪Delta_k ∩ Z²).
struct DeltaSelection {
    std::optional<double> delta;
    struct Probe {
        double delta;
        bool a, b, c;
        double count_ratio;     // #(dK)/#(d Union)
        double v_ratio;         // #(dV)/#(d Union)
    };
    std::vector<Probe> trace;
};
DeltaSelection select_delta(const PerronBlock& block, const std::vector<double>& delta_grid,
                            std::uint64_t seed = 7);

// SVG figure of a block: original triangles outlined, translated triangles
// filled, translated trapezia hatched. Fixed 1000x1000 view box with the
// world-to-view affine recorded in the file metadata.
std::string block_svg(const PerronBlock& block);

}  // namespace perron
