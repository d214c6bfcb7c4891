#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perron/geometry.hpp"
#include "perron/lattice.hpp"
#include "perron/perron_tree.hpp"
#include "perron/util.hpp"

namespace perron {

// Finitely supported real function on Z^2: dense values over a window,
// zero outside.
struct GridFunction {
    IBox window;
    std::vector<double> values;  // row-major: (y - y0) * width + (x - x0)

    static GridFunction zeros(IBox w);
    static GridFunction indicator(const LatticeSet& e);

    double at(IVec p) const {
        if (!window.contains(p)) return 0.0;
        return values[std::size_t(p.y - window.y0) * std::size_t(window.width()) +
                      std::size_t(p.x - window.x0)];
    }
    double& ref(IVec p);
    double lp_norm_pow(double p) const;  // sum |v|^p
};

// Lattice offsets of a rectangle containing the origin, cached as one
// closed interval per row (dense over the row range, possibly empty rows).
struct RectOffsets {
    int j0 = 0;                      // first row
    std::vector<RowInterval> rows;   // rows[j - j0], absolute offsets
    std::int64_t m = 0;              // total number of offsets
    IBox bbox;

    RowInterval row(int j) const { return rows[std::size_t(j - j0)]; }
    int j_last() const { return j0 + int(rows.size()) - 1; }
};

RectOffsets make_offsets(const TiltedRect& r);

// The averaging process: rectangles containing (0,0), with cached offsets.
class RectFamily {
  public:
    explicit RectFamily(std::vector<TiltedRect> rects);

    const std::vector<TiltedRect>& rects() const { return rects_; }
    const std::vector<RectOffsets>& offsets() const { return offsets_; }
    std::size_t size() const { return rects_.size(); }

  private:
    std::vector<TiltedRect> rects_;
    std::vector<RectOffsets> offsets_;
};

// Arithmetic mean of phi over the translated lattice set of r; values
// outside the window read as 0. Summation is row-major over the cached
// offsets so parallel and serial evaluations agree exactly.
double average(const GridFunction& phi, const RectOffsets& off, IVec at);
double average(const GridFunction& phi, const TiltedRect& r, IVec at);

// Pointwise max over the family of average(|phi|, r, .) on eval_window.
// A finite truncation of the maximal operator; boundedness questions reduce
// to truncations and divergence experiments only use finite blocks.
GridFunction maximal(const GridFunction& phi, const RectFamily& fam, IBox eval_window);

// #{p in window : g(p) >= lambda}; closed inequality.
std::int64_t superlevel_count(const GridFunction& g, double lambda);

// Evaluation hull: every point outside it has maximal(...) = 0.
IBox eval_hull(IBox support, const RectFamily& fam);

// ---- indicator fast path ----------------------------------------------
// For indicator inputs each average is an integer count divided by m, so
// counting via per-row prefix sums reproduces the naive operator bit for
// bit while scaling to millions of grid points.

class IndicatorField {
  public:
    explicit IndicatorField(const std::vector<RowInterval>& rows);

    const IBox& box() const { return box_; }
    std::int64_t count() const { return count_; }

    // # set cells in row y with x in [xa, xb] (absolute coordinates).
    std::int64_t row_sum(int y, int xa, int xb) const {
        if (y < box_.y0 || y > box_.y1) return 0;
        int lo = std::clamp(xa - box_.x0, 0, w_);
        int hi = std::clamp(xb - box_.x0 + 1, 0, w_);
        if (hi <= lo) return 0;
        const std::int32_t* base = pre_.data() + std::size_t(y - box_.y0) * std::size_t(w_ + 1);
        return base[hi] - base[lo];
    }
    bool test(IVec p) const { return row_sum(p.y, p.x, p.x) > 0; }

  private:
    IBox box_;
    int w_ = 0;
    std::vector<std::int32_t> pre_;
    std::int64_t count_ = 0;
};

// #((at + R) ∩ E) from cached row intervals.
std::int64_t count_hits(const IndicatorField& e, const RectOffsets& off, IVec at);

// max over the family of count/m at one point; equals maximal(indicator) there.
double max_indicator_average(const IndicatorField& e, const std::vector<RectOffsets>& offs,
                             IVec at);

// #{y : max_k (#((y + R_k) ∩ E)) / m_k >= lambda} over all of Z^2
// (everything outside the hull of the candidate boxes is zero). Parallel,
// deterministic.
std::int64_t superlevel_count_indicator(const IndicatorField& e,
                                        const std::vector<RectOffsets>& offs, double lambda);

// ---- measurements -------------------------------------------------------

struct TauberianResult {
    std::int64_t superlevel = 0;
    std::int64_t e_count = 0;
    double ratio = 0;
};

// Empirical Tauberian constant witness: #{A* chi_E >= lambda} / #E.
TauberianResult tauberian_ratio(const LatticeSet& e, const RectFamily& fam, double lambda);

// Empirical weak-(p,p) constant: lambda^p * #{A* phi >= lambda} / ||phi||_p^p.
double weak_p_witness(const GridFunction& phi, const RectFamily& fam, double lambda, double p);

struct WeakWitnessResult {
    double witness = 0;
    std::int64_t superlevel = 0;
};
WeakWitnessResult weak_p_witness_indicator(const LatticeSet& e, const RectFamily& fam,
                                           double lambda, double p);

// min over y in (delta V^n ∩ Z^2) of max over k of the average of
// chi_{delta K^n} over y + delta P_k. Requires block.delta > 0.
struct T0Result {
    double t0 = 0;
    std::int64_t v_count = 0;  // #(delta V^n ∩ Z^2)
    std::int64_t e_count = 0;  // #(delta K^n ∩ Z^2)
};
T0Result measure_t0(const PerronBlock& block);

// Family and indicator pieces of a block at its selected scale.
struct BlockOperator {
    std::vector<RectOffsets> rect_offsets;  // delta * P_k
    IndicatorField e_field;                 // delta K^n ∩ Z^2
};
BlockOperator block_operator(const PerronBlock& block);

// Tauberian witness of a block operator: #{A* chi_E >= lambda} / #E with
// E = delta K^n ∩ Z^2 and the family {delta P_k}.
TauberianResult block_tauberian_ratio(const BlockOperator& op, double lambda);

}  // namespace perron
