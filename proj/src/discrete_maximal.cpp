#include "perron/discrete_maximal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace perron {

GridFunction GridFunction::zeros(IBox w) {
    if (w.empty()) throw std::invalid_argument("GridFunction: empty window");
    GridFunction g;
    g.window = w;
    g.values.assign(std::size_t(w.cells()), 0.0);
    return g;
}

GridFunction GridFunction::indicator(const LatticeSet& e) {
    if (e.points.empty()) throw std::invalid_argument("GridFunction::indicator: empty set");
    GridFunction g = zeros(e.window);
    for (const IVec& p : e.points) g.ref(p) = 1.0;
    return g;
}

double& GridFunction::ref(IVec p) {
    if (!window.contains(p)) throw std::out_of_range("GridFunction::ref: outside window");
    return values[std::size_t(p.y - window.y0) * std::size_t(window.width()) +
                  std::size_t(p.x - window.x0)];
}

double GridFunction::lp_norm_pow(double p) const {
    double s = 0;
    for (double v : values) {
        double a = std::abs(v);
        if (a != 0) s += std::pow(a, p);
    }
    return s;
}

RectOffsets make_offsets(const TiltedRect& r) {
    std::vector<RowInterval> sparse = row_intervals(r);
    if (sparse.empty()) throw std::invalid_argument("make_offsets: rectangle has no lattice points");
    RectOffsets off;
    off.j0 = sparse.front().y;
    int j1 = sparse.back().y;
    off.rows.assign(std::size_t(j1 - off.j0 + 1), RowInterval{0, 0, -1});
    for (const RowInterval& iv : sparse) {
        off.rows[std::size_t(iv.y - off.j0)] = iv;
        off.m += iv.length();
        off.bbox = off.bbox.merged(IBox{iv.xlo, iv.y, iv.xhi, iv.y});
    }
    return off;
}

RectFamily::RectFamily(std::vector<TiltedRect> rects) : rects_(std::move(rects)) {
    if (rects_.empty()) throw std::invalid_argument("RectFamily: empty family");
    offsets_.reserve(rects_.size());
    for (const TiltedRect& r : rects_) {
        if (!r.contains({0, 0}))
            throw std::invalid_argument("RectFamily: every rectangle must contain the origin");
        offsets_.push_back(make_offsets(r));
    }
}

double average(const GridFunction& phi, const RectOffsets& off, IVec at) {
    double s = 0;
    for (const RowInterval& iv : off.rows) {
        if (iv.empty()) continue;
        for (int x = iv.xlo; x <= iv.xhi; ++x) s += phi.at({at.x + x, at.y + iv.y});
    }
    return s / double(off.m);
}

double average(const GridFunction& phi, const TiltedRect& r, IVec at) {
    return average(phi, make_offsets(r), at);
}

GridFunction maximal(const GridFunction& phi, const RectFamily& fam, IBox eval_window) {
    GridFunction abs_phi = phi;
    for (double& v : abs_phi.values) v = std::abs(v);
    GridFunction out = GridFunction::zeros(eval_window);
    const std::int64_t w = eval_window.width();
    parallel_chunks(eval_window.height(), [&](std::int64_t r0, std::int64_t r1) {
        for (std::int64_t r = r0; r < r1; ++r) {
            int y = eval_window.y0 + int(r);
            for (int x = eval_window.x0; x <= eval_window.x1; ++x) {
                double best = 0;
                for (const RectOffsets& off : fam.offsets())
                    best = std::max(best, average(abs_phi, off, {x, y}));
                out.values[std::size_t(r) * std::size_t(w) + std::size_t(x - eval_window.x0)] =
                    best;
            }
        }
    });
    return out;
}

std::int64_t superlevel_count(const GridFunction& g, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("superlevel_count: lambda must be positive");
    std::int64_t n = 0;
    for (double v : g.values)
        if (v >= lambda) ++n;
    return n;
}

IBox eval_hull(IBox support, const RectFamily& fam) {
    IBox hull;
    for (const RectOffsets& off : fam.offsets()) {
        IBox b{support.x0 - off.bbox.x1, support.y0 - off.bbox.y1, support.x1 - off.bbox.x0,
               support.y1 - off.bbox.y0};
        hull = hull.merged(b);
    }
    return hull.padded(1);
}

IndicatorField::IndicatorField(const std::vector<RowInterval>& rows) {
    if (rows.empty()) throw std::invalid_argument("IndicatorField: empty set");
    for (const RowInterval& r : rows) {
        if (r.empty()) continue;
        box_ = box_.merged(IBox{r.xlo, r.y, r.xhi, r.y});
    }
    if (box_.empty()) throw std::invalid_argument("IndicatorField: empty set");
    w_ = int(box_.width());
    pre_.assign(std::size_t(box_.height()) * std::size_t(w_ + 1), 0);
    std::vector<std::uint8_t> rowbuf(std::size_t(w_), 0);
    // Group intervals per row, accumulate prefix sums.
    std::vector<std::vector<std::pair<int, int>>> per_row(std::size_t(box_.height()));
    for (const RowInterval& r : rows) {
        if (r.empty()) continue;
        per_row[std::size_t(r.y - box_.y0)].push_back({r.xlo - box_.x0, r.xhi - box_.x0});
    }
    for (std::int64_t ry = 0; ry < box_.height(); ++ry) {
        std::fill(rowbuf.begin(), rowbuf.end(), 0);
        for (auto [a, b] : per_row[std::size_t(ry)])
            for (int x = a; x <= b; ++x) rowbuf[std::size_t(x)] = 1;
        std::int32_t* base = pre_.data() + std::size_t(ry) * std::size_t(w_ + 1);
        std::int32_t acc = 0;
        base[0] = 0;
        for (int x = 0; x < w_; ++x) {
            acc += rowbuf[std::size_t(x)];
            base[x + 1] = acc;
        }
        count_ += acc;
    }
}

std::int64_t count_hits(const IndicatorField& e, const RectOffsets& off, IVec at) {
    int jlo = std::max(off.j0, e.box().y0 - at.y);
    int jhi = std::min(off.j_last(), e.box().y1 - at.y);
    std::int64_t s = 0;
    for (int j = jlo; j <= jhi; ++j) {
        RowInterval iv = off.row(j);
        if (iv.empty()) continue;
        s += e.row_sum(at.y + j, at.x + iv.xlo, at.x + iv.xhi);
    }
    return s;
}

double max_indicator_average(const IndicatorField& e, const std::vector<RectOffsets>& offs,
                             IVec at) {
    double best = 0;
    for (const RectOffsets& off : offs)
        best = std::max(best, double(count_hits(e, off, at)) / double(off.m));
    return best;
}

namespace {

struct MarkGrid {
    IBox box;
    std::int64_t stride_words = 0;
    std::vector<std::uint64_t> words;

    explicit MarkGrid(IBox b) : box(b) {
        stride_words = (b.width() + 63) / 64;  // row-aligned: no word sharing across rows
        words.assign(std::size_t(stride_words * b.height()), 0);
    }
    bool get(int x, int y) const {
        std::int64_t c = x - box.x0;
        std::int64_t idx = (y - box.y0) * stride_words + (c >> 6);
        return (words[std::size_t(idx)] >> (c & 63)) & 1;
    }
    void set(int x, int y) {
        std::int64_t c = x - box.x0;
        std::int64_t idx = (y - box.y0) * stride_words + (c >> 6);
        words[std::size_t(idx)] |= std::uint64_t(1) << (c & 63);
    }
    std::int64_t popcount() const {
        std::int64_t n = 0;
        for (std::uint64_t w : words) n += std::popcount(w);
        return n;
    }
};

IBox candidate_box(const IndicatorField& e, const RectOffsets& off) {
    return IBox{e.box().x0 - off.bbox.x1, e.box().y0 - off.bbox.y1, e.box().x1 - off.bbox.x0,
                e.box().y1 - off.bbox.y0};
}

}  // namespace

std::int64_t superlevel_count_indicator(const IndicatorField& e,
                                        const std::vector<RectOffsets>& offs, double lambda) {
    if (!(lambda > 0))
        throw std::invalid_argument("superlevel_count_indicator: lambda must be positive");
    IBox hull;
    for (const RectOffsets& off : offs) hull = hull.merged(candidate_box(e, off));
    if (hull.empty()) return 0;
    MarkGrid marks(hull);

    for (const RectOffsets& off : offs) {
        IBox cb = candidate_box(e, off);
        if (cb.empty()) continue;
        const double m = double(off.m);
        const std::int64_t bw = off.bbox.width();
        parallel_chunks(cb.height(), [&](std::int64_t r0, std::int64_t r1) {
            for (std::int64_t r = r0; r < r1; ++r) {
                int y = cb.y0 + int(r);
                // Rows of E reachable from this y, for the bbox prebound.
                std::int64_t rows_overlap =
                    std::min(off.bbox.y1, e.box().y1 - y) - std::max(off.bbox.y0, e.box().y0 - y) + 1;
                if (rows_overlap <= 0) continue;
                for (int x = cb.x0; x <= cb.x1; ++x) {
                    if (marks.get(x, y)) continue;
                    std::int64_t cols_overlap = std::min(off.bbox.x1, e.box().x1 - x) -
                                                std::max(off.bbox.x0, e.box().x0 - x) + 1;
                    if (cols_overlap <= 0) continue;
                    std::int64_t ub = rows_overlap * std::min(cols_overlap, bw);
                    if (double(ub) / m < lambda) continue;
                    std::int64_t hits = count_hits(e, off, {x, y});
                    if (double(hits) / m >= lambda) marks.set(x, y);
                }
            }
        });
    }
    return marks.popcount();
}

TauberianResult tauberian_ratio(const LatticeSet& e, const RectFamily& fam, double lambda) {
    if (e.points.empty()) throw std::invalid_argument("tauberian_ratio: E must be non-empty");
    if (!(lambda > 0)) throw std::invalid_argument("tauberian_ratio: lambda must be positive");
    std::vector<RowInterval> rows;
    rows.reserve(e.points.size());
    for (const IVec& p : e.points) rows.push_back({p.y, p.x, p.x});
    IndicatorField field(rows);
    TauberianResult out;
    out.e_count = e.count();
    out.superlevel = superlevel_count_indicator(field, fam.offsets(), lambda);
    out.ratio = double(out.superlevel) / double(out.e_count);
    return out;
}

double weak_p_witness(const GridFunction& phi, const RectFamily& fam, double lambda, double p) {
    if (!(lambda > 0)) throw std::invalid_argument("weak_p_witness: lambda must be positive");
    if (!(p >= 1)) throw std::invalid_argument("weak_p_witness: p must be >= 1");
    double norm_pow = phi.lp_norm_pow(p);
    if (norm_pow == 0) throw std::invalid_argument("weak_p_witness: phi must be nonzero");
    GridFunction m = maximal(phi, fam, eval_hull(phi.window, fam));
    std::int64_t count = superlevel_count(m, lambda);
    return std::pow(lambda, p) * double(count) / norm_pow;
}

WeakWitnessResult weak_p_witness_indicator(const LatticeSet& e, const RectFamily& fam,
                                           double lambda, double p) {
    if (e.points.empty()) throw std::invalid_argument("weak_p_witness_indicator: empty set");
    if (!(lambda > 0) || !(p >= 1))
        throw std::invalid_argument("weak_p_witness_indicator: bad lambda or p");
    std::vector<RowInterval> rows;
    rows.reserve(e.points.size());
    for (const IVec& q : e.points) rows.push_back({q.y, q.x, q.x});
    IndicatorField field(rows);
    WeakWitnessResult out;
    out.superlevel = superlevel_count_indicator(field, fam.offsets(), lambda);
    out.witness = std::pow(lambda, p) * double(out.superlevel) / double(e.count());
    return out;
}

BlockOperator block_operator(const PerronBlock& block) {
    if (!(block.delta > 0)) throw std::invalid_argument("block_operator: delta not selected");
    std::vector<ConvexPolygon> scaled_k;
    for (const ConvexPolygon& p : block.translated_triangles())
        scaled_k.push_back(p.scaled(block.delta));
    std::vector<RowInterval> e_rows = row_intervals_union(PolygonFamily{scaled_k});
    std::vector<RectOffsets> offs;
    offs.reserve(block.rects.size());
    for (const TiltedRect& r : block.rects) offs.push_back(make_offsets(r.scaled(block.delta)));
    return BlockOperator{std::move(offs), IndicatorField(e_rows)};
}

TauberianResult block_tauberian_ratio(const BlockOperator& op, double lambda) {
    TauberianResult out;
    out.e_count = op.e_field.count();
    out.superlevel = superlevel_count_indicator(op.e_field, op.rect_offsets, lambda);
    out.ratio = double(out.superlevel) / double(out.e_count);
    return out;
}

T0Result measure_t0(const PerronBlock& block) {
    BlockOperator op = block_operator(block);
    std::vector<ConvexPolygon> scaled_v;
    for (const ConvexPolygon& p : block.translated_trapezia())
        scaled_v.push_back(p.scaled(block.delta));
    std::vector<RowInterval> v_rows = row_intervals_union(PolygonFamily{scaled_v});
    std::int64_t v_count = 0;
    for (const RowInterval& r : v_rows) v_count += r.length();
    if (v_count == 0)
        throw std::invalid_argument("measure_t0: delta V^n contains no lattice point; delta too small");

    std::vector<double> row_min(v_rows.size(), std::numeric_limits<double>::infinity());
    parallel_chunks(std::int64_t(v_rows.size()), [&](std::int64_t r0, std::int64_t r1) {
        for (std::int64_t i = r0; i < r1; ++i) {
            const RowInterval& iv = v_rows[std::size_t(i)];
            double mn = std::numeric_limits<double>::infinity();
            for (int x = iv.xlo; x <= iv.xhi; ++x)
                mn = std::min(mn, max_indicator_average(op.e_field, op.rect_offsets, {x, iv.y}));
            row_min[std::size_t(i)] = mn;
        }
    });
    double t0 = std::numeric_limits<double>::infinity();
    for (double v : row_min) t0 = std::min(t0, v);
    return {t0, v_count, op.e_field.count()};
}

}  // namespace perron
