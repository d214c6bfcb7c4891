#include "perron/ergodic_torus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace perron {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rejects values that are rationals with denominator below 1e6 (to double
// precision), via the continued fraction expansion.
bool near_rational_small_denominator(double x) {
    double v = std::abs(x);
    std::int64_t q_prev = 0, q = 1;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(v);
        double rem = v - a;
        if (a > 1e15) break;
        if (rem < 1e-12 * std::max(1.0, std::abs(a))) return q < 1000000;
        std::int64_t q_next = std::int64_t(a) * q + q_prev;
        q_prev = q;
        q = q_next;
        if (q >= 1000000) return false;
        v = 1.0 / rem;
    }
    return false;
}

}  // namespace

double TrigPoly::operator()(double x) const {
    double s = a0;
    for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * std::cos(kTwoPi * double(m + 1) * x);
    for (std::size_t m = 0; m < b.size(); ++m) s += b[m] * std::sin(kTwoPi * double(m + 1) * x);
    return s;
}

double TrigPoly::sup_bound() const {
    double s = std::abs(a0);
    for (double v : a) s += std::abs(v);
    for (double v : b) s += std::abs(v);
    return s;
}

TorusSystem::TorusSystem() : TorusSystem(std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0) {}

TorusSystem::TorusSystem(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0 && alpha < 1) || !(beta > 0 && beta < 1))
        throw std::invalid_argument("TorusSystem: translations must lie in (0,1)");
    if (near_rational_small_denominator(alpha) || near_rational_small_denominator(beta) ||
        near_rational_small_denominator(alpha / beta))
        throw std::invalid_argument(
            "TorusSystem: alpha, beta, alpha/beta must not be near-rational "
            "(continued-fraction denominator below 1e6)");
}

double ObservedFunction::operator()(double x) const {
    switch (kind) {
        case Kind::kTrig:
            return trig(x);
        case Kind::kIndicator:
            return (x >= lo && x < hi) ? 1.0 : 0.0;
        case Kind::kCoboundary:
            return constant + trig(x) - trig(frac01(x + beta));
    }
    return 0;
}

ObservedFunction ObservedFunction::trig_poly(TrigPoly t) {
    ObservedFunction f;
    f.kind = Kind::kTrig;
    f.exact_integral = t.a0;
    f.trig = std::move(t);
    return f;
}

ObservedFunction ObservedFunction::interval_indicator(double lo, double hi) {
    if (!(lo >= 0 && lo < hi && hi <= 1))
        throw std::invalid_argument("interval_indicator: need 0 <= lo < hi <= 1");
    ObservedFunction f;
    f.kind = Kind::kIndicator;
    f.lo = lo;
    f.hi = hi;
    f.exact_integral = hi - lo;
    return f;
}

ObservedFunction ObservedFunction::coboundary(double c, TrigPoly g, const TorusSystem& sys) {
    ObservedFunction f;
    f.kind = Kind::kCoboundary;
    f.constant = c;
    f.trig = std::move(g);
    f.beta = sys.beta();
    f.exact_integral = c;
    return f;
}

double ergodic_average(const TorusSystem& sys, const ObservedFunction& f, const RectOffsets& off,
                       double x0) {
    double s = 0;
    for (const RowInterval& iv : off.rows) {
        if (iv.empty()) continue;
        for (int i = iv.xlo; i <= iv.xhi; ++i) s += f(sys.orbit(x0, i, iv.y));
    }
    return s / double(off.m);
}

double ergodic_average(const TorusSystem& sys, const ObservedFunction& f, const TiltedRect& r,
                       double x0) {
    return ergodic_average(sys, f, make_offsets(r), x0);
}

CoboundaryCheck coboundary_decay(const TorusSystem& sys, const TrigPoly& g, const TiltedRect& r,
                                 double x0) {
    RectOffsets off = make_offsets(r);
    ObservedFunction f = ObservedFunction::coboundary(0.0, g, sys);
    CoboundaryCheck out;
    out.measured = std::abs(ergodic_average(sys, f, off, x0));
    out.rect_count = off.m;

    // Lattice symmetric difference of r ∩ Z² and (r + (0,1)) ∩ Z²; the latter
    // is the former shifted by (0,1).
    std::int64_t sym = 0;
    int j0 = off.j0 - 1, j1 = off.j_last() + 1;
    for (int j = j0; j <= j1; ++j) {
        bool has_a = j >= off.j0 && j <= off.j_last();
        bool has_b = j - 1 >= off.j0 && j - 1 <= off.j_last();
        RowInterval a = has_a ? off.row(j) : RowInterval{j, 0, -1};
        RowInterval b = has_b ? off.row(j - 1) : RowInterval{j, 0, -1};
        if (a.empty() && b.empty()) continue;
        if (a.empty() || b.empty()) {
            sym += a.length() + b.length();
            continue;
        }
        std::int64_t inter = std::min(a.xhi, b.xhi) - std::max(a.xlo, b.xlo) + 1;
        if (inter < 0) inter = 0;
        sym += a.length() + b.length() - 2 * inter;
    }
    out.symdiff_count = sym;
    out.bound = double(sym) / double(off.m) * g.sup_bound();
    return out;
}

TransferCheck transfer_check(const TorusSystem& sys, const ObservedFunction& f,
                             const RectFamily& fam, int window_k, double x0,
                             std::optional<IBox> eval_box) {
    if (window_k < 1) throw std::invalid_argument("transfer_check: window must be positive");
    int m = 0;
    for (const RectOffsets& off : fam.offsets()) {
        m = std::max({m, std::abs(off.bbox.x0), std::abs(off.bbox.x1), std::abs(off.bbox.y0),
                      std::abs(off.bbox.y1)});
    }
    IBox admissible{-window_k + m, -window_k + m, window_k - m, window_k - m};
    if (admissible.empty())
        throw std::invalid_argument("transfer_check: window too small for the rect offsets");
    IBox box = eval_box.value_or(admissible);
    if (box.x0 < admissible.x0 || box.x1 > admissible.x1 || box.y0 < admissible.y0 ||
        box.y1 > admissible.y1)
        throw std::invalid_argument(
            "transfer_check: eval box exceeds the admissible window [-K+m, K-m]^2");

    // phi_x as a grid sampling of the orbit.
    GridFunction phi = GridFunction::zeros({-window_k, -window_k, window_k, window_k});
    for (int l = -window_k; l <= window_k; ++l)
        for (int k = -window_k; k <= window_k; ++k) phi.ref({k, l}) = f(sys.orbit(x0, k, l));

    GridFunction abs_phi = phi;
    for (double& v : abs_phi.values) v = std::abs(v);

    ObservedFunction abs_f = f;  // |f| evaluated pointwise below
    TransferCheck out;
    for (const RectOffsets& off : fam.offsets()) {
        for (int l = box.y0; l <= box.y1; ++l) {
            for (int k = box.x0; k <= box.x1; ++k) {
                double lhs = average(abs_phi, off, {k, l});
                // M_n |f| at S^k T^l x0, summed in the same offset order.
                double s = 0;
                for (const RowInterval& iv : off.rows) {
                    if (iv.empty()) continue;
                    for (int i = iv.xlo; i <= iv.xhi; ++i)
                        s += std::abs(abs_f(sys.orbit(x0, k + i, l + iv.y)));
                }
                double rhs = s / double(off.m);
                out.max_abs_error = std::max(out.max_abs_error, std::abs(lhs - rhs));
                ++out.points_checked;
            }
        }
    }
    return out;
}

}  // namespace perron
