#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perron/discrete_maximal.hpp"
#include "perron/geometry.hpp"

namespace perron {

// Trigonometric polynomial a0 + sum_m (a_m cos(2 pi m x) + b_m sin(2 pi m x)).
struct TrigPoly {
    double a0 = 0;
    std::vector<double> a;  // cosine coefficients, degree 1..
    std::vector<double> b;  // sine coefficients

    double operator()(double x) const;
    double sup_bound() const;  // |a0| + sum |a_m| + |b_m| >= ||.||_inf
};

// Two commuting irrational circle translations on X = [0,1):
//   S x = x + alpha (mod 1),  T x = x + beta (mod 1).
// Each is ergodic; rational independence of 1, alpha, beta is screened by a
// continued-fraction heuristic (near-rationals with denominator < 1e6 are
// rejected).
class TorusSystem {
  public:
    TorusSystem();  // alpha = sqrt(2)-1, beta = sqrt(3)-1
    TorusSystem(double alpha, double beta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double orbit(double x0, std::int64_t i, std::int64_t j) const {
        return frac01(x0 + double(i) * alpha_ + double(j) * beta_);
    }

  private:
    double alpha_;
    double beta_;
};

// Observable with an analytically known integral.
struct ObservedFunction {
    enum class Kind { kTrig, kIndicator, kCoboundary };
    Kind kind = Kind::kTrig;
    TrigPoly trig;           // kTrig: the function; kCoboundary: g
    double lo = 0, hi = 0;   // kIndicator: [lo, hi) in [0,1)
    double constant = 0;     // kCoboundary: the constant c in c + g - g∘T
    double beta = 0;         // kCoboundary: the T-translation
    double exact_integral = 0;

    double operator()(double x) const;

    static ObservedFunction trig_poly(TrigPoly t);
    static ObservedFunction interval_indicator(double lo, double hi);
    // c + g - g∘T for the given system's T.
    static ObservedFunction coboundary(double c, TrigPoly g, const TorusSystem& sys);
};

// Mean of f over the orbit points x0 + i alpha + j beta for (i,j) in r ∩ Z².
double ergodic_average(const TorusSystem& sys, const ObservedFunction& f, const TiltedRect& r,
                       double x0);
double ergodic_average(const TorusSystem& sys, const ObservedFunction& f, const RectOffsets& off,
                       double x0);

// For f = g - g∘T the average telescopes over the symmetric difference of
// the lattice sets of r and r + (0,1):
//   |M f(x)| <= #(Delta_r ∩ Z²) / #(r ∩ Z²) * sup|g|.
struct CoboundaryCheck {
    double measured = 0;  // |ergodic_average(g - g∘T)|
    double bound = 0;
    std::int64_t symdiff_count = 0;
    std::int64_t rect_count = 0;
};
CoboundaryCheck coboundary_decay(const TorusSystem& sys, const TrigPoly& g, const TiltedRect& r,
                                 double x0);

// Appendix-B identity on a finite window: phi_x(k,l) = f(S^k T^l x) for
// |k|,|l| <= K, and A_n|phi_x|(k,l) = M_n|f|(S^k T^l x) whenever the rect
// offsets fit. Returns the max absolute discrepancy over all admissible
// (k,l) and all rects (exact identity; only FP noise remains).
struct TransferCheck {
    double max_abs_error = 0;
    std::int64_t points_checked = 0;
};
TransferCheck transfer_check(const TorusSystem& sys, const ObservedFunction& f,
                             const RectFamily& fam, int window_k, double x0,
                             std::optional<IBox> eval_box = std::nullopt);

}  // namespace perron
