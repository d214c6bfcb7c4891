#include "perron/directions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace perron {

DirectionSet DirectionSet::from_u(std::vector<double> u, std::string label) {
    if (u.empty() || u.front() != 0.0)
        throw std::invalid_argument("DirectionSet: u must start with u_0 = 0");
    for (std::size_t k = 1; k < u.size(); ++k) {
        if (!(u[k] > u[k - 1]) || !std::isfinite(u[k]))
            throw std::invalid_argument("DirectionSet: u must be strictly increasing and finite");
    }
    DirectionSet d;
    d.u_ = std::move(u);
    d.label_ = std::move(label);
    d.slopes_.reserve(d.u_.size() - 1);
    for (std::size_t k = 1; k < d.u_.size(); ++k) d.slopes_.push_back(1.0 / d.u_[k]);
    return d;
}

DirectionSet DirectionSet::from_slopes(const std::vector<double>& slopes, std::string label) {
    if (slopes.empty()) throw std::invalid_argument("DirectionSet: empty slope list");
    std::vector<double> u;
    u.reserve(slopes.size() + 1);
    u.push_back(0.0);
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (!(slopes[i] > 0)) throw std::invalid_argument("DirectionSet: slopes must be positive");
        if (i > 0 && !(slopes[i] < slopes[i - 1]))
            throw std::invalid_argument("DirectionSet: slopes must be strictly decreasing");
        u.push_back(1.0 / slopes[i]);
    }
    return from_u(std::move(u), std::move(label));
}

DirectionSet gen_lacunary(double lambda, int count) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("gen_lacunary: lambda must be in (0,1)");
    if (count < 1) throw std::invalid_argument("gen_lacunary: count must be >= 1");
    std::vector<double> slopes(count);
    double v = 1.0;
    for (int k = 0; k < count; ++k) {
        v *= lambda;
        slopes[k] = v;
    }
    return DirectionSet::from_slopes(slopes, "lacunary(" + std::to_string(lambda) + ")");
}

DirectionSet gen_power(double s, int count) {
    if (!(s > 0)) throw std::invalid_argument("gen_power: s must be positive");
    if (count < 1) throw std::invalid_argument("gen_power: count must be >= 1");
    std::vector<double> u(count + 1);
    u[0] = 0.0;
    for (int k = 1; k <= count; ++k) u[k] = std::pow(double(k), s);
    return DirectionSet::from_u(std::move(u), "power(" + std::to_string(s) + ")");
}

PerronFactorResult perron_factor(const DirectionSet& d, int max_index) {
    if (max_index < 3)
        throw std::invalid_argument("perron_factor: max_index must be >= 3");
    if (d.max_index() < max_index)
        throw std::invalid_argument("perron_factor: direction set too short; need u up to index " +
                                    std::to_string(max_index));
    const std::vector<double>& u = d.u();
    PerronFactorResult best;
    for (int n = 1; n + 2 <= max_index; ++n) {
        for (int l = 1; l <= n && n + 2 * l <= max_index; ++l) {
            double a = u[n + 2 * l] - u[n + l];
            double b = u[n + l] - u[n];
            double v = a / b + b / a;
            if (v > best.value) {
                best.value = v;
                best.arg_n = n;
                best.arg_l = l;
            }
        }
    }
    return best;
}

double condition_i_constant(const DirectionSet& d, int max_index) {
    if (max_index < 1) throw std::invalid_argument("condition_i_constant: max_index must be >= 1");
    if (d.max_index() < max_index)
        throw std::invalid_argument("condition_i_constant: direction set too short");
    const std::vector<double>& u = d.u();
    double m = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_index; ++k) {
        double gap = u[k] - u[k - 1];
        m = std::min(m, (1.0 + u[k - 1] * u[k - 1]) / (gap * gap));
    }
    return m;
}

LacunarityResult is_lacunary(const std::vector<double>& slopes, double threshold) {
    if (slopes.empty()) throw std::invalid_argument("is_lacunary: empty list");
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (!(slopes[i] > 0)) throw std::invalid_argument("is_lacunary: slopes must be positive");
        if (i > 0 && !(slopes[i] < slopes[i - 1]))
            throw std::invalid_argument("is_lacunary: slopes must be strictly decreasing");
    }
    if (slopes.size() == 1) return {true, 0.0};  // vacuous
    double w = 0;
    for (std::size_t i = 1; i < slopes.size(); ++i) w = std::max(w, slopes[i] / slopes[i - 1]);
    return {w <= threshold, w};
}

DirectionDiagnostics diagnostics(const DirectionSet& d, int max_index) {
    DirectionDiagnostics out;
    PerronFactorResult pf = perron_factor(d, max_index);
    out.perron_factor_truncated = pf.value;
    out.perron_arg_n = pf.arg_n;
    out.perron_arg_l = pf.arg_l;
    out.condition_i_constant = condition_i_constant(d, std::min(max_index, d.max_index()));
    const std::vector<double>& s = d.slopes();
    if (s.size() >= 2) {
        double w = 0;
        for (std::size_t i = 1; i < s.size(); ++i) w = std::max(w, s[i] / s[i - 1]);
        out.lacunary_ratio = w;
    }
    return out;
}

bool perron_factor_bounded(const DirectionSet& d, int max_index) {
    if (max_index < 6 || d.max_index() < max_index) return false;
    double half = perron_factor(d, max_index / 2).value;
    double full = perron_factor(d, max_index).value;
    return full <= 10.0 && (full - half) <= 0.25 * half;
}

}  // namespace perron
