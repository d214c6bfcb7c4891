#pragma once

#include <optional>
#include <string>
#include <vector>

namespace perron {

// Increasing slope-generating sequence {u_k} with u_0 = 0 and the derived
// slope set {1/u_k} for k >= 1.
class DirectionSet {
  public:
    // u must be strictly increasing with u.front() == 0.
    static DirectionSet from_u(std::vector<double> u, std::string label);
    // slopes must be strictly decreasing positives; u_k = 1/slope_k.
    static DirectionSet from_slopes(const std::vector<double>& slopes, std::string label);

    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::string& label() const { return label_; }
    // Largest k such that u_k is available.
    int max_index() const { return int(u_.size()) - 1; }

  private:
    std::vector<double> u_;       // u_[k] = u_k, u_[0] = 0
    std::vector<double> slopes_;  // slopes_[k-1] = 1/u_k
    std::string label_;
};

// Slopes {lambda, lambda^2, ..., lambda^count}; lacunary with ratio lambda.
DirectionSet gen_lacunary(double lambda, int count);

// u_k = k^s for k = 1..count.
DirectionSet gen_power(double s, int count);

struct PerronFactorResult {
    double value = 0;
    int arg_n = 0;
    int arg_l = 0;
};

// Truncated Perron factor: sup over 1 <= l <= n with n + 2l <= max_index of
//   (u_{n+2l}-u_{n+l})/(u_{n+l}-u_n) + (u_{n+l}-u_n)/(u_{n+2l}-u_{n+l}),
// reported together with its argmax so growth vs. saturation stays visible.
PerronFactorResult perron_factor(const DirectionSet& d, int max_index);

// Largest admissible c on the truncation: min over 1 <= k <= max_index of
// (1 + u_{k-1}^2) / (u_k - u_{k-1})^2.
double condition_i_constant(const DirectionSet& d, int max_index);

struct LacunarityResult {
    bool lacunary = false;
    double witness = 0;  // max consecutive ratio (0 for a single element)
};

// Any finite decreasing positive sequence has max-ratio < 1, so plain
// lacunarity is undecidable on truncations; the threshold makes the policy
// explicit. Default threshold accepts every ratio strictly below 1;
// experiments classify with kLacunaryPolicyThreshold.
inline constexpr double kLacunaryPolicyThreshold = 0.9;
LacunarityResult is_lacunary(const std::vector<double>& slopes,
                             double threshold = 1.0 - 1e-9);

struct DirectionDiagnostics {
    double perron_factor_truncated = 0;
    int perron_arg_n = 0;
    int perron_arg_l = 0;
    double condition_i_constant = 0;
    std::optional<double> lacunary_ratio;  // on slopes; none for a single slope
};

DirectionDiagnostics diagnostics(const DirectionSet& d, int max_index);

// Saturation heuristic used by the experiment guards: the truncated Perron
// factor is treated as bounded when it is small and stops growing between
// max_index/2 and max_index.
bool perron_factor_bounded(const DirectionSet& d, int max_index);

}  // namespace perron
