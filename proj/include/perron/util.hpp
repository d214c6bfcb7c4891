#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace perron {

// Integer lattice point.
struct IVec {
    int x = 0;
    int y = 0;
    friend bool operator==(const IVec&, const IVec&) = default;
    friend bool operator<(const IVec& a, const IVec& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// Closed integer box [x0,x1] x [y0,y1]; empty when x0 > x1 or y0 > y1.
struct IBox {
    int x0 = 0;
    int y0 = 0;
    int x1 = -1;
    int y1 = -1;

    bool empty() const { return x0 > x1 || y0 > y1; }
    std::int64_t width() const { return empty() ? 0 : std::int64_t(x1) - x0 + 1; }
    std::int64_t height() const { return empty() ? 0 : std::int64_t(y1) - y0 + 1; }
    std::int64_t cells() const { return width() * height(); }
    bool contains(IVec p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    IBox merged(const IBox& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        return {std::min(x0, o.x0), std::min(y0, o.y0),
                std::max(x1, o.x1), std::max(y1, o.y1)};
    }
    IBox padded(int p) const {
        if (empty()) return *this;
        return {x0 - p, y0 - p, x1 + p, y1 + p};
    }
};

inline double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;  // guards against floor rounding at negative epsilons
    return f;
}

// Deterministic RNG wrapper: identical streams on every platform
// (std::uniform_real_distribution is not portable across stdlibs).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

// Worker count: min(hardware, PERRON_LAB_THREADS) with 0 = auto.
int worker_count();

// Static row partitioning; fn(begin, end) runs on [begin, end). Results must not
// depend on the partition (callers use order-independent reductions).
void parallel_chunks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace perron
