#ifndef QUATSUB_SAMPLING_HPP
#define QUATSUB_SAMPLING_HPP

#include "quatsub/expr.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace quatsub {

enum class SampleMode { Grid, LowDiscrepancy, Explicit };

struct SamplePlan {
    SampleMode mode = SampleMode::LowDiscrepancy;
    int count = 64;
    std::uint64_t seed = 42;
    std::vector<VectorXd> points;  // Explicit mode
};

namespace detail {

constexpr int kHaltonPrimes[16] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

inline double radical_inverse(std::uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

}  // namespace detail

// Deterministic samples in the (slightly shrunk) domain box.
inline std::vector<VectorXd> sample_points(const std::vector<Interval>& box,
                                           const SamplePlan& plan) {
    if (plan.mode == SampleMode::Explicit) return plan.points;
    const int d = static_cast<int>(box.size());
    std::vector<VectorXd> out;
    auto lerp = [&](int i, double t) {
        double lo = box[i].first, hi = box[i].second;
        // keep samples strictly interior
        return lo + (hi - lo) * (0.025 + 0.95 * t);
    };
    if (plan.mode == SampleMode::Grid) {
        int k = 1;
        while (std::pow(static_cast<double>(k + 1), d) <= static_cast<double>(plan.count)) ++k;
        std::vector<int> idx(d, 0);
        for (int c = 0; c < plan.count; ++c) {
            VectorXd p(d);
            for (int i = 0; i < d; ++i) p(i) = lerp(i, (idx[i] + 0.5) / k);
            out.push_back(p);
            int i = 0;
            while (i < d && ++idx[i] == k) idx[i++] = 0;
            if (i == d) break;
        }
        return out;
    }
    if (d > 16) throw std::runtime_error("low-discrepancy sampling supports dim <= 16");
    for (int c = 0; c < plan.count; ++c) {
        std::uint64_t i = plan.seed + static_cast<std::uint64_t>(c) + 1;
        VectorXd p(d);
        for (int k = 0; k < d; ++k)
            p(k) = lerp(k, detail::radical_inverse(i, detail::kHaltonPrimes[k]));
        out.push_back(p);
    }
    return out;
}

}  // namespace quatsub

#endif  // QUATSUB_SAMPLING_HPP
