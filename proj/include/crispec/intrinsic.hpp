#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "crispec/metric.hpp"

namespace crispec {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct IntrinsicMetricResult {
    double scale = 0;
    std::size_t n = 0;
    std::vector<double> dmat;             // row-major; kUnreachable across components
    std::optional<std::uint64_t> lipschitz_M;  // empty when the graph is disconnected
    double at(std::size_t i, std::size_t j) const { return dmat[i * n + j]; }
};

// Shortest chain lengths in the graph of pairs closer than eps.
IntrinsicMetricResult intrinsic_metric(const FiniteMetricSpace& X, double eps, unsigned threads = 1);

struct IntrinsicSweep {
    std::vector<IntrinsicMetricResult> by_scale;  // descending scale
    bool monotone = true;                         // D never shrinks as the scale drops
    double d0_scale = 0;       // smallest scale with a connected graph
    IntrinsicMetricResult d0;  // D at d0_scale
    bool divergent = false;    // D blows up below d0_scale but above the floor
};

// One representative scale per candidate interval at or above `floor`.
// `max_scales` keeps only that many of the smallest representatives (0 = all).
IntrinsicSweep intrinsic_metric_sweep(const FiniteMetricSpace& X, double floor = 0,
                                      unsigned threads = 1, std::size_t max_scales = 0);

struct MidpointReport {
    std::size_t pairs = 0;
    std::size_t failures = 0;
    std::vector<std::pair<std::size_t, std::size_t>> failed;
};

// For random pairs, look for m with |D(x,m) - D(y,m)| <= tol and D(x,m) <= D(x,y)/2 + tol.
MidpointReport midpoint_check(const IntrinsicMetricResult& D, double tol, std::size_t pairs,
                              std::uint64_t seed);

}  // namespace crispec
