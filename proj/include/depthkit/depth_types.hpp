#pragma once

#include "depthkit/geometry.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

namespace depthkit {

enum class Method {
    brute,
    sweep2d,
    projected,
    enum_bfs,
    monte_carlo,
    combined,
    half_sample,
    approx3d,
};

inline const char* to_string(Method m) {
    switch (m) {
        case Method::brute: return "brute";
        case Method::sweep2d: return "sweep2d";
        case Method::projected: return "projected";
        case Method::enum_bfs: return "enum_bfs";
        case Method::monte_carlo: return "monte_carlo";
        case Method::combined: return "combined";
        case Method::half_sample: return "half_sample";
        case Method::approx3d: return "approx3d";
    }
    return "?";
}

// Exact or estimated simplicial depth. Exact methods leave eps unset and
// store an integral value.
struct DepthResult {
    double value = 0.0;
    Method method = Method::brute;
    std::optional<double> eps;
    std::optional<std::uint64_t> trials;
    std::uint64_t work = 0; // containment/predicate evaluations performed

    std::uint64_t exact_count() const { return static_cast<std::uint64_t>(value); }
};

// Per-point containing-simplex counts; the total is (d+1) times the depth.
struct WeightVector {
    std::vector<std::uint64_t> weights;

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto w : weights) s += w;
        return s;
    }
};

struct TukeyResult {
    std::uint64_t value = 0;
    Halfspace witness;
};

// Point counts strictly on each side of the line (hyperplane) through p and q.
struct SplitCounts {
    std::uint64_t n1 = 0;
    std::uint64_t n2 = 0;
};

// Work cap used by the exhaustive algorithms; DEPTHKIT_MAX_WORK overrides.
inline std::uint64_t default_work_cap() {
    if (const char* env = std::getenv("DEPTHKIT_MAX_WORK")) {
        const double v = std::atof(env);
        if (v > 0) return static_cast<std::uint64_t>(v);
    }
    return 100000000ull;
}

} // namespace depthkit
