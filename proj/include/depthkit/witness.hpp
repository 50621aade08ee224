#pragma once

// Randomized discovery of a halfspace through q whose open side holds few
// points: draw 2^-i samples of shrinking density until q falls outside the
// sample hull, separate, translate the separating hyperplane through q, and
// count the sparse side exactly. The count is always an upper bound on the
// Tukey depth of q.

#include "depthkit/errors.hpp"
#include "depthkit/feasibility.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/rng.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace depthkit {

struct WitnessResult {
    bool inside = false;    // no trial separated q from any sample (and q is in conv(P))
    Halfspace halfspace;    // boundary through q, normal toward the sparse side
    std::uint64_t count = 0; // exact number of points strictly on the sparse side
    int sample_level = -1;  // 0 = separated from the full set, i >= 1 = sample level
};

namespace detail {

inline std::uint64_t count_sparse_side(const PointSet& P, const Point& q,
                                       const std::vector<double>& sparse_normal) {
    std::uint64_t c = 0;
    for (int i = 0; i < P.size(); ++i) {
        if (linear_form_sign(sparse_normal.data(), P[i].data(), q.data(), P.dim) > 0) ++c;
    }
    return c;
}

inline WitnessResult make_witness(const PointSet& P, const Point& q,
                                  std::vector<double> separator, int level) {
    // separator w satisfies w.(p - q) > 0 for the separated sample; the
    // sparse side is the opposite one.
    WitnessResult res;
    res.inside = false;
    res.sample_level = level;
    std::vector<double> sparse(separator.size());
    for (std::size_t j = 0; j < separator.size(); ++j) sparse[j] = -separator[j];
    double off = 0.0;
    for (std::size_t j = 0; j < sparse.size(); ++j) off += sparse[j] * q[j];
    res.halfspace = Halfspace{sparse, off, true};
    res.count = count_sparse_side(P, q, sparse);
    return res;
}

} // namespace detail

inline WitnessResult find_halfspace_witness(const PointSet& P, const Point& q,
                                            std::uint64_t seed) {
    const int n = P.size();
    const int d = P.dim;
    if (n == 0) throw InputError("find_halfspace_witness: empty point set");

    // Deterministic full-set feasibility first: if q is outside conv(P) the
    // separating direction yields a zero-count sparse side.
    {
        auto full = hull_membership(P, q, /*certify=*/true);
        if (!full.inside) {
            return detail::make_witness(P, q, full.separator, 0);
        }
    }

    const int levels = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max(2, n))))));
    const int trials = std::max(1, static_cast<int>(std::ceil(3.0 * std::log2(static_cast<double>(std::max(2, n))))));

    int best_level = -1;
    std::vector<double> best_separator;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        for (int i = 1; i <= levels; ++i) {
            if (best_level >= 0 && i >= best_level) break; // cannot improve
            std::vector<int> sample;
            for (int p = 0; p < n; ++p) {
                if (rng.coin_pow2(i)) sample.push_back(p);
            }
            std::optional<std::vector<double>> sep;
            if (sample.empty()) {
                std::vector<double> w(d, 0.0);
                w[0] = 1.0;
                sep = w; // vacuous separation from an empty sample
            } else {
                auto mem = hull_membership(P, sample, q, /*certify=*/false);
                if (!mem.inside && mem.certified) sep = mem.separator;
            }
            if (sep) {
                // first encountered wins among equal levels
                if (best_level < 0 || i < best_level) {
                    best_level = i;
                    best_separator = *sep;
                }
                break;
            }
        }
    }

    if (best_level < 0) {
        WitnessResult res;
        res.inside = true;
        return res;
    }
    return detail::make_witness(P, q, best_separator, best_level);
}

} // namespace depthkit
