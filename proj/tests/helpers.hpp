#pragma once

// Shared test fixtures and independent oracles. The oracles deliberately take
// different routes than the library implementations they check.

#include "depthkit/depthkit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace testutil {

using namespace depthkit;

inline PointSet make_points(int dim, std::initializer_list<Point> pts) {
    PointSet ps;
    ps.dim = dim;
    for (const auto& p : pts) ps.push_back(p);
    return ps;
}

// random instance in general position with q at the origin-ish centroid
inline Instance random_instance(int n, int d, std::uint64_t seed,
                                Family family = Family::uniform_ball) {
    GenSpec spec;
    spec.family = family;
    spec.n = n;
    spec.d = d;
    spec.seed = seed;
    return gen(spec);
}

// Barycentric membership oracle: solve the lifted linear system in doubles
// and check that all coordinates lie in [0,1] with a margin.
inline int barycentric_contains(const PointSet& P, const std::vector<int>& idx,
                                const Point& q, double margin = 1e-9) {
    const int d = P.dim;
    Eigen::MatrixXd A(d + 1, d + 1);
    Eigen::VectorXd b(d + 1);
    for (int c = 0; c <= d; ++c) {
        for (int r = 0; r < d; ++r) A(r, c) = P[idx[c]][r];
        A(d, c) = 1.0;
    }
    for (int r = 0; r < d; ++r) b(r) = q[r];
    b(d) = 1.0;
    Eigen::VectorXd lambda = A.fullPivLu().solve(b);
    bool inside = true, sure = true;
    for (int i = 0; i <= d; ++i) {
        if (lambda(i) < -margin) inside = false;
        else if (lambda(i) < margin) sure = false;
    }
    if (!sure && inside) return -1; // too close to call
    return inside ? 1 : 0;
}

// per-point weight oracle by full triple enumeration
inline std::vector<std::uint64_t> weights_brute(const PointSet& P, const Point& q) {
    const int n = P.size();
    std::vector<std::uint64_t> w(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (simplex_contains(P, {a, b, c}, q)) {
                    ++w[a];
                    ++w[b];
                    ++w[c];
                }
    return w;
}

// Tukey oracle: every directed line through q and one point, both strict sides
inline std::uint64_t tukey_oracle_2d(const PointSet& P, const Point& q) {
    const int n = P.size();
    std::uint64_t best = n;
    for (int j = 0; j < n; ++j) {
        std::uint64_t left = 0, right = 0;
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            const double* pts[3] = {q.data(), P[j].data(), P[i].data()};
            const int s = orientation(pts, 2);
            if (s > 0) ++left;
            else if (s < 0) ++right;
        }
        best = std::min({best, left, right});
    }
    return best;
}

// lower bound on Tukey depth from dense direction sampling
inline std::uint64_t tukey_direction_sample_bound(const PointSet& P, const Point& q,
                                                  int samples, std::uint64_t seed) {
    Rng rng(seed);
    const int n = P.size();
    const int d = P.dim;
    std::uint64_t best = n;
    for (int t = 0; t < samples; ++t) {
        std::vector<double> w(d);
        for (int j = 0; j < d; ++j) w[j] = rng.normal();
        std::uint64_t cnt = 0;
        for (int i = 0; i < n; ++i) {
            if (linear_form_sign(w.data(), P[i].data(), q.data(), d) > 0) ++cnt;
        }
        best = std::min(best, std::min(cnt, static_cast<std::uint64_t>(n) - cnt));
    }
    return best;
}

} // namespace testutil
