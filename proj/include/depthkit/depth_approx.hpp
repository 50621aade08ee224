#pragma once

// Approximation algorithms: uniform Monte Carlo sampling, the
// enumeration+sampling combination, the heavy-point-aware half-sampling
// estimator, and the near-linear 3D pipeline.

#include "depthkit/depth_enum.hpp"
#include "depthkit/depth_exact.hpp"
#include "depthkit/depth_types.hpp"
#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/projection.hpp"
#include "depthkit/rng.hpp"
#include "depthkit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace depthkit {

// ---------------------------------------------------------------------------
// Monte Carlo sampling
// ---------------------------------------------------------------------------

struct MonteCarloParams {
    double eps = 0.25;
    double delta = 1.0;
    std::uint64_t m = 1; // depth lower-bound guess; the guarantee needs sigma >= m
    std::uint64_t seed = 0;

    std::uint64_t sample_count(int n, int d) const {
        if (eps <= 0 || delta <= 0 || m == 0) throw InputError("MonteCarloParams: need eps, delta > 0 and m >= 1");
        const long double nd = std::pow(static_cast<long double>(n), d + 1);
        const long double k = std::ceil(4.0L * delta * nd * std::log(static_cast<long double>(n)) /
                                        (static_cast<long double>(eps) * eps * m));
        return k < 1 ? 1 : static_cast<std::uint64_t>(k);
    }
};

// Uniform sampling of (d+1)-subsets; the hit rate scaled by C(n,d+1) is an
// unbiased depth estimate.
inline DepthResult monte_carlo(const PointSet& P, const Point& q,
                               const MonteCarloParams& params) {
    const int n = P.size();
    const int d = P.dim;
    if (n < d + 1) throw InputError("monte_carlo: need at least d+1 points");
    const std::uint64_t k = params.sample_count(n, d);
    Rng rng(params.seed);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < k; ++t) {
        const std::vector<int> subset = rng.sample_distinct(n, d + 1);
        if (simplex_contains(P, subset, q)) ++hits;
    }
    DepthResult res;
    res.value = static_cast<double>(binom_ld(n, d + 1) *
                                    (static_cast<long double>(hits) / static_cast<long double>(k)));
    res.method = Method::monte_carlo;
    res.eps = params.eps;
    res.trials = k;
    res.work = k;
    return res;
}

// ---------------------------------------------------------------------------
// combined enumeration + sampling
// ---------------------------------------------------------------------------

// BFS capped at n^(d/2) nodes; a truncated run proves sigma >= n^(d/2), which
// licenses Monte Carlo with that lower bound.
inline DepthResult combined(const PointSet& P, const Point& q, double eps, double delta,
                            std::uint64_t seed) {
    const int n = P.size();
    const int d = P.dim;
    const std::uint64_t limit = static_cast<std::uint64_t>(
        std::ceil(std::pow(static_cast<double>(n), d / 2.0)));
    auto bfs = count_via_bfs(P, q, std::max<std::uint64_t>(1, limit));
    if (bfs.status == BfsOutcome::Status::complete) {
        DepthResult res;
        res.value = static_cast<double>(bfs.count);
        res.method = Method::enum_bfs;
        res.work = bfs.frontier_work;
        return res;
    }
    MonteCarloParams params;
    params.eps = eps;
    params.delta = delta;
    params.m = std::max<std::uint64_t>(1, limit);
    params.seed = derive_seed(seed, 1);
    DepthResult res = monte_carlo(P, q, params);
    res.work += bfs.frontier_work;
    return res;
}

// ---------------------------------------------------------------------------
// half-sampling with heavy-point retention
// ---------------------------------------------------------------------------

// Nested half-samples; each level retains heavy points deterministically.
struct SampleChain {
    std::vector<std::vector<int>> levels; // original point indices, level 0 = all
    std::vector<std::uint64_t> level_seeds;
};

struct HeavyThresholdParams {
    double C = 1.0;
    double eps = 0.25;
    double M = 0.0; // eps^2 * sigma_ref / (C * ln n)

    static HeavyThresholdParams make(double C, double eps, double sigma_ref, int n) {
        HeavyThresholdParams p;
        p.C = C;
        p.eps = eps;
        p.M = eps * eps * sigma_ref / (C * std::log(static_cast<double>(std::max(n, 3))));
        return p;
    }
};

namespace detail {

struct HalfSampleAccounting {
    std::uint64_t work = 0;
    SampleChain chain;
};

// Exact count of containing triangles split by how many vertices are heavy.
// heavy/pool partition the working set; n1/n2/n3 use 1, 2, 3 heavy vertices.
struct HeavySplit {
    std::uint64_t n1 = 0, n2 = 0, n3 = 0;
};

inline HeavySplit count_heavy_split(const PointSet& W, const Point& q,
                                    const std::vector<int>& heavy,
                                    const std::vector<int>& pool,
                                    std::uint64_t& work) {
    HeavySplit hs;
    const double* qp = q.data();
    auto orient_q = [&](int a, int b) {
        const double* pts[3] = {qp, W[a].data(), W[b].data()};
        ++work;
        return orientation(pts, 2);
    };

    // n3: brute force over heavy triples
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        for (std::size_t j = i + 1; j < heavy.size(); ++j) {
            for (std::size_t k = j + 1; k < heavy.size(); ++k) {
                ++work;
                if (simplex_contains(W, {heavy[i], heavy[j], heavy[k]}, q)) ++hs.n3;
            }
        }
    }

    // n2: for each heavy pair, pool points in the wedge opposite both
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        for (std::size_t j = i + 1; j < heavy.size(); ++j) {
            int a = heavy[i], b = heavy[j];
            const int s = orient_q(a, b);
            if (s == 0)
                throw DegeneracyError("half_sample: heavy pair collinear with q", {a, b});
            if (s < 0) std::swap(a, b);
            for (int x : pool) {
                if (orient_q(a, x) < 0 && orient_q(b, x) > 0) ++hs.n2;
            }
        }
    }

    // n1: weight of each heavy point within pool + {a}
    for (int a : heavy) {
        std::vector<int> local(pool);
        local.push_back(a);
        PointSet sub = W.subset(local);
        const WeightVector wv = weights_2d(sub, q);
        hs.n1 += wv.weights.back();
        work += static_cast<std::uint64_t>(sub.size()) * 8;
    }
    return hs;
}

inline double half_sample_level(const PointSet& P, const Point& q,
                                const std::vector<int>& working, double eps, double C,
                                bool naive, int n0, int bottom_cap, std::uint64_t seed,
                                int level, HalfSampleAccounting& acct) {
    acct.chain.levels.push_back(working);
    acct.chain.level_seeds.push_back(seed);

    PointSet W = P.subset(working);
    if (W.size() < 3) return 0.0;
    if (W.size() <= bottom_cap) {
        const DepthResult exact = sweep_2d(W, q);
        acct.work += exact.work;
        return exact.value;
    }

    const DepthResult ref = sweep_2d(W, q);
    acct.work += ref.work;
    if (ref.value == 0.0) return 0.0;

    const WeightVector wv = weights_2d(W, q);
    acct.work += static_cast<std::uint64_t>(W.size()) * 8;
    const auto params = HeavyThresholdParams::make(C, eps, ref.value, n0);

    std::vector<int> heavy_local, pool_local;
    for (int i = 0; i < W.size(); ++i) {
        if (!naive && static_cast<double>(wv.weights[i]) >= params.M)
            heavy_local.push_back(i);
        else
            pool_local.push_back(i);
    }
    if (pool_local.empty()) return ref.value; // nothing left to sample

    const HeavySplit hs = naive ? HeavySplit{}
                                : count_heavy_split(W, q, heavy_local, pool_local, acct.work);

    Rng rng(seed);
    std::vector<int> next;
    next.reserve(working.size());
    {
        std::vector<char> keep(W.size(), 0);
        for (int i : heavy_local) keep[i] = 1;
        for (int i : pool_local) {
            if (rng.coin()) keep[i] = 1;
        }
        for (int i = 0; i < W.size(); ++i) {
            if (keep[i]) next.push_back(working[i]);
        }
    }

    const double child = half_sample_level(P, q, next, eps, C, naive, n0, bottom_cap,
                                           derive_seed(seed, 0x10ff + level), level + 1, acct);
    const double n1 = static_cast<double>(hs.n1);
    const double n2 = static_cast<double>(hs.n2);
    const double n3 = static_cast<double>(hs.n3);
    const double pool_only = std::max(0.0, child - n1 / 4.0 - n2 / 2.0 - n3);
    return 8.0 * pool_only + n1 + n2 + n3;
}

} // namespace detail

// Recursive half-sampling estimator (d=2). Heavy points, identified from the
// exact per-point weights of the working set, are retained deterministically;
// the pool is half-sampled. Unwinding uses the survival identity: a triangle
// with t pool vertices survives a level with probability 2^-t.
inline DepthResult half_sample_estimator(const PointSet& P, const Point& q, double eps,
                                         double C, std::uint64_t seed, bool naive = false,
                                         SampleChain* chain_out = nullptr) {
    if (P.dim != 2) throw InputError("half_sample_estimator requires d=2");
    if (eps <= 0 || C <= 0) throw InputError("half_sample_estimator: eps and C must be > 0");
    const int n0 = P.size();
    const int bottom_cap = static_cast<int>(
        std::ceil(64.0 * std::log(static_cast<double>(std::max(n0, 3)))));

    detail::HalfSampleAccounting acct;
    std::vector<int> all(n0);
    std::iota(all.begin(), all.end(), 0);
    const double estimate =
        detail::half_sample_level(P, q, all, eps, C, naive, n0, bottom_cap, seed, 0, acct);

    if (chain_out) *chain_out = acct.chain;
    DepthResult res;
    res.value = estimate;
    res.method = Method::half_sample;
    res.eps = eps;
    res.work = acct.work;
    return res;
}

// ---------------------------------------------------------------------------
// near-linear 3D pipeline
// ---------------------------------------------------------------------------

struct Split3DCounts {
    double sigma_one = 0.0;      // simplices with exactly one sparse-plane vertex
    double sigma_two_plus = 0.0; // simplices with two or more
};

struct Approx3dDetail {
    Split3DCounts split;
    std::uint64_t sparse_count = 0;  // |P1|
    std::uint64_t witness_count = 0; // points in the witness halfspace
    bool witness_was_inside = false; // fell back to exact Tukey depth
};

// Decomposition by the sparse projection plane: simplices with exactly one
// sparse vertex are counted exactly through per-query 2D sweeps on the
// opposite plane; the rest are estimated by stratified sampling constrained
// to take at least two sparse vertices.
inline DepthResult approx_3d(const PointSet& P, const Point& q, double eps,
                             std::uint64_t seed, Approx3dDetail* detail_out = nullptr,
                             double K = 64.0, double delta = 1.0) {
    const int n = P.size();
    if (P.dim != 3) throw InputError("approx_3d requires d=3");
    if (n < 4) throw InputError("approx_3d: need at least 4 points");

    Approx3dDetail det;
    DepthResult res;
    res.method = Method::approx3d;
    res.eps = eps;

    WitnessResult wit = find_halfspace_witness(P, q, derive_seed(seed, 0xA3D));
    std::vector<double> normal;
    if (wit.inside) {
        // every trial kept q inside; fall back to the exact Tukey witness
        TukeyResult tk = tukey_small_d(P, q);
        det.witness_was_inside = true;
        det.witness_count = tk.value;
        normal = tk.witness.normal;
        if (tk.value == 0) {
            res.value = 0.0;
            if (detail_out) *detail_out = det;
            return res;
        }
    } else {
        det.witness_count = wit.count;
        normal = wit.halfspace.normal;
        if (wit.count == 0) {
            res.value = 0.0; // q outside the hull
            if (detail_out) *detail_out = det;
            return res;
        }
    }

    ProjectionPair pair = central_project(P, q, normal);
    const bool sparse_upper = pair.upper.size() <= pair.lower.size();
    const PointSet& sparse_flat = sparse_upper ? pair.upper : pair.lower;
    const PointSet& dense_flat = sparse_upper ? pair.lower : pair.upper;
    const std::vector<int>& sparse_origin = sparse_upper ? pair.upper_origin : pair.lower_origin;
    det.sparse_count = static_cast<std::uint64_t>(sparse_flat.size());

    // sigma_one: extend the ray p -> q to the opposite plane and take the
    // exact 2D depth of the crossing point among the dense projections
    double sigma_one = 0.0;
    for (int i = 0; i < sparse_flat.size(); ++i) {
        const int pi = sparse_origin[i];
        double t = 0.0;
        for (int j = 0; j < 3; ++j) t += pair.unit_normal[j] * (q[j] - P[pi][j]);
        // the extension hits the opposite plane at q + (q-p)/|t|
        Point hit(3);
        const double scale = 1.0 / std::abs(t);
        for (int j = 0; j < 3; ++j) hit[j] = q[j] + (q[j] - P[pi][j]) * scale;
        const Point flat_hit = pair.to_flat(hit, !sparse_upper);
        if (dense_flat.size() >= 3) {
            const DepthResult sweep = sweep_2d(dense_flat, flat_hit);
            sigma_one += sweep.value;
            res.work += sweep.work;
        }
    }
    det.split.sigma_one = sigma_one;

    // sigma_two_plus: stratified sampling with >= 2 sparse vertices
    const std::uint64_t s = det.sparse_count;
    const std::uint64_t r = static_cast<std::uint64_t>(n) - s;
    const long double N2 = binom_ld(s, 2) * binom_ld(r, 2);
    const long double N3 = binom_ld(s, 3) * binom_ld(r, 1);
    const long double N4 = binom_ld(s, 4);
    const long double Ntotal = N2 + N3 + N4;
    double sigma_two_plus = 0.0;
    if (Ntotal > 0) {
        const std::uint64_t tau_hat = std::max<std::uint64_t>(1, det.witness_count);
        const long double m_ld = std::ceil(std::pow(static_cast<long double>(tau_hat), 3) * n / K);
        const std::uint64_t m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m_ld));
        const long double k_ld = std::ceil(4.0L * delta * Ntotal *
                                           std::log(static_cast<long double>(n)) /
                                           (static_cast<long double>(eps) * eps * m));
        const std::uint64_t k_total = std::max<std::uint64_t>(16, static_cast<std::uint64_t>(k_ld));

        std::vector<int> sparse_ids, rest_ids;
        sparse_ids.reserve(s);
        rest_ids.reserve(r);
        {
            std::vector<char> is_sparse(n, 0);
            for (int i : sparse_origin) is_sparse[i] = 1;
            for (int i = 0; i < n; ++i) (is_sparse[i] ? sparse_ids : rest_ids).push_back(i);
        }

        Rng rng(derive_seed(seed, 0x52F0)); // sampling stream
        const long double strata[3] = {N2, N3, N4};
        for (int st = 0; st < 3; ++st) {
            if (strata[st] <= 0) continue;
            const std::uint64_t ks = std::max<std::uint64_t>(
                8, static_cast<std::uint64_t>(std::ceil(k_total * (strata[st] / Ntotal))));
            const int take_sparse = st + 2;
            const int take_rest = 4 - take_sparse;
            std::uint64_t hits = 0;
            std::vector<int> subset(4);
            for (std::uint64_t t0 = 0; t0 < ks; ++t0) {
                auto a = rng.sample_distinct(static_cast<int>(s), take_sparse);
                std::vector<int> b;
                if (take_rest > 0) b = rng.sample_distinct(static_cast<int>(r), take_rest);
                int w = 0;
                for (int x : a) subset[w++] = sparse_ids[x];
                for (int x : b) subset[w++] = rest_ids[x];
                ++res.work;
                if (simplex_contains(P, subset, q)) ++hits;
            }
            sigma_two_plus += static_cast<double>(strata[st] *
                                                  (static_cast<long double>(hits) / ks));
        }
        res.trials = k_total;
    }
    det.split.sigma_two_plus = sigma_two_plus;

    res.value = sigma_one + sigma_two_plus;
    if (detail_out) *detail_out = det;
    return res;
}

// ---------------------------------------------------------------------------
// split-product weight approximation
// ---------------------------------------------------------------------------

// n1*n2 approximates the weight of p when both sides of the line through p
// and q are large relative to the witness halfspace count and p lies in the
// witness halfspace; otherwise the estimate is refused.
inline std::optional<double> weight_split_estimate(const PointSet& P, const Point& q,
                                                   int p_index, double eps,
                                                   const Halfspace& witness_halfspace,
                                                   std::uint64_t witness_count) {
    if (P.dim != 2) throw InputError("weight_split_estimate requires d=2");
    if (eps <= 0) throw InputError("weight_split_estimate: eps must be > 0");
    // the guarantee needs p inside the sparse halfspace
    if (linear_form_sign(witness_halfspace.normal.data(), P[p_index].data(), q.data(), 2) <= 0)
        return std::nullopt;
    const SplitCounts sc = split_counts(P, q, p_index);
    const double threshold = 2.0 * static_cast<double>(witness_count) / eps;
    if (static_cast<double>(std::min(sc.n1, sc.n2)) < threshold) return std::nullopt;
    return static_cast<double>(sc.n1) * static_cast<double>(sc.n2);
}

} // namespace depthkit
