#pragma once

// Output-sensitive exact counting: breadth-first traversal of the graph whose
// nodes are the containing simplices and whose edges are single-vertex swaps.
// The graph is (n-d-1)-regular and connected, so BFS from any containing
// simplex reaches every node.

#include "depthkit/depth_types.hpp"
#include "depthkit/errors.hpp"
#include "depthkit/feasibility.hpp"
#include "depthkit/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

namespace depthkit {

// A containing simplex: sorted, distinct point indices.
struct Simplex {
    std::vector<int> idx;

    bool operator==(const Simplex& o) const { return idx == o.idx; }
    bool operator<(const Simplex& o) const { return idx < o.idx; }
};

struct BfsOutcome {
    enum class Status { complete, truncated };
    Status status = Status::complete;
    std::uint64_t count = 0;         // exact depth when complete, else the node limit
    std::uint64_t frontier_work = 0; // containment-test-equivalent evaluations
};

namespace detail {

// Barycentric data of q and of a swap direction w.r.t. one simplex, solved
// once per node and reused across all outside points.
struct SwapContext {
    const PointSet* P;
    const Point* q;
    std::vector<int> idx; // sorted, d+1 entries
    int d;

    // dense LU of the lifted vertex matrix (columns = [v;1]), row-major
    std::vector<double> lu;
    std::vector<int> perm;
    bool lu_ok = false;
    std::vector<double> lambda; // barycentric coordinates of q

    SwapContext(const PointSet& ps, const Point& query, const Simplex& s)
        : P(&ps), q(&query), idx(s.idx), d(ps.dim) {
        const int m = d + 1;
        lu.assign(static_cast<std::size_t>(m) * m, 0.0);
        perm.resize(m);
        for (int c = 0; c < m; ++c) {
            for (int r = 0; r < d; ++r) lu[static_cast<std::size_t>(r) * m + c] = (*P)[idx[c]][r];
            lu[static_cast<std::size_t>(d) * m + c] = 1.0;
        }
        std::iota(perm.begin(), perm.end(), 0);
        lu_ok = factor();
        if (lu_ok) {
            std::vector<double> rhs(m);
            for (int r = 0; r < d; ++r) rhs[r] = (*q)[r];
            rhs[d] = 1.0;
            lambda = solve(rhs);
        }
    }

    bool factor() {
        const int m = d + 1;
        for (int col = 0; col < m; ++col) {
            int piv = col;
            double best = std::abs(lu[static_cast<std::size_t>(perm[col]) * m + col]);
            for (int r = col + 1; r < m; ++r) {
                const double v = std::abs(lu[static_cast<std::size_t>(perm[r]) * m + col]);
                if (v > best) { best = v; piv = r; }
            }
            if (best == 0.0) return false;
            std::swap(perm[col], perm[piv]);
            const double pv = lu[static_cast<std::size_t>(perm[col]) * m + col];
            for (int r = col + 1; r < m; ++r) {
                double& f = lu[static_cast<std::size_t>(perm[r]) * m + col];
                f /= pv;
                for (int c = col + 1; c < m; ++c)
                    lu[static_cast<std::size_t>(perm[r]) * m + c] -=
                        f * lu[static_cast<std::size_t>(perm[col]) * m + c];
            }
        }
        return true;
    }

    std::vector<double> solve(const std::vector<double>& rhs) const {
        const int m = d + 1;
        std::vector<double> y(m);
        for (int r = 0; r < m; ++r) {
            double acc = rhs[perm[r]];
            for (int c = 0; c < r; ++c) acc -= lu[static_cast<std::size_t>(perm[r]) * m + c] * y[c];
            y[r] = acc;
        }
        std::vector<double> x(m);
        for (int r = m - 1; r >= 0; --r) {
            double acc = y[r];
            for (int c = r + 1; c < m; ++c) acc -= lu[static_cast<std::size_t>(perm[r]) * m + c] * x[c];
            x[r] = acc / lu[static_cast<std::size_t>(perm[r]) * m + r];
        }
        return x;
    }

    // exact barycentric determinants via Cramer on the lifted matrix
    Rational exact_det(const std::vector<Rational>& replacement_col, int col) const {
        const int m = d + 1;
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
        for (int c = 0; c < m; ++c) {
            for (int r = 0; r < d; ++r)
                M[r][c] = (c == col) ? replacement_col[r] : Rational((*P)[idx[c]][r]);
            M[d][c] = (c == col) ? replacement_col[d] : Rational(1);
        }
        return rational_det(M);
    }

    static Rational rational_det(std::vector<std::vector<Rational>>& m) {
        const int n = static_cast<int>(m.size());
        Rational det = 1;
        int sign = 1;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r) {
                if (m[r][col] != 0) { piv = r; break; }
            }
            if (piv < 0) return Rational(0);
            if (piv != col) { std::swap(m[piv], m[col]); sign = -sign; }
            for (int r = col + 1; r < n; ++r) {
                if (m[r][col] == 0) continue;
                Rational f = m[r][col] / m[col][col];
                for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            }
            det *= m[col][col];
        }
        return sign > 0 ? det : -det;
    }

    // Exit vertex for the swap that brings point p in: along the ray from q
    // in direction q - p, the facet crossed first is argmin of lambda_i/(-mu_i)
    // over mu_i < 0. Falls back to exact arithmetic when doubles cannot
    // certify the selection.
    int exit_vertex(int p) const {
        const int m = d + 1;
        if (lu_ok) {
            std::vector<double> rhs(m);
            for (int r = 0; r < d; ++r) rhs[r] = (*q)[r] - (*P)[p][r];
            rhs[d] = 0.0;
            std::vector<double> mu = solve(rhs);
            int best = -1, second = -1;
            double best_t = 0.0, second_t = 0.0;
            bool shaky = false;
            for (int i = 0; i < m; ++i) {
                if (lambda[i] <= 1e-13) { shaky = true; break; }
                if (mu[i] < -1e-13) {
                    const double t = lambda[i] / (-mu[i]);
                    if (best < 0 || t < best_t) {
                        second = best; second_t = best_t;
                        best = i; best_t = t;
                    } else if (second < 0 || t < second_t) {
                        second = i; second_t = t;
                    }
                } else if (mu[i] < 1e-13) {
                    shaky = true; // sign of mu_i uncertain
                    break;
                }
            }
            if (!shaky && best >= 0 &&
                (second < 0 || second_t - best_t > 1e-9 * (best_t + second_t)))
                return idx[best];
        }
        return exit_vertex_exact(p);
    }

    int exit_vertex_exact(int p) const {
        const int m = d + 1;
        std::vector<Rational> qcol(m), ucol(m);
        for (int r = 0; r < d; ++r) {
            qcol[r] = Rational((*q)[r]);
            ucol[r] = Rational((*q)[r]) - Rational((*P)[p][r]);
        }
        qcol[d] = 1;
        ucol[d] = 0;
        // base determinant for orientation of the lambda/mu signs
        std::vector<std::vector<Rational>> base(m, std::vector<Rational>(m));
        for (int c = 0; c < m; ++c) {
            for (int r = 0; r < d; ++r) base[r][c] = Rational((*P)[idx[c]][r]);
            base[d][c] = 1;
        }
        auto baseCopy = base;
        const Rational detA = rational_det(baseCopy);
        if (detA == 0)
            throw DegeneracyError("swap_vertex: degenerate simplex", idx);

        int best = -1;
        Rational best_t;
        bool tie = false;
        for (int i = 0; i < m; ++i) {
            Rational li = exact_det(qcol, i) / detA;
            Rational mi = exact_det(ucol, i) / detA;
            if (li <= 0) {
                std::vector<int> bad = idx;
                bad.push_back(static_cast<int>(P->size()));
                throw DegeneracyError("swap_vertex: q not strictly inside the simplex", bad);
            }
            if (mi < 0) {
                Rational t = li / (-mi);
                if (best < 0 || t < best_t) {
                    best = i;
                    best_t = t;
                    tie = false;
                } else if (t == best_t) {
                    tie = true;
                }
            }
        }
        if (best < 0 || tie) {
            std::vector<int> bad = idx;
            bad.push_back(p);
            throw DegeneracyError("swap_vertex: ray hits a ridge", bad);
        }
        return idx[best];
    }

    Simplex neighbor(int p) const {
        const int v = exit_vertex(p);
        Simplex out;
        out.idx.reserve(d + 1);
        for (int i : idx) {
            if (i != v) out.idx.push_back(i);
        }
        out.idx.push_back(p);
        std::sort(out.idx.begin(), out.idx.end());
        return out;
    }
};

struct SimplexKeyHash {
    std::size_t operator()(std::uint64_t k) const {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdull;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

} // namespace detail

// The unique swap: returns S + {p} - {v} still containing q. Uniqueness of
// the exit vertex holds under general position; a tie means the ray hits a
// ridge and raises a degeneracy error.
inline Simplex swap_vertex(const Simplex& S, int p, const PointSet& P, const Point& q) {
    if (static_cast<int>(S.idx.size()) != P.dim + 1)
        throw InputError("swap_vertex: simplex must have d+1 vertices");
    for (int i : S.idx) {
        if (i == p) throw InputError("swap_vertex: p already in the simplex");
    }
    detail::SwapContext ctx(P, q, S);
    return ctx.neighbor(p);
}

// A containing simplex found by convex-combination feasibility; a basic
// feasible solution has support of at most d+1 points, padded to exactly d+1
// and pruned Caratheodory-style if a solver ever returns a superset.
inline std::optional<Simplex> find_seed_simplex(const PointSet& P, const Point& q) {
    const int n = P.size();
    const int d = P.dim;
    if (n < d + 1) return std::nullopt;

    auto mem = hull_membership(P, q, /*certify=*/true);
    if (!mem.inside) return std::nullopt;

    std::vector<int> support = mem.support;
    while (static_cast<int>(support.size()) > d + 1) {
        // prune any superset down to a Caratheodory support
        bool pruned = false;
        for (std::size_t e = 0; e < support.size(); ++e) {
            std::vector<int> cand;
            cand.reserve(support.size() - 1);
            for (std::size_t i = 0; i < support.size(); ++i) {
                if (i != e) cand.push_back(support[i]);
            }
            if (hull_membership(P, cand, q, /*certify=*/true).inside) {
                support = std::move(cand);
                pruned = true;
                break;
            }
        }
        if (!pruned) break;
    }
    for (int i = 0; i < n && static_cast<int>(support.size()) < d + 1; ++i) {
        if (std::find(support.begin(), support.end(), i) == support.end())
            support.push_back(i);
    }
    std::sort(support.begin(), support.end());
    Simplex s{support};
    if (!simplex_contains(P, s.idx, q))
        throw std::logic_error("find_seed_simplex: support verification failed");
    return s;
}

// BFS over the simplicial graph. Neighbors are generated in ascending
// outside-point order; a truncated run stops the first time the visited set
// reaches `node_limit`, which makes truncated counts reproducible.
inline BfsOutcome count_via_bfs(const PointSet& P, const Point& q,
                                std::optional<std::uint64_t> node_limit = {}) {
    const int n = P.size();
    const int d = P.dim;
    if (node_limit && *node_limit == 0) throw InputError("count_via_bfs: node_limit must be >= 1");

    BfsOutcome out;
    auto seed = find_seed_simplex(P, q);
    out.frontier_work = 1; // seed verification
    if (!seed) {
        out.status = BfsOutcome::Status::complete;
        out.count = 0;
        return out;
    }

    int bits = 1;
    while ((1 << bits) < n + 1 && bits < 31) ++bits;
    const bool packable = static_cast<std::int64_t>(bits) * (d + 1) <= 64;
    auto key_of = [&](const Simplex& s) {
        std::uint64_t k = 0;
        for (int i : s.idx) k = (k << bits) | static_cast<std::uint64_t>(i);
        return k;
    };

    std::unordered_set<std::uint64_t, detail::SimplexKeyHash> visited_packed;
    std::set<std::vector<int>> visited_generic;
    auto insert_node = [&](const Simplex& s) {
        if (packable) return visited_packed.insert(key_of(s)).second;
        return visited_generic.insert(s.idx).second;
    };
    auto visited_count = [&]() -> std::uint64_t {
        return packable ? visited_packed.size() : visited_generic.size();
    };

    std::deque<Simplex> queue;
    insert_node(*seed);
    queue.push_back(*seed);
    if (node_limit && visited_count() >= *node_limit) {
        out.status = BfsOutcome::Status::truncated;
        out.count = *node_limit;
        return out;
    }

    std::vector<char> in_simplex(n, 0);
    while (!queue.empty()) {
        Simplex cur = std::move(queue.front());
        queue.pop_front();
        detail::SwapContext ctx(P, q, cur);
        for (int i : cur.idx) in_simplex[i] = 1;
        for (int p = 0; p < n; ++p) {
            if (in_simplex[p]) continue;
            ++out.frontier_work;
            Simplex nb = ctx.neighbor(p);
            if (insert_node(nb)) {
                if (node_limit && visited_count() >= *node_limit) {
                    for (int i : cur.idx) in_simplex[i] = 0;
                    out.status = BfsOutcome::Status::truncated;
                    out.count = *node_limit;
                    return out;
                }
                queue.push_back(std::move(nb));
            }
        }
        for (int i : cur.idx) in_simplex[i] = 0;
    }

    out.status = BfsOutcome::Status::complete;
    out.count = visited_count();
    return out;
}

// True iff every sampled node has exactly n-d-1 distinct swap neighbors.
inline bool degree_check(const PointSet& P, const Point& q,
                         const std::vector<Simplex>& sample_of_nodes) {
    const int n = P.size();
    const int d = P.dim;
    for (const Simplex& s : sample_of_nodes) {
        detail::SwapContext ctx(P, q, s);
        std::set<std::vector<int>> nbrs;
        for (int p = 0; p < n; ++p) {
            bool inside = false;
            for (int i : s.idx) {
                if (i == p) { inside = true; break; }
            }
            if (inside) continue;
            nbrs.insert(ctx.neighbor(p).idx);
        }
        if (static_cast<int>(nbrs.size()) != n - d - 1) return false;
    }
    return true;
}

} // namespace depthkit
