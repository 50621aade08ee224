#pragma once

// Exact simplicial-depth and Tukey-depth computation: the brute-force oracle,
// the 2D angular sweep with complementary counting, per-point weights, the
// projection-based exact algorithm, and the parity predictor.

#include "depthkit/depth_types.hpp"
#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

namespace depthkit {

struct BruteOptions {
    std::uint64_t cap = default_work_cap();
    int workers = 0; // 0 = hardware concurrency
};

// ---------------------------------------------------------------------------
// brute force
// ---------------------------------------------------------------------------

// Exact depth by enumerating all (d+1)-subsets. Partitioned across workers by
// first index with a deterministic sum merge, so the count is independent of
// the worker count.
inline DepthResult brute_force(const PointSet& P, const Point& q,
                               const BruteOptions& opts = {}) {
    const int n = P.size();
    const int d = P.dim;
    if (n < d + 1) throw InputError("brute_force: need at least d+1 points");
    const long double total = binom_ld(n, d + 1);
    if (total > static_cast<long double>(opts.cap))
        throw CapExceededError("brute_force: C(n,d+1) exceeds the work cap");

    int workers = opts.workers > 0 ? opts.workers
                                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, std::max(1, n - d));

    std::vector<const double*> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = P[i].data();
    const double* qp = q.data();

    auto count_block = [&](int first_mod, std::uint64_t& out) {
        std::uint64_t cnt = 0;
        std::vector<int> c(d + 1);
        const double* verts[detail::kMaxDim + 1];
        for (int first = first_mod; first <= n - d - 1; first += workers) {
            c[0] = first;
            for (int j = 1; j <= d; ++j) c[j] = first + j;
            while (true) {
                for (int j = 0; j <= d; ++j) verts[j] = pts[c[j]];
                if (simplex_contains(verts, qp, d)) ++cnt;
                int i = d;
                while (i >= 1 && c[i] == n - (d + 1 - i)) --i;
                if (i < 1) break;
                ++c[i];
                for (int j = i + 1; j <= d; ++j) c[j] = c[j - 1] + 1;
            }
        }
        out = cnt;
    };

    std::uint64_t count = 0;
    if (workers == 1) {
        count_block(0, count);
    } else {
        std::vector<std::uint64_t> parts(workers, 0);
        std::vector<std::exception_ptr> errs(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    count_block(w, parts[w]);
                } catch (...) {
                    errs[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errs) {
            if (e) std::rethrow_exception(e);
        }
        for (auto p : parts) count += p;
    }

    DepthResult res;
    res.value = static_cast<double>(count);
    res.method = Method::brute;
    res.work = binom(n, d + 1);
    return res;
}

// ---------------------------------------------------------------------------
// 2D angular machinery
// ---------------------------------------------------------------------------

namespace detail {

// Exact circular order of the points around q, plus for every position the
// number of points strictly within the open half-plane sweep starting there.
struct AngularSweep {
    std::vector<int> order;  // indices of P in CCW angular order around q
    std::vector<int> fwd;    // count strictly within (theta_i, theta_i + pi)
    std::uint64_t predicate_calls = 0;
};

inline int angular_half(const Point& p, const Point& q, int index, int n) {
    const double dy = p[1] - q[1];
    const double dx = p[0] - q[0];
    if (dy == 0.0 && dx == 0.0)
        throw DegeneracyError("angular sort: point coincides with q", {index, n});
    if (dy > 0.0 || (dy == 0.0 && dx > 0.0)) return 0;
    return 1;
}

inline AngularSweep build_angular_sweep(const PointSet& P, const Point& q) {
    const int n = P.size();
    if (P.dim != 2) throw InputError("angular sweep requires d=2");
    AngularSweep sw;
    sw.order.resize(n);
    std::iota(sw.order.begin(), sw.order.end(), 0);

    std::vector<int> half(n);
    for (int i = 0; i < n; ++i) half[i] = angular_half(P[i], q, i, n);

    const double* qp = q.data();
    auto orient_q = [&](int a, int b) {
        const double* pts[3] = {qp, P[a].data(), P[b].data()};
        ++sw.predicate_calls;
        return orientation(pts, 2);
    };

    std::sort(sw.order.begin(), sw.order.end(), [&](int a, int b) {
        if (half[a] != half[b]) return half[a] < half[b];
        const int s = orient_q(a, b);
        if (s == 0)
            throw DegeneracyError("angular sort: two points collinear with q", {a, b, n});
        return s > 0;
    });

    // two-pointer over the doubled circular order
    sw.fwd.resize(n);
    std::int64_t k = 1;
    for (int i = 0; i < n; ++i) {
        if (k < i + 1) k = i + 1;
        while (k < i + n) {
            const int j = sw.order[k % n];
            const int s = orient_q(sw.order[i], j);
            if (s == 0)
                throw DegeneracyError("sweep: point antipodally collinear with q",
                                      {sw.order[i], j, n});
            if (s < 0) break;
            ++k;
        }
        sw.fwd[i] = static_cast<int>(k - i - 1);
    }
    return sw;
}

} // namespace detail

// Exact 2D depth via complementary counting over the angular order:
// sigma = C(n,3) - sum_p C(c_p, 2).
inline DepthResult sweep_2d(const PointSet& P, const Point& q) {
    const int n = P.size();
    if (P.dim != 2) throw InputError("sweep_2d requires d=2");
    if (n < 3) throw InputError("sweep_2d: need at least 3 points");
    auto sw = detail::build_angular_sweep(P, q);
    std::uint64_t missing = 0;
    for (int i = 0; i < n; ++i) missing += binom(sw.fwd[i], 2);
    DepthResult res;
    res.value = static_cast<double>(binom(n, 3) - missing);
    res.method = Method::sweep2d;
    res.work = sw.predicate_calls;
    return res;
}

// Exact per-point weights: the count of containing triangles through each
// point. A triple fails to contain q exactly when it fits in an open
// half-plane through q, and each failing triple is charged to its unique
// clockwise-most member, which yields a per-point formula over the forward
// arc counts.
inline WeightVector weights_2d(const PointSet& P, const Point& q) {
    const int n = P.size();
    if (P.dim != 2) throw InputError("weights_2d requires d=2");
    if (n < 3) throw InputError("weights_2d: need at least 3 points");
    auto sw = detail::build_angular_sweep(P, q);

    // range-add of (c_a - 1) over a's forward arc, folded from the doubled order
    std::vector<std::int64_t> diff(2 * n + 1, 0);
    for (int a = 0; a < n; ++a) {
        const int c = sw.fwd[a];
        if (c >= 1) {
            diff[a + 1] += c - 1;
            diff[a + 1 + c] -= c - 1;
        }
    }
    std::vector<std::int64_t> pre(2 * n, 0);
    std::int64_t acc = 0;
    for (int i = 0; i < 2 * n; ++i) {
        acc += diff[i];
        pre[i] = acc;
    }

    WeightVector wv;
    wv.weights.assign(n, 0);
    const std::uint64_t all_pairs = binom(n - 1, 2);
    std::uint64_t total = 0;
    for (int pos = 0; pos < n; ++pos) {
        const std::int64_t back = pre[pos] + (pos + n < 2 * n ? pre[pos + n] : 0);
        const std::int64_t w = static_cast<std::int64_t>(all_pairs) -
                               static_cast<std::int64_t>(binom(sw.fwd[pos], 2)) - back;
        if (w < 0) throw std::logic_error("weights_2d: negative weight");
        wv.weights[sw.order[pos]] = static_cast<std::uint64_t>(w);
        total += static_cast<std::uint64_t>(w);
    }

    // internal consistency with the complementary count
    std::uint64_t missing = 0;
    for (int i = 0; i < n; ++i) missing += binom(sw.fwd[i], 2);
    if (total != 3 * (binom(n, 3) - missing))
        throw std::logic_error("weights_2d: weight total mismatch");
    return wv;
}

// Exact counts of P \ {p} strictly on each side of the line through p and q.
// n1 is the side to the left of the directed line p -> q.
inline SplitCounts split_counts(const PointSet& P, const Point& q, int p_index) {
    const int n = P.size();
    if (P.dim != 2) throw InputError("split_counts requires d=2");
    if (p_index < 0 || p_index >= n) throw InputError("split_counts: bad index");
    SplitCounts sc;
    const double* pp = P[p_index].data();
    const double* qp = q.data();
    for (int i = 0; i < n; ++i) {
        if (i == p_index) continue;
        const double* pts[3] = {pp, qp, P[i].data()};
        const int s = orientation(pts, 2);
        if (s == 0)
            throw DegeneracyError("split_counts: point on the line through p and q",
                                  {p_index, i, n});
        if (s > 0) ++sc.n1; else ++sc.n2;
    }
    return sc;
}

// ---------------------------------------------------------------------------
// Tukey depth
// ---------------------------------------------------------------------------

namespace detail {

// Builds a halfspace through q whose strict positive side is the open angular
// arc just beside the direction of P[j], validated by an exact recount.
inline Halfspace tilt_witness(const PointSet& P, const Point& q, int j, bool left_side,
                              std::uint64_t expected) {
    const int n = P.size();
    double dx = P[j][0] - q[0];
    double dy = P[j][1] - q[1];
    const double len = std::hypot(dx, dy);
    dx /= len;
    dy /= len;

    double min_cross = 2.0;
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        double ex = P[k][0] - q[0];
        double ey = P[k][1] - q[1];
        const double el = std::hypot(ex, ey);
        const double cr = std::abs(dx * (ey / el) - dy * (ex / el));
        if (cr > 0 && cr < min_cross) min_cross = cr;
    }
    double delta = (min_cross <= 1.0 ? min_cross : 1.0) / 2.0;

    for (int attempt = 0; attempt < 64; ++attempt, delta /= 2.0) {
        std::vector<double> nrm(2);
        if (left_side) {
            nrm[0] = -dy - delta * dx;
            nrm[1] = dx - delta * dy;
        } else {
            nrm[0] = dy - delta * dx;
            nrm[1] = -dx - delta * dy;
        }
        const double off = nrm[0] * q[0] + nrm[1] * q[1];
        std::uint64_t cnt = 0;
        bool boundary = false;
        for (int k = 0; k < n; ++k) {
            const int s = linear_form_sign(nrm.data(), P[k].data(), q.data(), 2);
            if (s == 0) { boundary = true; break; }
            if (s > 0) ++cnt;
        }
        if (!boundary && cnt == expected) return Halfspace{nrm, off, true};
    }
    throw std::logic_error("tukey witness construction failed to validate");
}

} // namespace detail

// Exact 2D Tukey depth by sweeping a directed line through q over all
// critical directions; returns the minimum with a validated witness.
inline TukeyResult tukey_2d(const PointSet& P, const Point& q) {
    const int n = P.size();
    if (P.dim != 2) throw InputError("tukey_2d requires d=2");
    if (n == 0) return TukeyResult{0, Halfspace{{1.0, 0.0}, q[0], true}};
    auto sw = detail::build_angular_sweep(P, q);

    std::uint64_t best = static_cast<std::uint64_t>(n);
    int best_pos = 0;
    bool best_left = true;
    for (int pos = 0; pos < n; ++pos) {
        const std::uint64_t left = static_cast<std::uint64_t>(sw.fwd[pos]);
        const std::uint64_t right = static_cast<std::uint64_t>(n - 1) - left;
        if (left < best) {
            best = left;
            best_pos = pos;
            best_left = true;
        }
        if (right < best) {
            best = right;
            best_pos = pos;
            best_left = false;
        }
    }
    TukeyResult res;
    res.value = best;
    res.witness = detail::tilt_witness(P, q, sw.order[best_pos], best_left, best);
    return res;
}

// Exact Tukey depth for d <= 4 by enumerating hyperplanes through q spanned
// by d-1 points and counting both strict sides; sufficiency follows from the
// standard perturbation argument.
inline TukeyResult tukey_small_d(const PointSet& P, const Point& q,
                                 std::uint64_t cap = default_work_cap()) {
    const int n = P.size();
    const int d = P.dim;
    if (d < 2 || d > 4) throw InputError("tukey_small_d requires 2 <= d <= 4");
    if (binom_ld(n, d - 1) * n > static_cast<long double>(cap))
        throw CapExceededError("tukey_small_d: enumeration exceeds the work cap");
    if (n == 0) {
        std::vector<double> nrm(d, 0.0);
        nrm[0] = 1.0;
        return TukeyResult{0, Halfspace{nrm, q[0], true}};
    }

    std::uint64_t best = static_cast<std::uint64_t>(n);
    std::vector<int> best_subset;

    if (n < d - 1) {
        // too few points to span a critical hyperplane; under general
        // position q is outside conv(P), so the depth is zero
        best = 0;
        best_subset.resize(n);
        std::iota(best_subset.begin(), best_subset.end(), 0);
    } else {
        std::vector<int> c(d - 1);
        std::iota(c.begin(), c.end(), 0);
        const double* pts[detail::kMaxDim + 1];
        while (true) {
            std::uint64_t pos = 0, neg = 0;
            pts[0] = q.data();
            for (int j = 0; j < d - 1; ++j) pts[j + 1] = P[c[j]].data();
            for (int i = 0; i < n; ++i) {
                bool spanning = false;
                for (int j = 0; j < d - 1; ++j) {
                    if (c[j] == i) { spanning = true; break; }
                }
                if (spanning) continue;
                pts[d] = P[i].data();
                const int s = orientation(pts, d);
                if (s == 0) {
                    std::vector<int> bad(c.begin(), c.end());
                    bad.push_back(i);
                    bad.push_back(n);
                    throw DegeneracyError("tukey_small_d: affinely dependent tuple with q", bad);
                }
                if (s > 0) ++pos; else ++neg;
            }
            if (pos < best) {
                best = pos;
                best_subset.assign(c.begin(), c.end());
            }
            if (neg < best) {
                best = neg;
                best_subset.assign(c.begin(), c.end());
            }
            int i = d - 2;
            while (i >= 0 && c[i] == n - (d - 1 - i)) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < d - 1; ++j) c[j] = c[j - 1] + 1;
        }
    }

    // witness: normal orthogonal to the spanning points, tilted to exclude them
    const int span = static_cast<int>(best_subset.size());
    Eigen::MatrixXd S(std::max(span, 1), d);
    S.setZero();
    for (int r = 0; r < span; ++r)
        for (int col = 0; col < d; ++col) S(r, col) = P[best_subset[r]][col] - q[col];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd nrm = svd.matrixV().col(d - 1);
    Eigen::VectorXd tilt = Eigen::VectorXd::Zero(d);
    if (span > 0) {
        // minimum-norm solution of S m = 1
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(span);
        tilt = svd.solve(ones);
    }

    std::vector<double> w(d);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double delta = std::pow(0.5, attempt + 4);
        for (int sgn = 0; sgn < 2; ++sgn) {
            const double s0 = sgn == 0 ? 1.0 : -1.0;
            for (int col = 0; col < d; ++col) w[col] = s0 * nrm(col) - delta * tilt(col);
            std::uint64_t cnt = 0;
            bool boundary = false;
            for (int i = 0; i < n; ++i) {
                const int s = linear_form_sign(w.data(), P[i].data(), q.data(), d);
                if (s == 0) { boundary = true; break; }
                if (s > 0) ++cnt;
            }
            if (!boundary && cnt == best) {
                double off = 0.0;
                for (int col = 0; col < d; ++col) off += w[col] * q[col];
                return TukeyResult{best, Halfspace{w, off, true}};
            }
        }
    }
    throw std::logic_error("tukey_small_d witness construction failed to validate");
}

// ---------------------------------------------------------------------------
// flat range counting and the projection algorithm
// ---------------------------------------------------------------------------

// Exact count of flat points inside the closed query simplex; the query is
// given by d vertices spanning a (d-1)-simplex in the flat.
inline std::uint64_t simplex_range_count(const PointSet& flat_points,
                                         const std::vector<Point>& query_simplex) {
    const int fd = flat_points.dim;
    if (static_cast<int>(query_simplex.size()) != fd + 1)
        throw InputError("simplex_range_count: query needs fd+1 vertices");
    const double* verts[detail::kMaxDim + 1];
    for (int i = 0; i <= fd; ++i) verts[i] = query_simplex[i].data();
    if (orientation(verts, fd) == 0)
        throw DegeneracyError("simplex_range_count: degenerate query simplex");
    std::uint64_t cnt = 0;
    for (int i = 0; i < flat_points.size(); ++i) {
        if (simplex_contains(verts, flat_points[i].data(), fd)) ++cnt;
    }
    return cnt;
}

namespace detail {

// Membership of x in the open cone spanned from q by the reflected rays of
// the subset points; all signs are certified against the original input.
struct ReflectedCone {
    const PointSet* P;
    const Point* q;
    std::vector<int> subset;
    int base_sign = 0;

    ReflectedCone(const PointSet& ps, const Point& query, std::vector<int> idx)
        : P(&ps), q(&query), subset(std::move(idx)) {
        const int d = ps.dim;
        DiffRow rows[kMaxDim];
        for (int k = 0; k < d; ++k) rows[k] = DiffRow{q->data(), (*P)[subset[k]].data()};
        base_sign = sign_det_diff(rows, d);
    }

    bool degenerate() const { return base_sign == 0; }

    bool contains(int point_index) const {
        const int d = P->dim;
        DiffRow rows[kMaxDim];
        for (int k = 0; k < d; ++k) rows[k] = DiffRow{q->data(), (*P)[subset[k]].data()};
        for (int k = 0; k < d; ++k) {
            const DiffRow saved = rows[k];
            rows[k] = DiffRow{(*P)[point_index].data(), q->data()};
            const int s = sign_det_diff(rows, d);
            rows[k] = saved;
            if (s != base_sign) return false;
        }
        return true;
    }
};

} // namespace detail

// Exact depth via central projection: project P onto two parallel
// hyperplanes through q +- normal, then for every d-subset count, per plane,
// the projected points inside the cone of reflected rays. The grand total
// counts each containing simplex exactly d+1 times.
inline DepthResult exact_projected(const PointSet& P, const Point& q,
                                   std::uint64_t cap = default_work_cap()) {
    const int n = P.size();
    const int d = P.dim;
    if (d < 2) throw InputError("exact_projected requires d >= 2");
    if (n < d + 1) throw InputError("exact_projected: need at least d+1 points");
    if (binom_ld(n, d) * (n - d) > static_cast<long double>(cap))
        throw CapExceededError("exact_projected: tuple enumeration exceeds the work cap");

    // deterministic normal attempts: coordinate axes, then seeded directions
    ProjectionPair pair;
    bool projected = false;
    std::string last_error;
    Rng rng(0x706a7263746e6f72ull);
    for (int attempt = 0; attempt < d + 32 && !projected; ++attempt) {
        std::vector<double> normal(d, 0.0);
        if (attempt < d) {
            normal[d - 1 - attempt] = 1.0;
        } else {
            for (int j = 0; j < d; ++j) normal[j] = rng.normal();
        }
        try {
            pair = central_project(P, q, normal);
            projected = true;
        } catch (const DegeneracyError& e) {
            last_error = e.what();
        }
    }
    if (!projected) throw DegeneracyError("exact_projected: " + last_error);

    std::vector<int> side(n, 0); // +1 upper plane, -1 lower plane
    for (int i : pair.upper_origin) side[i] = 1;
    for (int i : pair.lower_origin) side[i] = -1;

    std::uint64_t total_upper = 0, total_lower = 0, work = 0;
    std::vector<int> c(d);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        detail::ReflectedCone cone(P, q, c);
        if (cone.degenerate()) {
            std::vector<int> bad(c.begin(), c.end());
            bad.push_back(n);
            throw DegeneracyError("exact_projected: degenerate ray cone", bad);
        }
        for (int i = 0; i < n; ++i) {
            bool in_subset = false;
            for (int j = 0; j < d; ++j) {
                if (c[j] == i) { in_subset = true; break; }
            }
            if (in_subset) continue;
            ++work;
            if (cone.contains(i)) {
                if (side[i] > 0) ++total_upper; else ++total_lower;
            }
        }
        int i = d - 1;
        while (i >= 0 && c[i] == n - (d - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
    }

    const std::uint64_t total = total_upper + total_lower;
    if (total % static_cast<std::uint64_t>(d + 1) != 0)
        throw std::logic_error("exact_projected: tuple total not divisible by d+1");

    DepthResult res;
    res.value = static_cast<double>(total / static_cast<std::uint64_t>(d + 1));
    res.method = Method::projected;
    res.work = work;
    return res;
}

// ---------------------------------------------------------------------------
// parity
// ---------------------------------------------------------------------------

enum class Parity { even, odd };

inline bool binom_is_odd(std::uint64_t n, std::uint64_t k) {
    return (k & (n - k)) == 0; // no carries in base 2
}

// Parity of the depth of any interior query point, from the regularity of the
// simplicial graph: even when n-d-1 is odd or C(n,d) is even, odd otherwise.
inline Parity parity_predicted(int n, int d) {
    if (n < d + 1) throw InputError("parity_predicted: need n >= d+1");
    const int r = n - d - 1;
    if (r % 2 == 1) return Parity::even;
    if (!binom_is_odd(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)))
        return Parity::even;
    return Parity::odd;
}

inline Parity parity_of(std::uint64_t sigma) {
    return (sigma % 2 == 0) ? Parity::even : Parity::odd;
}

} // namespace depthkit
