#pragma once

// Core geometric types and the shared exact predicates: orientation,
// simplex membership, and the general-position check.

#include "depthkit/errors.hpp"
#include "depthkit/predicates.hpp"
#include "depthkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace depthkit {

using Point = std::vector<double>;

struct PointSet {
    int dim = 0;
    std::vector<Point> points;

    PointSet() = default;
    PointSet(int d, std::vector<Point> pts) : dim(d), points(std::move(pts)) {}

    int size() const { return static_cast<int>(points.size()); }
    const Point& operator[](int i) const { return points[i]; }
    Point& operator[](int i) { return points[i]; }

    void push_back(Point p) { points.push_back(std::move(p)); }

    PointSet subset(const std::vector<int>& idx) const {
        PointSet s;
        s.dim = dim;
        s.points.reserve(idx.size());
        for (int i : idx) s.points.push_back(points[i]);
        return s;
    }
};

// Closed/open halfspace {x : normal . x >= offset} (or > for open).
struct Halfspace {
    std::vector<double> normal;
    double offset = 0.0;
    bool closed = true;

    int side(const Point& x) const {
        // sign of normal . x - offset, certified
        double shifted_off = offset;
        std::vector<double> w(normal.size() + 1);
        std::vector<double> xx(normal.size() + 1);
        for (std::size_t j = 0; j < normal.size(); ++j) {
            w[j] = normal[j];
            xx[j] = x[j];
        }
        w[normal.size()] = -shifted_off;
        xx[normal.size()] = 1.0;
        return linear_form_sign(w.data(), xx.data(), nullptr,
                                static_cast<int>(w.size()));
    }
    bool contains(const Point& x) const {
        const int s = side(x);
        return closed ? s >= 0 : s > 0;
    }
};

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return static_cast<std::uint64_t>(r);
}

inline long double binom_ld(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0.0L;
    if (k > n - k) k = n - k;
    long double r = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (long double)(n - k + i) / (long double)i;
    return r;
}

// Orientation of dim+1 points in R^dim: the sign of the lifted determinant.
// Zero iff the points are affinely dependent.
inline int orientation(const double* const* pts, int dim) {
    DiffRow rows[detail::kMaxDim];
    for (int i = 0; i < dim; ++i) rows[i] = DiffRow{pts[i + 1], pts[0]};
    return sign_det_diff(rows, dim);
}

inline int orientation(const std::vector<const double*>& pts, int dim) {
    if (static_cast<int>(pts.size()) != dim + 1)
        throw InputError("orientation: expected dim+1 points");
    return orientation(pts.data(), dim);
}

inline int orientation(const PointSet& ps, const std::vector<int>& idx) {
    if (static_cast<int>(idx.size()) != ps.dim + 1)
        throw InputError("orientation: expected dim+1 indices");
    const double* pts[detail::kMaxDim + 1];
    for (std::size_t i = 0; i < idx.size(); ++i) pts[i] = ps[idx[i]].data();
    return orientation(pts, ps.dim);
}

// True iff q lies in the closed convex hull of the dim+1 vertices.
// Throws DegeneracyError if the vertices are affinely dependent.
inline bool simplex_contains(const double* const* verts, const double* q, int dim) {
    const int s = orientation(verts, dim);
    if (s == 0) throw DegeneracyError("simplex_contains: degenerate simplex");
    const double* work[detail::kMaxDim + 1];
    for (int i = 0; i <= dim; ++i) work[i] = verts[i];
    for (int i = 0; i <= dim; ++i) {
        work[i] = q;
        const int si = orientation(work, dim);
        work[i] = verts[i];
        if (si == -s) return false; // strictly outside facet i
    }
    return true;
}

inline bool simplex_contains(const PointSet& ps, const std::vector<int>& idx, const Point& q) {
    if (static_cast<int>(idx.size()) != ps.dim + 1)
        throw InputError("simplex_contains: expected dim+1 vertex indices");
    const double* verts[detail::kMaxDim + 1];
    for (std::size_t i = 0; i < idx.size(); ++i) verts[i] = ps[idx[i]].data();
    return simplex_contains(verts, q.data(), ps.dim);
}

struct GeneralPositionReport {
    bool in_general_position = false;
    bool exhaustive = false;       // which mode ran
    std::uint64_t tuples_checked = 0;
    std::vector<int> witness;      // an affinely dependent tuple, if found
                                   // (index == n refers to the query point)
    explicit operator bool() const { return in_general_position; }
};

// Checks that no dim+1 points of P u {q} are affinely dependent. Exhaustive
// when the tuple count is within `exhaustive_cap`, otherwise a seeded random
// spot-check of `spot_samples` tuples.
inline GeneralPositionReport general_position_check(
    const PointSet& P, const Point& q,
    std::uint64_t exhaustive_cap = 2000000,
    std::uint64_t spot_samples = 2000000,
    std::uint64_t seed = 0x9e3779b97f4a7c15ull) {
    const int n = P.size();
    const int d = P.dim;
    const int k = d + 1;
    GeneralPositionReport rep;

    std::vector<const double*> all(n + 1);
    for (int i = 0; i < n; ++i) all[i] = P[i].data();
    all[n] = q.data();

    auto dependent = [&](const std::vector<int>& tuple) {
        const double* pts[detail::kMaxDim + 1];
        for (int i = 0; i < k; ++i) pts[i] = all[tuple[i]];
        return orientation(pts, d) == 0;
    };

    const long double total = binom_ld(n + 1, k);
    if (total <= static_cast<long double>(exhaustive_cap)) {
        rep.exhaustive = true;
        std::vector<int> tuple(k);
        std::iota(tuple.begin(), tuple.end(), 0);
        if (n + 1 < k) {
            rep.in_general_position = true;
            return rep;
        }
        while (true) {
            ++rep.tuples_checked;
            if (dependent(tuple)) {
                rep.witness = tuple;
                return rep;
            }
            int i = k - 1;
            while (i >= 0 && tuple[i] == n - (k - 1 - i)) --i;
            if (i < 0) break;
            ++tuple[i];
            for (int j = i + 1; j < k; ++j) tuple[j] = tuple[j - 1] + 1;
        }
        rep.in_general_position = true;
        return rep;
    }

    rep.exhaustive = false;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < spot_samples; ++s) {
        std::vector<int> tuple = rng.sample_distinct(n + 1, k);
        ++rep.tuples_checked;
        if (dependent(tuple)) {
            rep.witness = tuple;
            return rep;
        }
    }
    rep.in_general_position = true;
    return rep;
}

} // namespace depthkit
