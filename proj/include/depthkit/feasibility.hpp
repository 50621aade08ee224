#pragma once

// Convex-combination feasibility: decide whether q lies in the convex hull of
// a set of points, returning either a support of at most d+1 points or a
// strictly separating direction.
//
// The fast path is a dense phase-1 simplex in doubles whose verdict is then
// certified exactly (support via simplex membership, separation via signed
// linear forms). When certification fails the same phase-1 runs in rational
// arithmetic with Bland's rule, which is exact and terminating.

#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace depthkit {

struct HullMembership {
    bool inside = false;
    std::vector<int> support;        // positions into the supplied index list
    std::vector<double> separator;   // w with w.(p - q) > 0 for all points, when outside
    bool certified = false;
};

namespace detail {

template <typename Scalar>
struct Phase1Result {
    bool feasible = false;
    std::vector<int> support;          // column indices with positive value
    std::vector<Scalar> dual;          // row multipliers certifying infeasibility
};

// Minimize the sum of artificials for {lambda >= 0, A lambda = b}.
// A is m x ncols in row-major order. Bland's rule; `tol` is zero for exact
// scalars.
template <typename Scalar>
Phase1Result<Scalar> phase1_simplex(const std::vector<Scalar>& A,
                                    const std::vector<Scalar>& b, int m,
                                    int ncols, Scalar tol) {
    const int total = ncols + m; // structural + artificial
    // tableau rows: m constraint rows + objective row; columns: total + rhs
    std::vector<Scalar> T(static_cast<std::size_t>(m + 1) * (total + 1), Scalar(0));
    auto at = [&](int r, int c) -> Scalar& {
        return T[static_cast<std::size_t>(r) * (total + 1) + c];
    };
    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) {
        const bool flip = b[r] < 0;
        for (int c = 0; c < ncols; ++c) at(r, c) = flip ? -A[static_cast<std::size_t>(r) * ncols + c]
                                                        : A[static_cast<std::size_t>(r) * ncols + c];
        at(r, ncols + r) = Scalar(1);
        at(r, total) = flip ? -b[r] : b[r];
        basis[r] = ncols + r;
    }
    // objective: maximize -(sum of artificials); reduced-cost row starts as
    // the sum of the constraint rows over structural columns.
    for (int c = 0; c <= total; ++c) {
        Scalar s(0);
        for (int r = 0; r < m; ++r) s += at(r, c);
        at(m, c) = s;
    }
    for (int r = 0; r < m; ++r) at(m, ncols + r) = Scalar(0);

    const int max_iter = 64 * (m + ncols) + 1024;
    for (int iter = 0; iter < max_iter; ++iter) {
        int enter = -1;
        for (int c = 0; c < total; ++c) { // Bland: first improving column
            if (at(m, c) > tol) { enter = c; break; }
        }
        if (enter < 0) break;
        int leave = -1;
        for (int r = 0; r < m; ++r) {
            if (at(r, enter) > tol) {
                if (leave < 0) {
                    leave = r;
                    continue;
                }
                const Scalar lhs = at(r, total) * at(leave, enter);
                const Scalar rhs = at(leave, total) * at(r, enter);
                if (lhs < rhs || (lhs == rhs && basis[r] < basis[leave])) leave = r;
            }
        }
        if (leave < 0) break; // unbounded cannot happen in phase 1
        const Scalar piv = at(leave, enter);
        for (int c = 0; c <= total; ++c) at(leave, c) /= piv;
        for (int r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const Scalar f = at(r, enter);
            if (f == Scalar(0)) continue;
            for (int c = 0; c <= total; ++c) at(r, c) -= f * at(leave, c);
        }
        basis[leave] = enter;
    }

    Phase1Result<Scalar> res;
    Scalar objective = at(m, total); // remaining infeasibility
    Scalar bsum(0);
    for (int r = 0; r < m; ++r) bsum += (b[r] < 0 ? -b[r] : b[r]);
    Scalar feas_tol = tol * (Scalar(64) * bsum + Scalar(64));
    if (objective <= feas_tol && objective >= -feas_tol) {
        res.feasible = true;
        for (int r = 0; r < m; ++r) {
            if (basis[r] < ncols && at(r, total) > tol) res.support.push_back(basis[r]);
        }
        std::sort(res.support.begin(), res.support.end());
    } else {
        res.feasible = false;
        res.dual.resize(m);
        // Farkas multipliers: the final objective-row entry on artificial r
        // equals y_r - 1, with y'A <= 0 on structural columns and y'b > 0.
        for (int r = 0; r < m; ++r) res.dual[r] = Scalar(1) + at(m, ncols + r);
    }
    return res;
}

} // namespace detail

// Membership of q in conv({points[idx] : idx in subset}).
// When `certify` is set the verdict is exact; otherwise a failed
// certification degrades to inside=true without the certificate.
inline HullMembership hull_membership(const PointSet& P, const std::vector<int>& subset,
                                      const Point& q, bool certify = true) {
    const int d = P.dim;
    const int m = d + 1;
    const int ncols = static_cast<int>(subset.size());
    HullMembership out;
    if (ncols == 0) {
        out.inside = false;
        out.separator.assign(d, 0.0);
        out.separator[0] = 1.0;
        out.certified = true;
        return out;
    }

    std::vector<double> A(static_cast<std::size_t>(m) * ncols);
    std::vector<double> b(m);
    std::vector<bool> flipped(m, false);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < ncols; ++c) A[static_cast<std::size_t>(r) * ncols + c] = P[subset[c]][r];
        b[r] = q[r];
    }
    for (int c = 0; c < ncols; ++c) A[static_cast<std::size_t>(d) * ncols + c] = 1.0;
    b[d] = 1.0;
    for (int r = 0; r < m; ++r) flipped[r] = b[r] < 0;

    auto extract_separator = [&](const std::vector<double>& dual) {
        // dual y satisfies y.col_j <= 0 for structural columns and y.b > 0,
        // where rows were sign-flipped to make b nonnegative.
        std::vector<double> y(m);
        for (int r = 0; r < m; ++r) y[r] = flipped[r] ? -dual[r] : dual[r];
        std::vector<double> w(d);
        for (int r = 0; r < d; ++r) w[r] = -y[r];
        return w;
    };

    auto verify_separator = [&](const std::vector<double>& w) {
        for (int c = 0; c < ncols; ++c) {
            if (linear_form_sign(w.data(), P[subset[c]].data(), q.data(), d) <= 0)
                return false;
        }
        return true;
    };

    auto res = detail::phase1_simplex<double>(A, b, m, ncols, 1e-11);
    if (res.feasible) {
        out.inside = true;
        out.support = res.support;
        if (!certify) return out;
        // certify: pad the support to d+1 indices and test membership exactly
        std::vector<int> idx = res.support;
        for (int c = 0; c < ncols && static_cast<int>(idx.size()) < m; ++c) {
            if (!std::binary_search(res.support.begin(), res.support.end(), c)) idx.push_back(c);
        }
        if (static_cast<int>(idx.size()) == m) {
            std::sort(idx.begin(), idx.end());
            std::vector<int> pidx(m);
            for (int i = 0; i < m; ++i) pidx[i] = subset[idx[i]];
            try {
                if (simplex_contains(P, pidx, q)) {
                    out.support = idx;
                    out.certified = true;
                    return out;
                }
            } catch (const DegeneracyError&) {
                // fall through to exact solve
            }
        }
    } else {
        std::vector<double> w = extract_separator(res.dual);
        if (verify_separator(w)) {
            out.inside = false;
            out.separator = std::move(w);
            out.certified = true;
            return out;
        }
        if (!certify) {
            out.inside = true; // conservative: treat unprovable separation as inside
            return out;
        }
    }

    // exact path
    std::vector<Rational> Ar(static_cast<std::size_t>(m) * ncols);
    std::vector<Rational> br(m);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < ncols; ++c) Ar[static_cast<std::size_t>(r) * ncols + c] = Rational(P[subset[c]][r]);
        br[r] = Rational(q[r]);
    }
    for (int c = 0; c < ncols; ++c) Ar[static_cast<std::size_t>(d) * ncols + c] = 1;
    br[d] = 1;
    auto ex = detail::phase1_simplex<Rational>(Ar, br, m, ncols, Rational(0));
    out.certified = true;
    if (ex.feasible) {
        out.inside = true;
        out.support = ex.support;
        // membership is exact; pad deterministically for callers wanting d+1
        for (int c = 0; c < ncols && static_cast<int>(out.support.size()) < m; ++c) {
            if (!std::binary_search(ex.support.begin(), ex.support.end(), c))
                out.support.push_back(c);
        }
        std::sort(out.support.begin(), out.support.end());
    } else {
        out.inside = false;
        std::vector<double> w(d);
        std::vector<Rational> y(m);
        for (int r = 0; r < m; ++r) y[r] = flipped[r] ? -ex.dual[r] : ex.dual[r];
        for (int r = 0; r < d; ++r) w[r] = -static_cast<double>(y[r]);
        out.separator = std::move(w);
        // best-effort double separator; the inside/outside verdict itself is exact
        out.certified = verify_separator(out.separator);
        out.inside = false;
    }
    return out;
}

inline HullMembership hull_membership(const PointSet& P, const Point& q, bool certify = true) {
    std::vector<int> all(P.size());
    std::iota(all.begin(), all.end(), 0);
    return hull_membership(P, all, q, certify);
}

} // namespace depthkit
