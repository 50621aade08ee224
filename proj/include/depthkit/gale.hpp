#pragma once

// Gale transform and the facet <-> containing-simplex bijection check: a
// (d+1)-subset of P contains the origin in its convex hull iff the duals of
// the complementary points span a facet of the dual hull.

#include "depthkit/depth_enum.hpp"
#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/predicates.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <numeric>
#include <vector>

namespace depthkit {

struct GaleDual {
    // n x (n-d-1); row i is the dual of point i
    std::vector<std::vector<double>> dual_points;
    int source_n = 0;
    int source_d = 0;

    int dual_dim() const { return source_n - source_d - 1; }
};

// Orthonormal basis of the null space of the lifted matrix [coords; 1].
// The query point is the origin; callers translate beforehand.
inline GaleDual gale_transform(const PointSet& P) {
    const int n = P.size();
    const int d = P.dim;
    if (n < d + 2) throw InputError("gale_transform: need n >= d+2");
    {
        const Point origin(d, 0.0);
        if (!find_seed_simplex(P, origin))
            throw InputError("gale_transform: origin must lie strictly inside conv(P)");
    }

    Eigen::MatrixXd A(d + 1, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < d; ++r) A(r, c) = P[c][r];
        A(d, c) = 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(d) < 1e-12 * sv(0))
        throw DegeneracyError("gale_transform: lifted matrix is rank deficient");

    GaleDual g;
    g.source_n = n;
    g.source_d = d;
    g.dual_points.assign(n, std::vector<double>(n - d - 1));
    const Eigen::MatrixXd& V = svd.matrixV();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - d - 1; ++j) g.dual_points[i][j] = V(i, d + 1 + j);
    return g;
}

struct FacetCorrespondence {
    std::uint64_t containing_subsets = 0;
    std::uint64_t dual_facets = 0;
    bool equal = false;
};

namespace detail {

// Exact rational null-space basis of the lifted matrix (any basis preserves
// the dual combinatorics).
inline std::vector<std::vector<Rational>> rational_null_space(const PointSet& P) {
    const int n = P.size();
    const int d = P.dim;
    const int rows = d + 1;
    std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(n));
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < d; ++r) M[r][c] = Rational(P[c][r]);
        M[d][c] = 1;
    }
    // reduced row echelon form
    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int c = 0; c < n && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (M[r][c] != 0) { piv = r; break; }
        }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        const Rational pv = M[rank][c];
        for (int j = 0; j < n; ++j) M[rank][j] /= pv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || M[r][c] == 0) continue;
            const Rational f = M[r][c];
            for (int j = 0; j < n; ++j) M[r][j] -= f * M[rank][j];
        }
        pivot_col[rank] = c;
        ++rank;
    }
    if (rank != rows) throw DegeneracyError("gale: lifted matrix is rank deficient");

    std::vector<char> is_pivot(n, 0);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = 1;
    std::vector<std::vector<Rational>> basis; // each vector has n entries
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[c] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -M[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Does the k-subset span a supporting hyperplane of the dual hull with every
// other dual point strictly on one side?
template <typename Scalar, typename Row>
bool facet_test_generic(const std::vector<Row>& duals, const std::vector<int>& subset,
                        int k, bool& ambiguous, double rel_tol) {
    // hyperplane normal: null vector of the (k-1) x k difference matrix
    if (k == 1) {
        // 1D: a facet is an extreme point
        const Scalar x0 = duals[subset[0]][0];
        bool any_lower = false, any_upper = false;
        for (std::size_t i = 0; i < duals.size(); ++i) {
            if (static_cast<int>(i) == subset[0]) continue;
            const Scalar v = duals[i][0] - x0;
            if (v > 0) any_upper = true;
            else if (v < 0) any_lower = true;
            else return false; // coincident duals
        }
        return !(any_lower && any_upper);
    }
    return false; // handled by the specialized paths below
}

inline bool facet_test_double(const std::vector<std::vector<double>>& duals,
                              const std::vector<int>& subset, int k, bool& ambiguous,
                              double rel_tol) {
    ambiguous = false;
    if (k == 1) return facet_test_generic<double>(duals, subset, k, ambiguous, rel_tol);

    Eigen::MatrixXd D(k - 1, k);
    for (int r = 1; r < k; ++r)
        for (int c = 0; c < k; ++c)
            D(r - 1, c) = duals[subset[r]][c] - duals[subset[0]][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
    if (k >= 2) {
        const auto& sv = svd.singularValues();
        if (sv.size() >= k - 1 && sv(k - 2) < 1e-10 * (sv(0) + 1e-300)) {
            ambiguous = true; // subset nearly affinely dependent
            return false;
        }
    }
    Eigen::VectorXd nrm = svd.matrixV().col(k - 1);

    double scale = 0.0;
    for (std::size_t i = 0; i < duals.size(); ++i) {
        double mag = 0.0;
        for (int c = 0; c < k; ++c) mag += std::abs(duals[i][c]);
        scale = std::max(scale, mag);
    }
    const double tol = rel_tol * (scale + 1.0);

    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < duals.size(); ++i) {
        bool in_subset = false;
        for (int sidx : subset) {
            if (static_cast<int>(i) == sidx) { in_subset = true; break; }
        }
        if (in_subset) continue;
        double v = 0.0;
        for (int c = 0; c < k; ++c) v += nrm(c) * (duals[i][c] - duals[subset[0]][c]);
        if (std::abs(v) <= tol) {
            ambiguous = true;
            return false;
        }
        if (v > 0) any_pos = true; else any_neg = true;
    }
    return !(any_pos && any_neg);
}

inline bool facet_test_exact(const std::vector<std::vector<Rational>>& duals,
                             const std::vector<int>& subset, int k) {
    if (k == 1) {
        bool dummy = false;
        return facet_test_generic<Rational>(duals, subset, k, dummy, 0.0);
    }
    // exact null vector of the (k-1) x k difference matrix via RREF
    std::vector<std::vector<Rational>> M(k - 1, std::vector<Rational>(k));
    for (int r = 1; r < k; ++r)
        for (int c = 0; c < k; ++c)
            M[r - 1][c] = duals[subset[r]][c] - duals[subset[0]][c];
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < k && rank < k - 1; ++c) {
        int piv = -1;
        for (int r = rank; r < k - 1; ++r) {
            if (M[r][c] != 0) { piv = r; break; }
        }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        const Rational pv = M[rank][c];
        for (int j = 0; j < k; ++j) M[rank][j] /= pv;
        for (int r = 0; r < k - 1; ++r) {
            if (r == rank || M[r][c] == 0) continue;
            const Rational f = M[r][c];
            for (int j = 0; j < k; ++j) M[r][j] -= f * M[rank][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    if (rank < k - 1) return false; // subset affinely dependent: no facet
    std::vector<Rational> nrm(k, Rational(0));
    {
        std::vector<char> is_pivot(k, 0);
        for (int c : pivot_col) is_pivot[c] = 1;
        int free_col = -1;
        for (int c = 0; c < k; ++c) {
            if (!is_pivot[c]) { free_col = c; break; }
        }
        nrm[free_col] = 1;
        for (int r = 0; r < rank; ++r) nrm[pivot_col[r]] = -M[r][free_col];
    }
    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < duals.size(); ++i) {
        bool in_subset = false;
        for (int sidx : subset) {
            if (static_cast<int>(i) == sidx) { in_subset = true; break; }
        }
        if (in_subset) continue;
        Rational v = 0;
        for (int c = 0; c < k; ++c) v += nrm[c] * (duals[i][c] - duals[subset[0]][c]);
        if (v == 0) return false; // not strictly one-sided
        if (v > 0) any_pos = true; else any_neg = true;
    }
    return !(any_pos && any_neg);
}

} // namespace detail

// Counts both sides of the bijection: (d+1)-subsets of P containing the
// origin (exact predicates) versus facets of the dual hull (double pass with
// a rational re-run whenever any margin is ambiguous).
inline FacetCorrespondence facet_correspondence_check(const PointSet& P) {
    const int n = P.size();
    const int d = P.dim;
    const int k = n - d - 1;
    if (k < 1)
        throw InputError("facet_correspondence_check: dual dimension n-d-1 is zero; "
                         "the dual of a bare simplex has no facets to count");
    if (k > 4)
        throw CapExceededError("facet_correspondence_check: dual dimension capped at 4");

    FacetCorrespondence fc;
    const Point origin(d, 0.0);

    std::vector<int> c(d + 1);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        if (simplex_contains(P, c, origin)) ++fc.containing_subsets;
        int i = d;
        while (i >= 0 && c[i] == n - (d + 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j <= d; ++j) c[j] = c[j - 1] + 1;
    }

    const GaleDual g = gale_transform(P);
    bool need_exact = false;
    std::uint64_t facets = 0;
    {
        std::vector<int> s(k);
        std::iota(s.begin(), s.end(), 0);
        while (true) {
            bool ambiguous = false;
            if (detail::facet_test_double(g.dual_points, s, k, ambiguous, 1e-9)) ++facets;
            if (ambiguous) { need_exact = true; break; }
            int i = k - 1;
            while (i >= 0 && s[i] == n - (k - i)) --i;
            if (i < 0) break;
            ++s[i];
            for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
        }
    }

    if (need_exact) {
        // rational null-space dual; the bijection is basis independent
        auto basis = detail::rational_null_space(P);
        std::vector<std::vector<Rational>> duals(n, std::vector<Rational>(k));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) duals[i][j] = basis[j][i];
        facets = 0;
        std::vector<int> s(k);
        std::iota(s.begin(), s.end(), 0);
        while (true) {
            if (detail::facet_test_exact(duals, s, k)) ++facets;
            int i = k - 1;
            while (i >= 0 && s[i] == n - (k - i)) --i;
            if (i < 0) break;
            ++s[i];
            for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
        }
    }

    fc.dual_facets = facets;
    fc.equal = fc.containing_subsets == fc.dual_facets;
    return fc;
}

} // namespace depthkit
