#pragma once

// Sign-exact determinant predicates on floating-point input.
//
// Every predicate first evaluates in double precision together with a running
// magnitude bound; if the result clears the bound the sign is certified.
// Otherwise the computation is repeated in exact rational arithmetic built
// from the original coordinates, so boundary and degenerate cases are decided
// deterministically.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace depthkit {

using Rational = boost::multiprecision::cpp_rational;

// A matrix row given as an exact difference of two coordinate vectors.
struct DiffRow {
    const double* a;
    const double* b; // row = a - b; b == nullptr means row = a
};

namespace detail {

inline constexpr double kEps = 1.1102230246251565e-16; // half machine epsilon
inline constexpr int kMaxDim = 8;

inline double entry(const DiffRow& r, int j) {
    return r.b ? r.a[j] - r.b[j] : r.a[j];
}

inline Rational entry_exact(const DiffRow& r, int j) {
    Rational v(r.a[j]);
    if (r.b) v -= Rational(r.b[j]);
    return v;
}

// Recursive cofactor expansion carrying the sum of absolute term magnitudes.
// cols is the active-column mask; k entries are in use.
inline void cofactor_det(const double* m, int n, const int* cols, int k,
                         int row, double& val, double& mag) {
    if (k == 1) {
        val = m[row * n + cols[0]];
        mag = std::abs(val);
        return;
    }
    val = 0.0;
    mag = 0.0;
    int sub[kMaxDim];
    double sign = 1.0;
    for (int j = 0; j < k; ++j) {
        int t = 0;
        for (int c = 0; c < k; ++c)
            if (c != j) sub[t++] = cols[c];
        double v, g;
        cofactor_det(m, n, sub, k - 1, row + 1, v, g);
        const double a = m[row * n + cols[j]];
        val += sign * a * v;
        mag += std::abs(a) * g;
        sign = -sign;
    }
}

inline int exact_det_sign(std::vector<std::vector<Rational>>& m) {
    const int n = static_cast<int>(m.size());
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (m[r][col] != 0) { piv = r; break; }
        }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    for (int i = 0; i < n; ++i) {
        if (m[i][i] < 0) sign = -sign;
    }
    return sign;
}

inline int sign_det_exact(const DiffRow* rows, int k) {
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = entry_exact(rows[i], j);
    return exact_det_sign(m);
}

// Error coefficients: generous by design; a failed filter only costs a
// rational re-evaluation.
inline double filter_coeff(int k) {
    switch (k) {
        case 1: return 4.0 * kEps;
        case 2: return 16.0 * kEps;
        case 3: return 64.0 * kEps;
        default: {
            double f = 4.0 * k;
            for (int i = 2; i <= k; ++i) f *= i;
            return f * kEps;
        }
    }
}

} // namespace detail

// Sign of det of the k x k matrix whose rows are the given differences.
inline int sign_det_diff(const DiffRow* rows, int k) {
    using namespace detail;
    if (k == 1) {
        const double v = entry(rows[0], 0);
        if (v > 0) return 1;
        if (v < 0) return -1;
        // a - b rounds to zero only when a == b, so zero is exact here.
        return rows[0].b ? 0 : 0;
    }
    double m[kMaxDim * kMaxDim];
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i * k + j] = entry(rows[i], j);

    double val = 0.0, mag = 0.0;
    if (k == 2) {
        const double t1 = m[0] * m[3];
        const double t2 = m[1] * m[2];
        val = t1 - t2;
        mag = std::abs(t1) + std::abs(t2);
    } else if (k == 3) {
        const double c0 = m[4] * m[8] - m[5] * m[7];
        const double c1 = m[3] * m[8] - m[5] * m[6];
        const double c2 = m[3] * m[7] - m[4] * m[6];
        val = m[0] * c0 - m[1] * c1 + m[2] * c2;
        mag = std::abs(m[0]) * (std::abs(m[4] * m[8]) + std::abs(m[5] * m[7])) +
              std::abs(m[1]) * (std::abs(m[3] * m[8]) + std::abs(m[5] * m[6])) +
              std::abs(m[2]) * (std::abs(m[3] * m[7]) + std::abs(m[4] * m[6]));
    } else {
        int cols[kMaxDim];
        for (int j = 0; j < k; ++j) cols[j] = j;
        cofactor_det(m, k, cols, k, 0, val, mag);
    }

    const double bound = filter_coeff(k) * mag;
    if (val > bound) return 1;
    if (val < -bound) return -1;
    if (mag == 0.0) return 0; // whole matrix identically zero
    return sign_det_exact(rows, k);
}

// Sign of w . (a - b), certified.
inline int linear_form_sign(const double* w, const double* a, const double* b, int k) {
    double val = 0.0, mag = 0.0;
    for (int j = 0; j < k; ++j) {
        const double d = b ? a[j] - b[j] : a[j];
        const double t = w[j] * d;
        val += t;
        mag += std::abs(t);
    }
    const double bound = (4.0 * k) * detail::kEps * mag;
    if (val > bound) return 1;
    if (val < -bound) return -1;
    if (mag == 0.0) return 0;
    Rational acc = 0;
    for (int j = 0; j < k; ++j) {
        Rational d(a[j]);
        if (b) d -= Rational(b[j]);
        acc += Rational(w[j]) * d;
    }
    if (acc > 0) return 1;
    if (acc < 0) return -1;
    return 0;
}

} // namespace depthkit
