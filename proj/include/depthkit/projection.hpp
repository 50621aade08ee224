#pragma once

// Central projection of a point set from q onto two parallel hyperplanes at
// offsets +-1 along a chosen normal. Simplex membership of q is invariant
// under sliding points along rays from q, so depth is preserved.

#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace depthkit {

struct ProjectionPair {
    // in-plane coordinates, dimension d-1
    PointSet lower;
    PointSet upper;
    std::vector<int> lower_origin; // index into the source set
    std::vector<int> upper_origin;
    // the same points embedded in R^d, lying on the two hyperplanes
    PointSet lower_embedded;
    PointSet upper_embedded;

    std::vector<double> unit_normal;
    Point lower_plane_origin; // q - unit_normal
    Point upper_plane_origin; // q + unit_normal
    std::vector<std::vector<double>> basis; // d-1 orthonormal in-plane axes

    // flat coordinates of an arbitrary point lying on one of the planes
    Point to_flat(const Point& x, bool upper_plane) const {
        const Point& o = upper_plane ? upper_plane_origin : lower_plane_origin;
        Point y(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            double acc = 0.0;
            for (std::size_t c = 0; c < o.size(); ++c) acc += basis[j][c] * (x[c] - o[c]);
            y[j] = acc;
        }
        return y;
    }
};

inline ProjectionPair central_project(const PointSet& P, const Point& q,
                                      const std::vector<double>& normal) {
    const int d = P.dim;
    const int n = P.size();
    if (static_cast<int>(normal.size()) != d) throw InputError("central_project: normal dimension mismatch");
    double norm2 = 0.0;
    for (double v : normal) norm2 += v * v;
    if (norm2 == 0.0) throw InputError("central_project: zero normal");
    const double inv_norm = 1.0 / std::sqrt(norm2);

    ProjectionPair pair;
    pair.unit_normal.resize(d);
    for (int j = 0; j < d; ++j) pair.unit_normal[j] = normal[j] * inv_norm;

    pair.lower_plane_origin.resize(d);
    pair.upper_plane_origin.resize(d);
    for (int j = 0; j < d; ++j) {
        pair.lower_plane_origin[j] = q[j] - pair.unit_normal[j];
        pair.upper_plane_origin[j] = q[j] + pair.unit_normal[j];
    }

    // orthonormal in-plane frame from the Householder QR of the normal
    Eigen::MatrixXd nv(d, 1);
    for (int j = 0; j < d; ++j) nv(j, 0) = pair.unit_normal[j];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(nv);
    Eigen::MatrixXd Q = qr.householderQ();
    pair.basis.resize(d - 1, std::vector<double>(d));
    for (int c = 1; c < d; ++c)
        for (int r = 0; r < d; ++r) pair.basis[c - 1][r] = Q(r, c);

    pair.lower.dim = d - 1;
    pair.upper.dim = d - 1;
    pair.lower_embedded.dim = d;
    pair.upper_embedded.dim = d;

    for (int i = 0; i < n; ++i) {
        const int s = linear_form_sign(pair.unit_normal.data(), P[i].data(), q.data(), d);
        if (s == 0) {
            throw DegeneracyError(
                "central_project: point on the mid-plane through q; re-pick the normal", {i});
        }
        double t = 0.0;
        for (int j = 0; j < d; ++j) t += pair.unit_normal[j] * (P[i][j] - q[j]);
        const double scale = 1.0 / std::abs(t);
        Point emb(d);
        for (int j = 0; j < d; ++j) emb[j] = q[j] + (P[i][j] - q[j]) * scale;
        if (s > 0) {
            pair.upper_origin.push_back(i);
            pair.upper.push_back(pair.to_flat(emb, true));
            pair.upper_embedded.push_back(std::move(emb));
        } else {
            pair.lower_origin.push_back(i);
            pair.lower.push_back(pair.to_flat(emb, false));
            pair.lower_embedded.push_back(std::move(emb));
        }
    }
    return pair;
}

} // namespace depthkit
