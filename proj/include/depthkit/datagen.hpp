#pragma once

// Seeded instance generators: random clouds, the cluster constructions whose
// depth and Tukey depth are known in closed form, and the heavy-point
// configuration that defeats naive half-sampling.

#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"
#include "depthkit/rng.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace depthkit {

enum class Family {
    uniform_ball,
    uniform_sphere_shell,
    cluster_upper_tight,
    cluster_lower_tight,
    figure1,
    annulus,
};

inline const char* to_string(Family f) {
    switch (f) {
        case Family::uniform_ball: return "uniform_ball";
        case Family::uniform_sphere_shell: return "uniform_sphere_shell";
        case Family::cluster_upper_tight: return "cluster_upper_tight";
        case Family::cluster_lower_tight: return "cluster_lower_tight";
        case Family::figure1: return "figure1";
        case Family::annulus: return "annulus";
    }
    return "?";
}

inline std::optional<Family> family_from_string(const std::string& s) {
    for (Family f : {Family::uniform_ball, Family::uniform_sphere_shell,
                     Family::cluster_upper_tight, Family::cluster_lower_tight,
                     Family::figure1, Family::annulus}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

struct GenSpec {
    Family family = Family::uniform_ball;
    int n = 30;          // cluster size for the tightness families
    int d = 2;
    int m = 2;           // small-cluster size where applicable
    std::uint64_t seed = 0;
    double perturb_scale = 1e-3;
};

struct GenMetadata {
    std::string family;
    int n = 0; // total points emitted
    int d = 0;
    int m = 0;
    std::uint64_t seed = 0;
    double perturb_scale = 0.0;
    std::optional<std::uint64_t> ideal_sigma;
    std::optional<std::uint64_t> ideal_tau;
    std::optional<int> heavy_index;
    std::string instance_id;
    bool gp_exhaustive = false;
    int resamples = 0;
};

struct Instance {
    PointSet points;
    Point q;
    GenMetadata meta;
};

namespace detail {

inline Point uniform_in_ball(Rng& rng, int d) {
    Point p(d);
    while (true) {
        double norm2 = 0.0;
        for (int j = 0; j < d; ++j) {
            p[j] = rng.normal();
            norm2 += p[j] * p[j];
        }
        if (norm2 > 0) {
            const double r = std::pow(rng.uniform01(), 1.0 / d) / std::sqrt(norm2);
            for (int j = 0; j < d; ++j) p[j] *= r;
            return p;
        }
    }
}

inline Point uniform_on_sphere(Rng& rng, int d) {
    Point p(d);
    while (true) {
        double norm2 = 0.0;
        for (int j = 0; j < d; ++j) {
            p[j] = rng.normal();
            norm2 += p[j] * p[j];
        }
        if (norm2 > 0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (int j = 0; j < d; ++j) p[j] *= inv;
            return p;
        }
    }
}

// centered regular simplex with unit-ish scale
inline std::vector<Point> regular_simplex_vertices(int d) {
    std::vector<Point> v(d + 1, Point(d, 0.0));
    for (int i = 0; i < d; ++i) v[i + 1][i] = 1.0;
    const double alpha = (1.0 - std::sqrt(static_cast<double>(d + 1))) / d;
    for (int j = 0; j < d; ++j) v[0][j] = alpha;
    Point centroid(d, 0.0);
    for (const auto& p : v)
        for (int j = 0; j < d; ++j) centroid[j] += p[j] / (d + 1);
    for (auto& p : v)
        for (int j = 0; j < d; ++j) p[j] -= centroid[j];
    return v;
}

inline Instance build_candidate(const GenSpec& spec, std::uint64_t attempt_seed) {
    Rng rng(attempt_seed);
    Instance inst;
    inst.points.dim = spec.d;
    inst.meta.family = to_string(spec.family);
    inst.meta.d = spec.d;
    inst.meta.m = spec.m;
    inst.meta.seed = spec.seed;
    inst.meta.perturb_scale = spec.perturb_scale;

    switch (spec.family) {
        case Family::uniform_ball: {
            for (int i = 0; i < spec.n; ++i) inst.points.push_back(uniform_in_ball(rng, spec.d));
            inst.q.assign(spec.d, 0.0);
            for (const auto& p : inst.points.points)
                for (int j = 0; j < spec.d; ++j) inst.q[j] += p[j] / spec.n;
            break;
        }
        case Family::uniform_sphere_shell: {
            for (int i = 0; i < spec.n; ++i) inst.points.push_back(uniform_on_sphere(rng, spec.d));
            inst.q.assign(spec.d, 0.0);
            break;
        }
        case Family::annulus: {
            const double inner = 0.5;
            for (int i = 0; i < spec.n; ++i) {
                Point dir = uniform_on_sphere(rng, spec.d);
                const double rd = std::pow(
                    std::pow(inner, spec.d) +
                        rng.uniform01() * (1.0 - std::pow(inner, spec.d)),
                    1.0 / spec.d);
                for (int j = 0; j < spec.d; ++j) dir[j] *= rd;
                inst.points.push_back(std::move(dir));
            }
            inst.q.assign(spec.d, 0.0);
            break;
        }
        case Family::cluster_upper_tight:
        case Family::cluster_lower_tight: {
            const int d = spec.d;
            const auto verts = regular_simplex_vertices(d);
            double edge = 0.0;
            for (int j = 0; j < d; ++j) edge += (verts[0][j] - verts[1][j]) * (verts[0][j] - verts[1][j]);
            edge = std::sqrt(edge);
            const double radius = spec.perturb_scale * edge;
            const bool upper = spec.family == Family::cluster_upper_tight;
            // upper: one cluster of m, d clusters of n; lower: d clusters of m, one of n
            for (int v = 0; v <= d; ++v) {
                const int size = upper ? (v == 0 ? spec.m : spec.n)
                                       : (v == d ? spec.n : spec.m);
                for (int i = 0; i < size; ++i) {
                    Point p = uniform_in_ball(rng, d);
                    for (int j = 0; j < d; ++j) p[j] = verts[v][j] + radius * p[j];
                    inst.points.push_back(std::move(p));
                }
            }
            inst.q.assign(d, 0.0);
            const auto nu = static_cast<std::uint64_t>(spec.n);
            const auto mu = static_cast<std::uint64_t>(spec.m);
            std::uint64_t sigma = upper ? mu : nu;
            for (int i = 0; i < d; ++i) sigma *= upper ? nu : mu;
            inst.meta.ideal_sigma = sigma;
            inst.meta.ideal_tau = mu;
            break;
        }
        case Family::figure1: {
            if (spec.d != 2) throw InputError("figure1 family is two-dimensional");
            const int n = spec.n;
            const int k = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
            if (n < k + 3) throw InputError("figure1: n too small");
            const int c_left = (n - 1 - k) / 2;
            const int c_right = n - 1 - k - c_left;
            // heavy point first, then the shell, then both far clusters
            inst.points.push_back(Point{0.0, 1.0});
            inst.meta.heavy_index = 0;
            const double shell_r = 0.01;
            for (int i = 0; i < k; ++i) {
                const double jitter = (rng.uniform01() - 0.5) * 0.4;
                const double ang = 2.0 * M_PI * (i + 0.5 + jitter) / k;
                inst.points.push_back(Point{shell_r * std::cos(ang), shell_r * std::sin(ang)});
            }
            const double spread = 0.05;
            for (int i = 0; i < c_left; ++i) {
                Point p = uniform_in_ball(rng, 2);
                inst.points.push_back(Point{-1.0 + spread * p[0], -1.0 + spread * p[1]});
            }
            for (int i = 0; i < c_right; ++i) {
                Point p = uniform_in_ball(rng, 2);
                inst.points.push_back(Point{1.0 + spread * p[0], -1.0 + spread * p[1]});
            }
            inst.q = Point{0.0, 0.0};
            break;
        }
    }
    inst.meta.n = inst.points.size();
    return inst;
}

} // namespace detail

// Deterministic generation with rejection-resampling until the instance is in
// general position; fails loudly after 100 attempts.
inline Instance gen(const GenSpec& spec) {
    if (spec.n <= 0 || spec.d < 2) throw InputError("gen: need n >= 1 and d >= 2");
    if ((spec.family == Family::cluster_upper_tight ||
         spec.family == Family::cluster_lower_tight) &&
        spec.m <= 0)
        throw InputError("gen: cluster families need m >= 1");
    if (spec.perturb_scale <= 0) throw InputError("gen: perturb_scale must be > 0");

    for (int attempt = 0; attempt < 100; ++attempt) {
        Instance inst = detail::build_candidate(
            spec, derive_seed(spec.seed, 0xD474 + static_cast<std::uint64_t>(attempt)));
        const auto rep = general_position_check(inst.points, inst.q);
        if (rep) {
            inst.meta.resamples = attempt;
            inst.meta.gp_exhaustive = rep.exhaustive;
            inst.meta.instance_id = std::string(to_string(spec.family)) + "-n" +
                                    std::to_string(spec.n) + "-d" + std::to_string(spec.d) +
                                    "-s" + std::to_string(spec.seed);
            return inst;
        }
    }
    throw DegeneracyError("gen: could not reach general position after 100 resamples");
}

} // namespace depthkit
