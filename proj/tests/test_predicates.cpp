#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace depthkit;
using namespace testutil;

TEST_CASE("orientation on fixed configurations") {
    PointSet P2 = make_points(2, {{0, 0}, {1, 0}, {0, 1}});
    CHECK(orientation(P2, {0, 1, 2}) == 1);

    PointSet col = make_points(2, {{0, 0}, {1, 0}, {2, 0}});
    CHECK(orientation(col, {0, 1, 2}) == 0);

    PointSet P3 = make_points(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(orientation(P3, {0, 1, 2, 3}) == 1);
}

TEST_CASE("orientation is antisymmetric under swapping two points") {
    for (int d = 2; d <= 5; ++d) {
        Rng rng(1234 + d);
        for (int t = 0; t < 50; ++t) {
            PointSet ps;
            ps.dim = d;
            for (int i = 0; i <= d; ++i) {
                Point p(d);
                for (int j = 0; j < d; ++j) p[j] = rng.uniform(-1, 1);
                ps.push_back(p);
            }
            std::vector<int> idx(d + 1);
            std::iota(idx.begin(), idx.end(), 0);
            const int base = orientation(ps, idx);
            const int a = static_cast<int>(rng.below(d + 1));
            int b = static_cast<int>(rng.below(d + 1));
            while (b == a) b = static_cast<int>(rng.below(d + 1));
            std::swap(idx[a], idx[b]);
            CHECK(orientation(ps, idx) == -base);
        }
    }
}

TEST_CASE("filtered sign agrees with forced exact evaluation") {
    Rng rng(99);
    for (int d = 2; d <= 4; ++d) {
        for (int t = 0; t < 200; ++t) {
            std::vector<Point> rows_a(d, Point(d)), rows_b(d, Point(d));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    rows_a[i][j] = rng.uniform(-1, 1);
                    rows_b[i][j] = rng.uniform(-1, 1);
                }
            std::vector<DiffRow> rows(d);
            for (int i = 0; i < d; ++i) rows[i] = DiffRow{rows_a[i].data(), rows_b[i].data()};
            const int filtered = sign_det_diff(rows.data(), d);
            const int exact = detail::sign_det_exact(rows.data(), d);
            CHECK(filtered == exact);
        }
    }
}

TEST_CASE("near-degenerate rows fall back to the exact path consistently") {
    // rows differing by one ulp around a collinear configuration
    Point a{1.0, 1.0}, b{2.0, 2.0};
    Point a2{1.0, std::nextafter(1.0, 2.0)};
    const DiffRow exact_zero[2] = {DiffRow{a.data(), nullptr}, DiffRow{b.data(), nullptr}};
    CHECK(sign_det_diff(exact_zero, 2) == 0);
    const DiffRow tiny[2] = {DiffRow{a2.data(), nullptr}, DiffRow{b.data(), nullptr}};
    CHECK(sign_det_diff(tiny, 2) == -1); // det = 2*(1+ulp) - 2 ... sign of 2*a2.y - 2 flipped
}

TEST_CASE("linear form sign is certified") {
    const double w[2] = {1.0, 1.0};
    const Point a{0.1, 0.2};
    const Point b{0.2, 0.1};
    CHECK(linear_form_sign(w, a.data(), b.data(), 2) == 0); // exact cancellation
    const Point c{0.2, 0.0999999999999999};
    CHECK(linear_form_sign(w, a.data(), c.data(), 2) == 1);
}

TEST_CASE("parity rule") {
    CHECK(parity_predicted(4, 2) == Parity::even);
    CHECK(parity_predicted(5, 2) == Parity::even);
    CHECK(parity_predicted(7, 2) == Parity::odd);
}
