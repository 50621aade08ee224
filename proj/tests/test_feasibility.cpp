#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace depthkit;
using namespace testutil;

TEST_CASE("hull membership basic verdicts") {
    PointSet tri = make_points(2, {{2, 0}, {-1, 2}, {-1, -2}});
    auto in = hull_membership(tri, Point{0.1, 0.1});
    CHECK(in.inside);
    CHECK(in.certified);
    CHECK(in.support.size() == 3);

    auto out = hull_membership(tri, Point{5, 5});
    CHECK_FALSE(out.inside);
    CHECK(out.certified);
    REQUIRE(out.separator.size() == 2);
    // the separator keeps all points strictly on the far side
    for (int i = 0; i < tri.size(); ++i) {
        const Point q{5, 5};
        CHECK(linear_form_sign(out.separator.data(), tri[i].data(), q.data(), 2) > 0);
    }
}

TEST_CASE("hull membership agrees with brute-force depth positivity") {
    for (int d = 2; d <= 4; ++d) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto inst = random_instance(d + 6, d, seed * 31 + d);
            const bool deep = brute_force(inst.points, inst.q).value > 0;
            const auto mem = hull_membership(inst.points, inst.q);
            CHECK(mem.inside == deep);

            // far-away query is always outside
            Point far_q(d, 50.0);
            CHECK_FALSE(hull_membership(inst.points, far_q).inside);
        }
    }
}

TEST_CASE("witness halfspace basics") {
    // q outside the hull: count 0
    PointSet P = make_points(2, {{1, 1}, {2, 1.1}, {1.5, 2.05}, {1.2, 1.6}});
    auto wit = find_halfspace_witness(P, Point{-1, -1}, 42);
    CHECK_FALSE(wit.inside);
    CHECK(wit.count == 0);
    CHECK(wit.sample_level == 0);
}

TEST_CASE("witness count is exact and at least the Tukey depth") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = random_instance(60, 2, 900 + seed, Family::uniform_sphere_shell);
        const auto tau = tukey_oracle_2d(inst.points, inst.q);
        auto wit = find_halfspace_witness(inst.points, inst.q, seed);
        if (wit.inside) continue;
        // recount the sparse side
        std::uint64_t recount = 0;
        for (int i = 0; i < inst.points.size(); ++i) {
            if (wit.halfspace.side(inst.points[i]) > 0) ++recount;
        }
        CHECK(recount == wit.count);
        CHECK(wit.count >= tau);
    }
}
