#include "helpers.hpp"

using namespace randset;
using namespace testing_support;

TEST(Hull, Singleton) {
    const ConvexBody b = ConvexBody::hull({v2(0, 0)});
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b.vertices()[0], v2(0, 0));
}

TEST(Hull, CollinearMidpointPruned) {
    const ConvexBody b = ConvexBody::hull({v2(0, 0), v2(1, 0), v2(0.5, 0)});
    EXPECT_TRUE(same_point_set(b.vertices(), {v2(0, 0), v2(1, 0)}, 0.0));
}

TEST(Hull, InteriorPointPruned) {
    const PointList pts{v2(0, 0), v2(1, 0), v2(0, 1), v2(0.25, 0.25)};
    const ConvexBody b = ConvexBody::hull(pts);
    EXPECT_TRUE(same_point_set(b.vertices(), brute_extreme_points(pts), 0.0));
    EXPECT_EQ(b.size(), 3u);
}

TEST(Hull, Errors) {
    EXPECT_THROW(ConvexBody::hull({}), InvalidArgument);
    EXPECT_THROW(ConvexBody::hull({v2(0, 0), v3(0, 0, 0)}), DimensionError);
    EXPECT_THROW(ConvexBody::hull({v2(0, std::numeric_limits<double>::infinity())}), InvalidArgument);
}

TEST(Hull, DegenerateInputs) {
    EXPECT_EQ(ConvexBody::hull({v2(1, 1), v2(1, 1), v2(1, 1)}).size(), 1u);
    EXPECT_EQ(ConvexBody::hull({v2(0, 0), v2(1, 1), v2(2, 2), v2(3, 3)}).size(), 2u);
    EXPECT_EQ(ConvexBody::hull({v3(0, 0, 0), v3(1, 0, 0), v3(0.5, 0, 0)}).size(), 2u);
    EXPECT_EQ(ConvexBody::hull({v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(0.2, 0.2, 0)}).size(), 3u);
    EXPECT_EQ(ConvexBody::hull({make_vector({3}), make_vector({-1}), make_vector({2})}).size(), 2u);
}

TEST(Hull, CounterClockwiseIn2D) {
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        const ConvexBody b = ConvexBody::hull(random_cloud(rng, 2, 12, -1, 1));
        const auto& v = b.vertices();
        if (v.size() < 3) continue;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vector& o = v[i];
            const Vector& a = v[(i + 1) % v.size()];
            const Vector& c = v[(i + 2) % v.size()];
            EXPECT_GT((a[0] - o[0]) * (c[1] - o[1]) - (a[1] - o[1]) * (c[0] - o[0]), 0.0);
        }
    }
}

// Against the Carathéodory brute force, d = 2 and d = 3.
TEST(Hull, MatchesBruteForceExtremePoints) {
    Rng rng(22);
    for (int t = 0; t < 150; ++t) {
        const Eigen::Index d = 2 + t % 2;
        const PointList pts = random_cloud(rng, d, 4 + t % 9, -1, 1);
        const ConvexBody b = ConvexBody::hull(pts);
        EXPECT_TRUE(same_point_set(b.vertices(), brute_extreme_points(pts), 1e-12)) << "trial " << t;
    }
}

TEST(Hull, IdempotentAndOrderInvariant) {
    Rng rng(23);
    for (int t = 0; t < 150; ++t) {
        const Eigen::Index d = 1 + t % 3;
        PointList pts = random_cloud(rng, d, 2 + t % 15, -1, 1);
        const ConvexBody b = ConvexBody::hull(pts);
        EXPECT_TRUE(same_point_set(ConvexBody::hull(b.vertices()).vertices(), b.vertices(), 1e-9));
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_TRUE(same_point_set(ConvexBody::hull(pts).vertices(), b.vertices(), 1e-9));
    }
}

// Removing any stored vertex strictly shrinks the support in some direction.
TEST(Hull, EveryVertexIsNeeded) {
    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index d = 2 + t % 2;
        const ConvexBody b = ConvexBody::hull(random_cloud(rng, d, 10, -1, 1));
        if (b.size() < 2) continue;
        for (std::size_t i = 0; i < b.size(); ++i) {
            PointList rest;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (j != i) rest.push_back(b.vertices()[j]);
            }
            EXPECT_GT(point_distance(ConvexBody::hull(rest), b.vertices()[i]), 1e-9);
        }
    }
}

TEST(Hull, NoCloseVertexPairs) {
    Rng rng(25);
    for (int t = 0; t < 100; ++t) {
        PointList pts = random_cloud(rng, 2 + t % 2, 8, -1, 1);
        pts.push_back(pts[0] + Vector::Constant(pts[0].size(), 1e-13));
        const ConvexBody b = ConvexBody::hull(pts);
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                EXPECT_GT((b.vertices()[i] - b.vertices()[j]).norm(), dedup_tolerance(b.radius()));
            }
        }
    }
}
