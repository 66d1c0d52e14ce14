#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randset/convex_body.hpp"
#include "randset/min_norm_point.hpp"

namespace randset {

/// Euclidean projection k_x(A) of x onto the body.
inline Vector nearest_point(const ConvexBody& body, const Vector& x) {
    if (x.size() != body.dim()) throw DimensionError("nearest_point: dimension mismatch");
    if (!is_finite(x)) throw InvalidArgument("nearest_point: non-finite query point");
    return project_onto_hull(body.vertices(), x);
}

/// d(x, A); zero iff x belongs to A.
inline double point_distance(const ConvexBody& body, const Vector& x) { return (x - nearest_point(body, x)).norm(); }

/// One-sided deviation D(A, B) = sup over a in A of d(a, B). Since d(., B) is
/// convex, the supremum is attained at a vertex of A.
inline double deviation(const ConvexBody& a, const ConvexBody& b) {
    require_same_dim(a, b, "deviation");
    double worst = 0.0;
    for (const auto& v : a.vertices()) worst = std::max(worst, point_distance(b, v));
    return worst;
}

/// Pompeiu-Hausdorff distance max(D(A, B), D(B, A)).
inline double hausdorff(const ConvexBody& a, const ConvexBody& b) {
    return std::max(deviation(a, b), deviation(b, a));
}

/// Deterministic unit directions: uniform angles for d = 2, a Fibonacci sphere
/// for d = 3, and {-1, +1} for d = 1. For d = 2 a grid of m directions is
/// contained in the grid of k * m directions.
inline PointList direction_grid(Eigen::Index dim, int m) {
    if (m < 1) throw InvalidArgument("direction_grid: grid size must be positive");
    PointList grid;
    switch (dim) {
        case 1:
            grid.push_back(make_vector({-1.0}));
            grid.push_back(make_vector({1.0}));
            break;
        case 2:
            grid.reserve(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                const double t = 2.0 * std::numbers::pi * i / m;
                grid.push_back(make_vector({std::cos(t), std::sin(t)}));
            }
            break;
        case 3: {
            grid.reserve(static_cast<std::size_t>(m));
            const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
            for (int i = 0; i < m; ++i) {
                const double z = 1.0 - 2.0 * (i + 0.5) / m;
                const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double t = golden * i;
                grid.push_back(make_vector({r * std::cos(t), r * std::sin(t), z}));
            }
            break;
        }
        default:
            throw DimensionError("direction_grid: unsupported dimension " + std::to_string(dim));
    }
    return grid;
}

/// max over grid directions u of |s_A(u) - s_B(u)|. A lower bound of the exact
/// Hausdorff distance that converges to it as the grid is refined.
inline double hausdorff_via_support(const ConvexBody& a, const ConvexBody& b, int m) {
    require_same_dim(a, b, "hausdorff_via_support");
    if (m < 8) throw InvalidArgument("hausdorff_via_support: grid size must be at least 8");
    double worst = 0.0;
    for (const auto& u : direction_grid(a.dim(), m)) worst = std::max(worst, std::abs(support(a, u) - support(b, u)));
    return worst;
}

}  // namespace randset
