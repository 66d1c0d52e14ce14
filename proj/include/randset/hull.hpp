#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "randset/errors.hpp"
#include "randset/min_norm_point.hpp"
#include "randset/vector.hpp"

namespace randset {

/// Absolute tolerance used to merge coincident vertices of a point cloud of the given scale.
inline double dedup_tolerance(double scale) { return 1e-9 * (1.0 + scale); }

inline double max_norm(const PointList& points) {
    double s = 0.0;
    for (const auto& p : points) s = std::max(s, p.norm());
    return s;
}

namespace detail {

inline void validate_points(const PointList& points, const char* what) {
    if (points.empty()) throw InvalidArgument(std::string(what) + ": empty point set");
    const auto dim = points.front().size();
    if (dim < 1 || dim > kMaxDim) {
        throw DimensionError(std::string(what) + ": unsupported dimension " + std::to_string(dim));
    }
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionError(std::string(what) + ": mixed dimensions");
        if (!is_finite(p)) throw InvalidArgument(std::string(what) + ": non-finite coordinate");
    }
}

inline PointList hull_1d(const PointList& points, double tol) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Vector& a, const Vector& b) { return a[0] < b[0]; });
    if ((*hi)[0] - (*lo)[0] <= tol) return {*lo};
    return {*lo, *hi};
}

inline double cross(const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain. A middle point is dropped when it lies within `tol`
// of the chord joining its neighbours (or to its right), so collinear and
// coincident points never survive.
inline PointList hull_2d(PointList points, double tol) {
    std::sort(points.begin(), points.end(), [](const Vector& a, const Vector& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    const std::size_t n = points.size();
    if (n == 1) return points;
    PointList chain(2 * n);
    std::size_t k = 0;
    auto keep_turn = [&](const Vector& b) {
        while (k >= 2) {
            const Vector& o = chain[k - 2];
            const Vector& a = chain[k - 1];
            const double base = (b - o).norm();
            if (cross(o, a, b) > tol * base && (a - o).norm() > tol) break;
            --k;
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        keep_turn(points[i]);
        chain[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower) {
            const Vector& o = chain[k - 2];
            const Vector& a = chain[k - 1];
            const Vector& b = points[i];
            const double base = (b - o).norm();
            if (cross(o, a, b) > tol * base && (a - o).norm() > tol) break;
            --k;
        }
        chain[k++] = points[i];
    }
    chain.resize(k - 1);
    // Remaining near-duplicates can only be adjacent.
    PointList out;
    for (const auto& v : chain) {
        if (out.empty() || (v - out.back()).norm() > tol) out.push_back(v);
    }
    while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
    return out;
}

inline PointList dedup(const PointList& points, double tol) {
    PointList out;
    for (const auto& p : points) {
        bool seen = false;
        for (const auto& q : out) {
            if ((p - q).norm() <= tol) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(p);
    }
    return out;
}

// Dimension-agnostic extreme-point filter: a point is discarded when it lies
// within `tol` of the convex hull of the remaining candidates.
inline PointList hull_by_filtering(const PointList& points, double tol) {
    PointList candidates = dedup(points, tol);
    std::size_t i = 0;
    while (i < candidates.size() && candidates.size() > 1) {
        PointList others;
        others.reserve(candidates.size() - 1);
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            if (j != i) others.push_back(candidates[j]);
        }
        const Vector nearest = project_onto_hull(others, candidates[i]);
        if ((nearest - candidates[i]).norm() <= tol) {
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return candidates;
}

}  // namespace detail

/// Extreme points of conv(points), with coincident points merged.
/// The 2-D result is in counter-clockwise order starting at the lexicographic minimum.
inline PointList extreme_points(const PointList& points) {
    detail::validate_points(points, "hull");
    const double tol = dedup_tolerance(max_norm(points));
    switch (points.front().size()) {
        case 1:
            return detail::hull_1d(points, tol);
        case 2:
            return detail::hull_2d(points, tol);
        default:
            return detail::hull_by_filtering(points, tol);
    }
}

}  // namespace randset
