#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "randset/errors.hpp"
#include "randset/hull.hpp"
#include "randset/vector.hpp"

namespace randset {

/// Compact convex polytope held as its list of extreme points.
///
/// Bodies are immutable; every constructor routes through the hull so the
/// vertex list is always minimal. In 2-D the vertices are in counter-clockwise order.
class ConvexBody {
public:
    /// Convex hull of a nonempty point cloud of common dimension.
    static ConvexBody hull(const PointList& points) { return ConvexBody(extreme_points(points)); }

    static ConvexBody point(const Vector& p) { return hull(PointList{p}); }

    /// Axis-aligned box [lo, hi] (componentwise).
    static ConvexBody box(const Vector& lo, const Vector& hi) {
        require_same_dim(lo, hi, "box");
        const auto d = lo.size();
        PointList corners;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            Vector c(d);
            for (Eigen::Index i = 0; i < d; ++i) c[i] = (mask >> i) & 1u ? hi[i] : lo[i];
            corners.push_back(c);
        }
        return hull(corners);
    }

    Eigen::Index dim() const noexcept { return vertices_.front().size(); }
    const PointList& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    /// Largest Euclidean norm of a point of the body, |K| = max |k|.
    double radius() const noexcept { return max_norm(vertices_); }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices_.size(); ++j) d = std::max(d, (vertices_[i] - vertices_[j]).norm());
        }
        return d;
    }

    /// Tolerance scale used by face and membership tests.
    double tolerance_scale() const noexcept { return 1.0 + radius(); }

private:
    explicit ConvexBody(PointList vertices) : vertices_(std::move(vertices)) {}

    PointList vertices_;
};

inline ConvexBody hull(const PointList& points) { return ConvexBody::hull(points); }

inline void require_same_dim(const ConvexBody& a, const ConvexBody& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
}

/// s_A(u) = max over A of <u, a>; positively homogeneous in u.
inline double support(const ConvexBody& body, const Vector& u) {
    if (u.size() != body.dim()) throw DimensionError("support: dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : body.vertices()) best = std::max(best, u.dot(v));
    return best;
}

/// A + B: hull of all pairwise vertex sums.
inline ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
    require_same_dim(a, b, "minkowski_sum");
    PointList sums;
    sums.reserve(a.size() * b.size());
    for (const auto& p : a.vertices()) {
        for (const auto& q : b.vertices()) sums.emplace_back(p + q);
    }
    return ConvexBody::hull(sums);
}

/// lambda * A for lambda >= 0; lambda = 0 gives the singleton origin.
inline ConvexBody scale(const ConvexBody& body, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("scale: factor must be finite and nonnegative");
    }
    PointList scaled;
    scaled.reserve(body.size());
    for (const auto& v : body.vertices()) scaled.emplace_back(lambda * v);
    return ConvexBody::hull(scaled);
}

inline ConvexBody translate(const ConvexBody& body, const Vector& offset) {
    if (offset.size() != body.dim()) throw DimensionError("translate: dimension mismatch");
    PointList moved;
    moved.reserve(body.size());
    for (const auto& v : body.vertices()) moved.emplace_back(v + offset);
    return ConvexBody::hull(moved);
}

}  // namespace randset
