#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "randset/convex_body.hpp"
#include "randset/distance.hpp"

namespace randset {

/// Nonconvexity gap of an average of finite sets against the average of their hulls.
struct ShapleyFolkmanGap {
    double gap;        // certified lower bound of H((1/N) sum K_i, (1/N) sum conv K_i)
    double gap_upper;  // certified upper bound; gap_upper - gap <= 1e-10 * (1 + scale)
    double bound;      // sqrt(d) / N * max_i |K_i|
};

namespace detail {

// Static k-d tree answering Euclidean nearest-neighbour distance queries.
class KdTree {
public:
    explicit KdTree(PointList points) : points_(std::move(points)), order_(points_.size()) {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        build(0, order_.size(), 0);
    }

    double nearest_distance(const Vector& q) const {
        double best_sq = std::numeric_limits<double>::infinity();
        search(0, order_.size(), 0, q, best_sq);
        return std::sqrt(best_sq);
    }

private:
    void build(std::size_t lo, std::size_t hi, int depth) {
        if (hi - lo <= 1) return;
        const auto axis = static_cast<Eigen::Index>(depth % points_.front().size());
        const std::size_t mid = lo + (hi - lo) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](std::size_t a, std::size_t b) { return points_[a][axis] < points_[b][axis]; });
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    void search(std::size_t lo, std::size_t hi, int depth, const Vector& q, double& best_sq) const {
        if (lo >= hi) return;
        const std::size_t mid = lo + (hi - lo) / 2;
        const Vector& p = points_[order_[mid]];
        best_sq = std::min(best_sq, (p - q).squaredNorm());
        if (hi - lo == 1) return;
        const auto axis = static_cast<Eigen::Index>(depth % points_.front().size());
        const double delta = q[axis] - p[axis];
        const bool left_first = delta < 0.0;
        if (left_first) {
            search(lo, mid, depth + 1, q, best_sq);
            if (delta * delta < best_sq) search(mid + 1, hi, depth + 1, q, best_sq);
        } else {
            search(mid + 1, hi, depth + 1, q, best_sq);
            if (delta * delta < best_sq) search(lo, mid, depth + 1, q, best_sq);
        }
    }

    PointList points_;
    std::vector<std::size_t> order_;
};

struct Bound {
    double lower;
    double upper;
};

// sup over c in C of d(c, P), bracketed by branch and bound over axis-aligned
// cells. d(., P) is 1-Lipschitz, so a cell of half-diagonal r centred at z is
// bounded above by d(z, P) + r.
inline Bound farthest_distance_to_cloud(const ConvexBody& body, const KdTree& cloud, double eps) {
    const auto dim = body.dim();
    Vector lo = body.vertices().front();
    Vector hi = lo;
    for (const auto& v : body.vertices()) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    struct Cell {
        Vector center;
        Vector half;
        double upper;
        bool operator<(const Cell& other) const { return upper < other.upper; }
    };
    double best = 0.0;
    for (const auto& v : body.vertices()) best = std::max(best, cloud.nearest_distance(v));

    std::priority_queue<Cell> queue;
    auto push = [&](const Vector& center, const Vector& half) {
        const double r = half.norm();
        const Vector inside = nearest_point(body, center);
        if ((inside - center).norm() > r) return;
        best = std::max(best, cloud.nearest_distance(inside));
        const double upper = cloud.nearest_distance(center) + r;
        if (upper > best + eps) queue.push(Cell{center, half, upper});
    };
    push(Vector((lo + hi) / 2.0), Vector((hi - lo) / 2.0));
    while (!queue.empty()) {
        Cell cell = queue.top();
        queue.pop();
        if (cell.upper <= best + eps) break;
        Eigen::Index axis = 0;
        for (Eigen::Index i = 1; i < dim; ++i) {
            if (cell.half[i] > cell.half[axis]) axis = i;
        }
        Vector half = cell.half;
        half[axis] /= 2.0;
        Vector left = cell.center;
        Vector right = cell.center;
        left[axis] -= half[axis];
        right[axis] += half[axis];
        push(left, half);
        push(right, half);
    }
    const double upper = queue.empty() ? best + eps : std::max(best + eps, queue.top().upper);
    return {best, upper};
}

}  // namespace detail

/// Compares the average of raw finite sets, enumerated exhaustively, with the
/// average of their convex hulls, and reports the Shapley-Folkman-Starr bound.
inline ShapleyFolkmanGap shapley_folkman_gap(const std::vector<PointList>& sets) {
    if (sets.empty()) throw InvalidArgument("shapley_folkman_gap: need at least one set");
    for (const auto& s : sets) {
        if (s.empty()) throw InvalidArgument("shapley_folkman_gap: empty member set");
    }
    const auto dim = sets.front().front().size();
    for (const auto& s : sets) {
        for (const auto& p : s) {
            if (p.size() != dim) throw DimensionError("shapley_folkman_gap: mixed dimensions");
        }
    }
    const double n = static_cast<double>(sets.size());

    PointList raw{Vector::Zero(dim)};
    ConvexBody hull_sum = ConvexBody::point(Vector::Zero(dim));
    double max_set_norm = 0.0;
    for (const auto& s : sets) {
        PointList next;
        next.reserve(raw.size() * s.size());
        for (const auto& a : raw) {
            for (const auto& b : s) next.emplace_back(a + b);
        }
        raw = std::move(next);
        hull_sum = minkowski_sum(hull_sum, ConvexBody::hull(s));
        max_set_norm = std::max(max_set_norm, max_norm(s));
    }
    for (auto& p : raw) p /= n;
    const ConvexBody mean_hull = scale(hull_sum, 1.0 / n);

    // Every raw average lies in the hull average; measure it anyway.
    double raw_to_hull = 0.0;
    for (const auto& p : raw) raw_to_hull = std::max(raw_to_hull, point_distance(mean_hull, p));

    const double eps = 1e-10 * mean_hull.tolerance_scale();
    const detail::KdTree tree(raw);
    const detail::Bound far = detail::farthest_distance_to_cloud(mean_hull, tree, eps);

    const double bound = std::sqrt(static_cast<double>(dim)) / n * max_set_norm;
    return {std::max(raw_to_hull, far.lower), std::max(raw_to_hull, far.upper), bound};
}

}  // namespace randset
