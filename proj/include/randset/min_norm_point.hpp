#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "randset/errors.hpp"
#include "randset/vector.hpp"

namespace randset {

struct MinNormResult {
    Vector point;          // the point of conv(points) closest to the origin
    double duality_gap;    // |w|^2 - min_i <w, p_i> at termination
    int iterations;
};

namespace detail {

// Minimizer of |sum_i alpha_i s_i| over the affine hull of the selected points,
// expressed in barycentric coordinates (sum alpha = 1).
inline std::vector<double> affine_minimizer(const PointList& points, const std::vector<std::size_t>& corral) {
    const std::size_t m = corral.size();
    std::vector<double> alpha(m, 0.0);
    if (m == 1) {
        alpha[0] = 1.0;
        return alpha;
    }
    const Vector& base = points[corral[0]];
    Eigen::MatrixXd diffs(base.size(), static_cast<Eigen::Index>(m - 1));
    for (std::size_t i = 1; i < m; ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = points[corral[i]] - base;
    const Eigen::VectorXd rhs = -Eigen::VectorXd(base);
    const Eigen::VectorXd beta = diffs.completeOrthogonalDecomposition().solve(rhs);
    double rest = 1.0;
    for (std::size_t i = 1; i < m; ++i) {
        alpha[i] = beta[static_cast<Eigen::Index>(i - 1)];
        rest -= alpha[i];
    }
    alpha[0] = rest;
    return alpha;
}

}  // namespace detail

/// Wolfe's minimum-norm-point algorithm on conv(points). Terminates when the
/// duality gap drops below 1e-12 relative to the squared point scale; gives up
/// with GeometryError after 10 * n * d iterations.
inline MinNormResult min_norm_point(const PointList& points) {
    if (points.empty()) throw InvalidArgument("min_norm_point: empty point set");
    const auto dim = points.front().size();
    double max_sq = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw DimensionError("min_norm_point: mixed dimensions");
        const double sq = points[i].squaredNorm();
        if (sq > max_sq) max_sq = sq;
        if (sq < points[start].squaredNorm()) start = i;
    }
    const double gap_tol = 1e-12 * std::max(max_sq, 1e-300);
    const double weight_tol = 1e-14;
    const int cap = std::max(10 * static_cast<int>(points.size()) * static_cast<int>(dim), 10);

    std::vector<std::size_t> corral{start};
    std::vector<double> lambda{1.0};
    Vector w = points[start];
    int iter = 0;
    double gap = 0.0;

    while (true) {
        if (++iter > cap) {
            throw GeometryError("min_norm_point: no convergence after " + std::to_string(cap) + " iterations");
        }
        std::size_t best = 0;
        double best_dot = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = w.dot(points[i]);
            if (d < best_dot) {
                best_dot = d;
                best = i;
            }
        }
        gap = w.squaredNorm() - best_dot;
        if (gap <= gap_tol) break;
        if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
        corral.push_back(best);
        lambda.push_back(0.0);

        // Minor cycle: move toward the affine minimizer while staying in the simplex.
        while (true) {
            if (++iter > cap) {
                throw GeometryError("min_norm_point: no convergence after " + std::to_string(cap) + " iterations");
            }
            const std::vector<double> alpha = detail::affine_minimizer(points, corral);
            bool interior = true;
            for (double a : alpha) interior = interior && a > weight_tol;
            if (interior) {
                lambda = alpha;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (alpha[i] <= weight_tol) {
                    const double denom = lambda[i] - alpha[i];
                    if (denom > 0.0) theta = std::min(theta, lambda[i] / denom);
                }
            }
            std::size_t drop = 0;
            double smallest = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                lambda[i] = theta * alpha[i] + (1.0 - theta) * lambda[i];
                if (lambda[i] < smallest) {
                    smallest = lambda[i];
                    drop = i;
                }
            }
            std::vector<std::size_t> kept_idx;
            std::vector<double> kept_w;
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                if (i != drop && lambda[i] > weight_tol) {
                    kept_idx.push_back(corral[i]);
                    kept_w.push_back(lambda[i]);
                }
            }
            if (kept_idx.empty()) {
                kept_idx.push_back(corral[drop]);
                kept_w.push_back(1.0);
            }
            double total = 0.0;
            for (double v : kept_w) total += v;
            for (double& v : kept_w) v /= total;
            corral = std::move(kept_idx);
            lambda = std::move(kept_w);
        }
        w.setZero(dim);
        for (std::size_t i = 0; i < corral.size(); ++i) w += lambda[i] * points[corral[i]];
    }
    return {w, gap, iter};
}

/// Distance-minimizing point of conv(vertices) to x.
inline Vector project_onto_hull(const PointList& vertices, const Vector& x) {
    PointList shifted;
    shifted.reserve(vertices.size());
    double scale = 0.0;
    for (const auto& v : vertices) {
        require_same_dim(v, x, "project_onto_hull");
        shifted.emplace_back(v - x);
        scale = std::max(scale, shifted.back().norm());
    }
    const MinNormResult r = min_norm_point(shifted);
    if (r.point.norm() <= 1e-12 * std::max(scale, 1e-300)) return x;
    return x + r.point;
}

}  // namespace randset
