#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "randset/randset.hpp"

namespace testing_support {

using randset::ConvexBody;
using randset::PointList;
using randset::Vector;

using Rng = std::mt19937_64;

inline Vector v2(double x, double y) { return randset::make_vector({x, y}); }
inline Vector v3(double x, double y, double z) { return randset::make_vector({x, y, z}); }

inline ConvexBody unit_square() { return ConvexBody::box(v2(0, 0), v2(1, 1)); }
inline ConvexBody triangle() { return ConvexBody::hull({v2(0, 0), v2(1, 0), v2(0, 1)}); }
inline ConvexBody segment(const Vector& a, const Vector& b) { return ConvexBody::hull({a, b}); }

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Vector random_point(Rng& rng, Eigen::Index dim, double lo, double hi) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = uniform(rng, lo, hi);
    return v;
}

inline PointList random_cloud(Rng& rng, Eigen::Index dim, int n, double lo, double hi) {
    PointList pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, dim, lo, hi));
    return pts;
}

inline Vector random_direction(Rng& rng, Eigen::Index dim) {
    std::normal_distribution<double> g;
    Vector v(dim);
    do {
        for (Eigen::Index i = 0; i < dim; ++i) v[i] = g(rng);
    } while (v.norm() < 1e-6);
    return v / v.norm();
}

inline ConvexBody random_body(Rng& rng, Eigen::Index dim, int max_points, double lo = -1.0, double hi = 1.0) {
    const int n = std::uniform_int_distribution<int>(1, max_points)(rng);
    return ConvexBody::hull(random_cloud(rng, dim, n, lo, hi));
}

inline randset::DiscreteRandomSet random_set(Rng& rng, Eigen::Index dim, int max_atoms, int max_vertices) {
    const int m = std::uniform_int_distribution<int>(1, max_atoms)(rng);
    std::vector<double> w;
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
        w.push_back(uniform(rng, 0.1, 1.0));
        total += w.back();
    }
    std::vector<randset::Atom> atoms;
    for (int j = 0; j < m; ++j) atoms.push_back({w[j] / total, random_body(rng, dim, max_vertices)});
    return randset::DiscreteRandomSet::create(std::move(atoms));
}

/// Is p a convex combination of the points? Carathéodory: checks every
/// subset of at most dim + 1 points with a direct barycentric solve.
inline bool in_hull_brute(const PointList& pts, const Vector& p, double tol) {
    const auto d = p.size();
    const std::size_t n = pts.size();
    for (const auto& q : pts) {
        if ((q - p).norm() <= tol) return true;
    }
    std::vector<std::size_t> idx;
    bool found = false;
    auto visit = [&](auto&& self, std::size_t start, std::size_t need) -> void {
        if (found) return;
        if (need == 0) {
            const std::size_t m = idx.size();
            Eigen::MatrixXd a(d, static_cast<Eigen::Index>(m - 1));
            for (std::size_t i = 1; i < m; ++i) a.col(static_cast<Eigen::Index>(i - 1)) = pts[idx[i]] - pts[idx[0]];
            Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(a);
            if (qr.rank() < static_cast<Eigen::Index>(m - 1)) return;
            const Eigen::VectorXd beta = qr.solve(Eigen::VectorXd(p - pts[idx[0]]));
            if ((a * beta - Eigen::VectorXd(p - pts[idx[0]])).norm() > tol) return;
            double rest = 1.0;
            for (Eigen::Index i = 0; i < beta.size(); ++i) {
                if (beta[i] < -1e-12) return;
                rest -= beta[i];
            }
            if (rest >= -1e-12) found = true;
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx.push_back(i);
            self(self, i + 1, need - 1);
            idx.pop_back();
        }
    };
    for (std::size_t m = 2; m <= static_cast<std::size_t>(d) + 1 && !found; ++m) visit(visit, 0, m);
    return found;
}

/// Extreme points by definition: a point survives unless it is a convex
/// combination of the others (duplicates keep the first copy).
inline PointList brute_extreme_points(const PointList& pts, double tol = 1e-9) {
    PointList out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        PointList others;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            if (j > i && (pts[j] - pts[i]).norm() <= tol) continue;
            others.push_back(pts[j]);
        }
        if (others.empty() || !in_hull_brute(others, pts[i], tol)) out.push_back(pts[i]);
    }
    return out;
}

inline bool same_point_set(const PointList& a, const PointList& b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        const bool hit = std::any_of(b.begin(), b.end(), [&](const Vector& q) { return (p - q).norm() <= tol; });
        if (!hit) return false;
    }
    return true;
}

inline Vector clamp_to_segment(const Vector& a, const Vector& b, const Vector& x) {
    const Vector e = b - a;
    const double len2 = e.squaredNorm();
    if (len2 == 0.0) return a;
    const double t = std::clamp((x - a).dot(e) / len2, 0.0, 1.0);
    return a + t * e;
}

/// Nearest point of a 2-D polygon given counter-clockwise: x itself when
/// inside, else the best projection onto an edge.
inline Vector polygon_nearest(const PointList& ccw, const Vector& x) {
    if (ccw.size() == 1) return ccw[0];
    if (ccw.size() == 2) return clamp_to_segment(ccw[0], ccw[1], x);
    bool inside = true;
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const Vector& a = ccw[i];
        const Vector& b = ccw[(i + 1) % ccw.size()];
        if ((b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < 0.0) inside = false;
    }
    if (inside) return x;
    Vector best = ccw[0];
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const Vector c = clamp_to_segment(ccw[i], ccw[(i + 1) % ccw.size()], x);
        if ((c - x).norm() < (best - x).norm()) best = c;
    }
    return best;
}

}  // namespace testing_support
