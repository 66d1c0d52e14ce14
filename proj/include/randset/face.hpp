#pragma once

#include <algorithm>
#include <limits>
#include <optional>

#include "randset/convex_body.hpp"
#include "randset/distance.hpp"

namespace randset {

/// Relative tolerance for membership of a vertex in a support face.
inline constexpr double kFaceRelTol = 1e-9;
/// Relative margin, as a fraction of the diameter, separating a facet point from the face's relative boundary.
inline constexpr double kFacetRelTol = 1e-6;

/// The face argmax_A <f, .> of a body in direction f, with its classification.
struct FaceCertificate {
    Direction direction;
    ConvexBody face;
    double support_value;
    bool is_exposed;
    /// d with <f, d> = 1, present when the face has affine dimension >= 1.
    std::optional<Vector> facet_direction;
};

/// Affine dimension of a point cloud: rank of the differences to the first point.
inline int affine_dimension(const PointList& points, double tol) {
    if (points.size() <= 1) return 0;
    Eigen::MatrixXd diffs(points.front().size(), static_cast<Eigen::Index>(points.size() - 1));
    for (std::size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) rank += svd.singularValues()[i] > tol ? 1 : 0;
    return rank;
}

inline int affine_dimension(const ConvexBody& body) {
    return affine_dimension(body.vertices(), dedup_tolerance(body.radius()));
}

/// Face of the body maximizing u: the hull of all vertices within
/// kFaceRelTol * scale of the support value.
inline FaceCertificate support_face(const ConvexBody& body, const Vector& u) {
    if (u.size() != body.dim()) throw DimensionError("support_face: dimension mismatch");
    if (!is_finite(u) || u.norm() == 0.0) throw InvalidArgument("support_face: direction must be nonzero and finite");
    Direction f(u);
    const double value = support(body, f.coords());
    const double tol = kFaceRelTol * body.tolerance_scale();
    PointList members;
    for (const auto& v : body.vertices()) {
        if (f.dot(v) >= value - tol) members.push_back(v);
    }
    ConvexBody face = ConvexBody::hull(members);
    const bool exposed = face.size() == 1;
    std::optional<Vector> facet_dir;
    if (affine_dimension(face) >= 1) facet_dir = Vector(f.coords() / f.coords().squaredNorm());
    return FaceCertificate{f, std::move(face), value, exposed, std::move(facet_dir)};
}

/// Signed distance from k to the relative boundary of the face, measured
/// inside the face's affine hull (negative when k is outside the face).
/// Faces of affine dimension 0 report 0.
inline double relative_interior_margin(const ConvexBody& face, const Vector& k) {
    const PointList& verts = face.vertices();
    const double tol = dedup_tolerance(std::max(face.radius(), k.norm()));
    const int m = affine_dimension(verts, tol);
    if (m == 0) return 0.0;
    Eigen::MatrixXd diffs(k.size(), static_cast<Eigen::Index>(verts.size() - 1));
    for (std::size_t i = 1; i < verts.size(); ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = verts[i] - verts[0];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinU);
    const Eigen::MatrixXd basis = svd.matrixU().leftCols(m);
    const Eigen::VectorXd rel = Eigen::VectorXd(k - verts[0]);
    const Eigen::VectorXd coords = basis.transpose() * rel;
    const double off_plane = (rel - basis * coords).norm();
    if (off_plane > tol) return -off_plane;

    if (m == 1) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& v : verts) {
            const double t = basis.col(0).dot(Eigen::VectorXd(v - verts[0]));
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        return std::min(coords[0] - lo, hi - coords[0]);
    }
    if (m == 2) {
        PointList planar;
        for (const auto& v : verts) {
            const Eigen::VectorXd c = basis.transpose() * Eigen::VectorXd(v - verts[0]);
            planar.push_back(make_vector({c[0], c[1]}));
        }
        const PointList ring = extreme_points(planar);  // counter-clockwise
        const Vector q = make_vector({coords[0], coords[1]});
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Vector& a = ring[i];
            const Vector& b = ring[(i + 1) % ring.size()];
            const Vector edge = b - a;
            const double signed_dist = (edge[0] * (q[1] - a[1]) - edge[1] * (q[0] - a[0])) / edge.norm();
            margin = std::min(margin, signed_dist);
        }
        return margin;
    }
    throw DimensionError("relative_interior_margin: faces of affine dimension > 2 are unsupported");
}

/// True iff f is a facet at k: the face argmax_A f has affine dimension >= 1
/// and k sits in its relative interior with margin kFacetRelTol * diameter(A).
inline bool is_facet_at(const ConvexBody& body, const Vector& k, const Vector& f) {
    if (k.size() != body.dim()) throw DimensionError("is_facet_at: dimension mismatch");
    if (point_distance(body, k) > 1e-8 * body.tolerance_scale()) {
        throw InvalidArgument("is_facet_at: point lies outside the body");
    }
    const FaceCertificate cert = support_face(body, f);
    if (!cert.facet_direction) return false;
    return relative_interior_margin(cert.face, k) > kFacetRelTol * body.diameter();
}

}  // namespace randset
