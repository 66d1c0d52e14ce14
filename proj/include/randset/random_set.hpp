#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "randset/convex_body.hpp"
#include "randset/distance.hpp"
#include "randset/face.hpp"

namespace randset {

struct Atom {
    double weight;
    ConvexBody body;
};

/// Law of a finitely supported random convex set: P(Y = K_j) = p_j.
class DiscreteRandomSet {
public:
    /// Weight sums within 1e-6 of one are renormalized; anything else is rejected.
    static DiscreteRandomSet create(std::vector<Atom> atoms) {
        if (atoms.empty()) throw InvalidArgument("random set needs at least one atom");
        const auto dim = atoms.front().body.dim();
        double total = 0.0;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            const double w = atoms[j].weight;
            if (!std::isfinite(w) || !(w > 0.0) || w > 1.0 + 1e-6) {
                throw InvalidArgument("atom " + std::to_string(j + 1) + ": weight must be in (0, 1]");
            }
            if (atoms[j].body.dim() != dim) throw DimensionError("random set atoms have mixed dimensions");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-6) {
            throw InvalidArgument("weights sum to " + std::to_string(total) + ", expected 1");
        }
        for (auto& a : atoms) a.weight /= total;
        return DiscreteRandomSet(std::move(atoms));
    }

    Eigen::Index dim() const noexcept { return atoms_.front().body.dim(); }
    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const Atom& atom(std::size_t j) const { return atoms_.at(j); }

    /// |Y| = max_j |K_j|, the (constant) envelope of a finitely supported law.
    double envelope() const noexcept {
        double e = 0.0;
        for (const auto& a : atoms_) e = std::max(e, a.body.radius());
        return e;
    }

    /// Inverse-CDF draw of an atom index for u in [0, 1).
    std::size_t sample(double u) const {
        if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("sample: u must lie in [0, 1)");
        for (std::size_t j = 0; j + 1 < cumulative_.size(); ++j) {
            if (u < cumulative_[j]) return j;
        }
        return cumulative_.size() - 1;
    }

private:
    explicit DiscreteRandomSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        double c = 0.0;
        for (const auto& a : atoms_) {
            c += a.weight;
            cumulative_.push_back(c);
        }
    }

    std::vector<Atom> atoms_;
    std::vector<double> cumulative_;
};

inline std::size_t sample(const DiscreteRandomSet& y, double u) { return y.sample(u); }

/// A choice of one point per atom, with the moments of the induced discrete law.
struct Selection {
    PointList points;
    Vector mean;
    Matrix covariance;
};

inline Selection make_selection(const DiscreteRandomSet& y, PointList points) {
    const auto d = y.dim();
    Vector mean = Vector::Zero(d);
    for (std::size_t j = 0; j < points.size(); ++j) mean += y.atom(j).weight * points[j];
    Matrix cov = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < points.size(); ++j) {
        const Vector c = points[j] - mean;
        cov += y.atom(j).weight * (c * c.transpose());
    }
    cov = (0.5 * (cov + cov.transpose())).eval();
    return Selection{std::move(points), std::move(mean), std::move(cov)};
}

/// E Y = sum_j p_j K_j.
inline ConvexBody expectation(const DiscreteRandomSet& y) {
    ConvexBody acc = scale(y.atom(0).body, y.atom(0).weight);
    for (std::size_t j = 1; j < y.size(); ++j) acc = minkowski_sum(acc, scale(y.atom(j).body, y.atom(j).weight));
    return acc;
}

/// Weighted Minkowski combination sum_j w_j B_j.
inline ConvexBody weighted_sum(const std::vector<ConvexBody>& bodies, const std::vector<double>& weights) {
    ConvexBody acc = scale(bodies.at(0), weights.at(0));
    for (std::size_t j = 1; j < bodies.size(); ++j) acc = minkowski_sum(acc, scale(bodies[j], weights.at(j)));
    return acc;
}

struct ExpectationFace {
    ConvexBody face;
    std::vector<ConvexBody> atom_faces;
};

/// Face of E Y in direction f together with the atom faces. Verifies that the
/// face of the expectation equals the expectation of the faces; a residual
/// above 1e-9 (relative) is a GeometryError.
inline ExpectationFace expectation_face(const DiscreteRandomSet& y, const Vector& f) {
    const ConvexBody ey = expectation(y);
    FaceCertificate cert = support_face(ey, f);
    std::vector<ConvexBody> atom_faces;
    std::vector<double> weights;
    for (const auto& a : y.atoms()) {
        atom_faces.push_back(support_face(a.body, f).face);
        weights.push_back(a.weight);
    }
    const ConvexBody combined = weighted_sum(atom_faces, weights);
    const double residual = hausdorff(cert.face, combined);
    if (residual > 1e-9 * ey.tolerance_scale()) {
        throw GeometryError("expectation_face: face of E Y differs from the mean of atom faces by " +
                            std::to_string(residual));
    }
    return ExpectationFace{std::move(cert.face), std::move(atom_faces)};
}

/// The unique selection k(w) in argmax_{Y(w)} f when f exposes a point of E Y.
inline Selection exposed_selection(const DiscreteRandomSet& y, const Vector& f) {
    const ExpectationFace ef = expectation_face(y, f);
    std::vector<std::size_t> offending;
    for (std::size_t j = 0; j < ef.atom_faces.size(); ++j) {
        if (ef.atom_faces[j].size() != 1) offending.push_back(j);
    }
    if (ef.face.size() != 1 || !offending.empty()) {
        std::string names;
        for (std::size_t j : offending) names += (names.empty() ? "" : ", ") + std::to_string(j + 1);
        throw NotExposed("direction does not expose a point of E Y; non-singleton face on atom(s) " + names,
                         std::move(offending));
    }
    PointList points;
    for (const auto& face : ef.atom_faces) points.push_back(face.vertices().front());
    Selection sel = make_selection(y, std::move(points));
    if ((sel.mean - ef.face.vertices().front()).norm() > 1e-9 * ef.face.tolerance_scale()) {
        throw GeometryError("exposed_selection: selection mean misses the exposed point of E Y");
    }
    return sel;
}

struct NearestSelection {
    Selection selection;
    Vector body_nearest;  // k_x(E Y)
    bool compatible;      // selection mean equals k_x(E Y) within 1e-6
};

/// Per-atom nearest points k_x(K_j) and their moments.
inline NearestSelection nearest_point_selection(const DiscreteRandomSet& y, const Vector& x) {
    PointList points;
    for (const auto& a : y.atoms()) points.push_back(nearest_point(a.body, x));
    Selection sel = make_selection(y, std::move(points));
    Vector k = nearest_point(expectation(y), x);
    const bool ok = (sel.mean - k).norm() <= 1e-6;
    return NearestSelection{std::move(sel), std::move(k), ok};
}

/// sigma^2(u) = Var s_Y(u).
inline double tangent_variance(const DiscreteRandomSet& y, const Vector& u) {
    const Direction dir(u);
    std::vector<double> s;
    double mean = 0.0;
    for (const auto& a : y.atoms()) {
        s.push_back(support(a.body, dir.coords()));
        mean += a.weight * s.back();
    }
    double var = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) var += y.atom(j).weight * (s[j] - mean) * (s[j] - mean);
    return var;
}

struct FacetInheritance {
    double p_facet;  // total weight of atoms whose f-face has affine dimension >= 1
    double prob_n;   // 1 - (1 - p_facet)^N
};

inline FacetInheritance facet_inheritance(const DiscreteRandomSet& y, const Vector& f, long long n) {
    if (n < 1) throw InvalidArgument("facet_inheritance: N must be positive");
    double p = 0.0;
    for (const auto& a : y.atoms()) {
        if (support_face(a.body, f).facet_direction) p += a.weight;
    }
    p = std::min(p, 1.0);
    return {p, 1.0 - std::pow(1.0 - p, static_cast<double>(n))};
}

}  // namespace randset
