#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "randset/errors.hpp"

namespace randset {

/// Largest supported ambient dimension. Vectors are stack allocated.
inline constexpr int kMaxDim = 3;

/// A point of R^d; under the Euclidean pairing it also serves as a linear functional.
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::AutoAlign, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::AutoAlign, kMaxDim, kMaxDim>;

using PointList = std::vector<Vector>;

inline Vector make_vector(std::initializer_list<double> coords) {
    if (coords.size() == 0 || coords.size() > static_cast<std::size_t>(kMaxDim)) {
        throw DimensionError("vector dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
    Vector v(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) v[i++] = c;
    return v;
}

inline Vector make_vector(std::span<const double> coords) {
    if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDim)) {
        throw DimensionError("vector dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
    Vector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords[i];
    return v;
}

inline bool is_finite(const Vector& v) { return v.allFinite(); }

inline void require_same_dim(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    }
}

/// A unit vector of the dual sphere. The only way to build one is by normalizing.
class Direction {
public:
    explicit Direction(const Vector& u) {
        if (!is_finite(u)) throw InvalidArgument("direction has non-finite coordinates");
        const double n = u.norm();
        if (!(n > 0.0)) throw InvalidArgument("direction must be nonzero");
        coords_ = u / n;
    }

    const Vector& coords() const noexcept { return coords_; }
    Eigen::Index dim() const noexcept { return coords_.size(); }
    double dot(const Vector& v) const { return coords_.dot(v); }

    operator const Vector&() const noexcept { return coords_; }

private:
    Vector coords_;
};

/// Derivative of the Euclidean norm at x, i.e. x/|x|. It satisfies
/// HB(x) = |x| and |HB(h)| <= |h|.
inline Direction norm_gradient(const Vector& x) {
    if (!is_finite(x)) throw InvalidArgument("norm_gradient: non-finite input");
    if (x.norm() == 0.0) throw InvalidArgument("norm_gradient: undefined at the zero vector");
    return Direction(x);
}

}  // namespace randset
