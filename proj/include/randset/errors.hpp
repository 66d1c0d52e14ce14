#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace randset {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different dimensions, or a dimension is unsupported.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid argument to an operation (empty input, negative scale, zero direction...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An internal geometric consistency check failed; this indicates a bug or a
/// numerically hopeless input, never an expected outcome.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// The functional does not expose a point of the expectation. Carries the
/// zero-based indices of the atoms whose face is not a singleton.
class NotExposed : public Error {
public:
    NotExposed(std::string what, std::vector<std::size_t> atoms)
        : Error(std::move(what)), atoms_(std::move(atoms)) {}

    const std::vector<std::size_t>& atoms() const noexcept { return atoms_; }

private:
    std::vector<std::size_t> atoms_;
};

/// The mean of the nearest-point selection is not the nearest point of the expectation.
class IncompatibleSelection : public Error {
public:
    using Error::Error;
};

/// The nearest point of the expectation is not contained in a facet.
class NoFacet : public Error {
public:
    using Error::Error;
};

/// The query point lies inside the body.
class InsideBody : public Error {
public:
    using Error::Error;
};

/// Too many replications produced a non-singleton face where a singleton was expected.
class DegenerateFace : public Error {
public:
    using Error::Error;
};

/// Malformed scene or body file. `path` is a JSON-pointer-like location.
class SceneError : public Error {
public:
    SceneError(std::string path, const std::string& reason)
        : Error(path + ": " + reason), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace randset
