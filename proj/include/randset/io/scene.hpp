#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "randset/random_set.hpp"

namespace randset::io {

inline constexpr int kSceneVersion = 1;

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw SceneError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SceneError(path + "/" + key, "missing field");
    return *it;
}

inline double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SceneError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SceneError(path, "non-finite number");
    return x;
}

inline int version_and_dim(const json& doc, int& dim) {
    const json& version = field(doc, "", "version");
    if (!version.is_number_integer()) throw SceneError("/version", "expected an integer");
    if (version.get<long long>() != kSceneVersion) {
        throw SceneError("/version", "unsupported version " + version.dump());
    }
    const json& d = field(doc, "", "dim");
    if (!d.is_number_integer()) throw SceneError("/dim", "expected an integer");
    const long long dd = d.get<long long>();
    if (dd < 1 || dd > kMaxDim) throw SceneError("/dim", "dimension must be between 1 and " + std::to_string(kMaxDim));
    dim = static_cast<int>(dd);
    return kSceneVersion;
}

inline PointList vertices(const json& v, const std::string& path, int dim) {
    if (!v.is_array() || v.empty()) throw SceneError(path, "expected a non-empty array of points");
    PointList out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const json& pt = v[i];
        if (!pt.is_array()) throw SceneError(p, "expected a coordinate array");
        if (pt.size() != static_cast<std::size_t>(dim)) {
            throw SceneError(p, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(pt.size()));
        }
        Vector x(dim);
        for (int c = 0; c < dim; ++c) x[c] = number(pt[static_cast<std::size_t>(c)], p + "/" + std::to_string(c));
        out.push_back(x);
    }
    return out;
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SceneError("", std::string("invalid JSON: ") + e.what());
    }
}

inline nlohmann::ordered_json point_json(const Vector& v) {
    auto a = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace detail

/// Parses a scene document {version, dim, atoms: [{weight, vertices}]}.
inline DiscreteRandomSet parse_scene(const std::string& text) {
    const auto doc = detail::parse_json(text);
    int dim = 0;
    detail::version_and_dim(doc, dim);
    const auto& atoms = detail::field(doc, "", "atoms");
    if (!atoms.is_array() || atoms.empty()) throw SceneError("/atoms", "expected a non-empty array");
    std::vector<Atom> out;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const std::string p = "/atoms/" + std::to_string(j);
        const double w = detail::number(detail::field(atoms[j], p, "weight"), p + "/weight");
        const PointList pts = detail::vertices(detail::field(atoms[j], p, "vertices"), p + "/vertices", dim);
        out.push_back({w, ConvexBody::hull(pts)});
    }
    try {
        return DiscreteRandomSet::create(std::move(out));
    } catch (const InvalidArgument& e) {
        throw SceneError("/atoms", e.what());
    }
}

/// Parses a single body {version, dim, vertices}. A scene document is also
/// accepted and stands for its expectation.
inline ConvexBody parse_body(const std::string& text) {
    const auto doc = detail::parse_json(text);
    if (doc.is_object() && doc.contains("atoms")) return expectation(parse_scene(text));
    int dim = 0;
    detail::version_and_dim(doc, dim);
    return ConvexBody::hull(detail::vertices(detail::field(doc, "", "vertices"), "/vertices", dim));
}

inline std::string serialize_scene(const DiscreteRandomSet& y) {
    nlohmann::ordered_json doc;
    doc["version"] = kSceneVersion;
    doc["dim"] = y.dim();
    auto atoms = nlohmann::ordered_json::array();
    for (const auto& a : y.atoms()) {
        nlohmann::ordered_json atom;
        atom["weight"] = a.weight;
        auto verts = nlohmann::ordered_json::array();
        for (const auto& v : a.body.vertices()) verts.push_back(detail::point_json(v));
        atom["vertices"] = std::move(verts);
        atoms.push_back(std::move(atom));
    }
    doc["atoms"] = std::move(atoms);
    return doc.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(path + ": read failed");
    return ss.str();
}

inline DiscreteRandomSet load_scene(const std::string& path) {
    try {
        return parse_scene(read_file(path));
    } catch (const SceneError& e) {
        throw SceneError(path + "#" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
    }
}

inline ConvexBody load_body(const std::string& path) {
    try {
        return parse_body(read_file(path));
    } catch (const SceneError& e) {
        throw SceneError(path + "#" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
    }
}

}  // namespace randset::io
