// randset command-line driver.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randset/io/report.hpp"
#include "randset/io/scene.hpp"
#include "randset/randset.hpp"

namespace {

using namespace randset;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerdict = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p <= end) {
        const char* comma = std::find(p, end, ',');
        T v{};
        const auto res = std::from_chars(p, comma, v);
        if (res.ec != std::errc() || res.ptr != comma) {
            throw UsageError(std::string(what) + ": cannot parse '" + text + "'");
        }
        out.push_back(v);
        p = comma + 1;
    }
    return out;
}

Vector parse_vector(const std::string& text, Eigen::Index dim, const char* what) {
    const auto xs = parse_list<double>(text, what);
    if (static_cast<Eigen::Index>(xs.size()) != dim) {
        throw UsageError(std::string(what) + ": expected " + std::to_string(dim) + " components");
    }
    const Vector v = make_vector(std::span<const double>(xs));
    if (!is_finite(v)) throw UsageError(std::string(what) + ": non-finite component");
    return v;
}

std::string fmt(double x) { return io::format_double(x); }

std::string fmt(const Vector& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
    return s;
}

ordered_json to_json(const Vector& v) {
    auto a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

void print_body(const ConvexBody& body) {
    for (const auto& v : body.vertices()) std::cout << fmt(v) << "\n";
}

// Everything a simulation needs; also the body of the manifest.
struct SimulateArgs {
    std::string kind;
    std::string scene_path;
    std::string scene_text;
    std::uint64_t seed = 0;
    long long reps = 0;
    std::string sizes;
    std::string dir;
    std::string point;
    int threads = 0;
    std::string out;
};

ordered_json manifest_of(const SimulateArgs& a, const DiscreteRandomSet& y, const ExperimentConfig& cfg) {
    ordered_json m;
    m["command"] = "simulate";
    m["experiment"] = a.kind;
    m["scene_path"] = a.scene_path;
    m["scene_text"] = a.scene_text;
    m["master_seed"] = a.seed;
    m["config"] = {{"replications", cfg.replications}, {"sample_sizes", cfg.sample_sizes}, {"threads", a.threads}};
    if (!a.dir.empty()) {
        m["dir_raw"] = a.dir;
        m["dir"] = to_json(Direction(parse_vector(a.dir, y.dim(), "--dir")).coords());
    }
    if (!a.point.empty()) m["point"] = to_json(parse_vector(a.point, y.dim(), "--point"));
    m["out"] = a.out;
    return m;
}

int run_simulation(const SimulateArgs& a) {
    if (a.reps < 1) throw UsageError("--reps must be at least 1");
    const DiscreteRandomSet y = [&] {
        try {
            return io::parse_scene(a.scene_text);
        } catch (const SceneError& e) {
            throw SceneError(a.scene_path + "#" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
        }
    }();
    ExperimentConfig cfg;
    cfg.master_seed = a.seed;
    cfg.replications = a.reps;
    cfg.sample_sizes = parse_list<long long>(a.sizes, "--sizes");
    cfg.threads = a.threads;
    cfg.validate();

    auto need = [&](const std::string& s, const char* flag) {
        if (s.empty()) throw UsageError(a.kind + " requires " + flag);
        return parse_vector(s, y.dim(), flag);
    };
    ExperimentReport report;
    if (a.kind == "lln") {
        report = lln_experiment(y, cfg);
    } else if (a.kind == "clt-hausdorff") {
        report = clt_hausdorff_experiment(y, cfg);
    } else if (a.kind == "clt-exposed") {
        report = clt_exposed_experiment(y, need(a.dir, "--dir"), cfg);
    } else if (a.kind == "clt-tangent") {
        report = clt_tangent_experiment(y, need(a.dir, "--dir"), cfg);
    } else if (a.kind == "clt-facet") {
        report = clt_facet_experiment(y, need(a.point, "--point"), cfg);
    } else if (a.kind == "facet-freq") {
        report = facet_frequency_experiment(y, need(a.dir, "--dir"), cfg);
    } else {
        throw UsageError("unknown experiment '" + a.kind + "'");
    }
    const auto paths = io::write_report(report, a.out, manifest_of(a, y, cfg));
    for (const auto& v : report.verdicts) {
        std::cout << (v.passed ? "ok   " : "FAIL ") << v.name << (v.detail.empty() ? "" : "  " + v.detail) << "\n";
    }
    std::cout << "records: " << paths.records.string() << "\n";
    std::cerr << "elapsed " << fmt(report.duration_seconds) << " s\n";
    return report.passed() ? kExitOk : kExitVerdict;
}

SimulateArgs from_manifest(const std::string& path, const std::string& out) {
    ordered_json m;
    try {
        m = ordered_json::parse(io::read_file(path));
        SimulateArgs a;
        if (m.at("command").get<std::string>() != "simulate") throw UsageError(path + ": not a simulate manifest");
        a.kind = m.at("experiment").get<std::string>();
        a.scene_path = m.at("scene_path").get<std::string>();
        a.scene_text = m.at("scene_text").get<std::string>();
        a.seed = m.at("master_seed").get<std::uint64_t>();
        const auto& cfg = m.at("config");
        a.reps = cfg.at("replications").get<long long>();
        std::string sizes;
        for (const auto& n : cfg.at("sample_sizes")) sizes += (sizes.empty() ? "" : ",") + std::to_string(n.get<long long>());
        a.sizes = sizes;
        a.threads = cfg.at("threads").get<int>();
        if (m.contains("dir_raw")) a.dir = m.at("dir_raw").get<std::string>();
        if (m.contains("point")) {
            std::string p;
            for (const auto& x : m.at("point")) p += (p.empty() ? "" : ",") + fmt(x.get<double>());
            a.point = p;
        }
        a.out = out;
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": malformed manifest: " + e.what());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Random convex sets: expectations, faces and Monte Carlo limit theorems"};
    app.require_subcommand(1);

    std::string scene;
    std::string dir;
    std::string point;

    auto* expect_cmd = app.add_subcommand("expectation", "print the vertices of E Y");
    expect_cmd->add_option("--scene", scene, "scene JSON")->required();

    std::string body_a;
    std::string body_b;
    int grid = 3600;
    auto* haus_cmd = app.add_subcommand("hausdorff", "exact and support-grid Hausdorff distance");
    haus_cmd->add_option("a", body_a, "body or scene JSON")->required();
    haus_cmd->add_option("b", body_b, "body or scene JSON")->required();
    haus_cmd->add_option("--grid", grid, "number of grid directions")->check(CLI::Range(8, 10000000));

    auto* face_cmd = app.add_subcommand("face", "face of E Y exposed by a direction");
    face_cmd->add_option("--scene", scene, "scene JSON")->required();
    face_cmd->add_option("--dir", dir, "direction x,y,...")->required();

    auto* near_cmd = app.add_subcommand("nearest", "nearest point of E Y and the induced selection");
    near_cmd->add_option("--scene", scene, "scene JSON")->required();
    near_cmd->add_option("--point", point, "point x,y,...")->required();

    auto* sfs_cmd = app.add_subcommand("sfs-bound", "Shapley-Folkman gap of the atoms' vertex sets");
    sfs_cmd->add_option("--scene", scene, "scene JSON")->required();

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    sim_cmd->add_option("experiment", sim.kind, "lln|clt-hausdorff|clt-exposed|clt-tangent|clt-facet|facet-freq")
        ->required()
        ->check(CLI::IsMember({"lln", "clt-hausdorff", "clt-exposed", "clt-tangent", "clt-facet", "facet-freq"}));
    sim_cmd->add_option("--scene", sim.scene_path, "scene JSON")->required();
    sim_cmd->add_option("--seed", sim.seed, "master seed")->required();
    sim_cmd->add_option("--reps", sim.reps, "replications")->required();
    sim_cmd->add_option("--sizes", sim.sizes, "increasing sample sizes N1,N2,...")->required();
    sim_cmd->add_option("--dir", sim.dir, "direction x,y,...");
    sim_cmd->add_option("--point", sim.point, "point x,y,...");
    sim_cmd->add_option("--threads", sim.threads, "worker threads (default: RANDSET_THREADS or all cores)");
    sim_cmd->add_option("--out", sim.out, "output directory")->required();

    std::string manifest;
    std::string replay_out;
    auto* replay_cmd = app.add_subcommand("replay", "re-run a simulation from its manifest");
    replay_cmd->add_option("--manifest", manifest, "manifest.json")->required();
    replay_cmd->add_option("--out", replay_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    if (*expect_cmd) {
        print_body(expectation(io::load_scene(scene)));
    } else if (*haus_cmd) {
        const ConvexBody a = io::load_body(body_a);
        const ConvexBody b = io::load_body(body_b);
        std::cout << "exact " << fmt(hausdorff(a, b)) << "\n";
        std::cout << "grid  " << fmt(hausdorff_via_support(a, b, grid)) << "\n";
    } else if (*face_cmd) {
        const DiscreteRandomSet y = io::load_scene(scene);
        const ConvexBody ey = expectation(y);
        const FaceCertificate c = support_face(ey, parse_vector(dir, y.dim(), "--dir"));
        std::cout << "direction " << fmt(c.direction.coords()) << "\n";
        std::cout << "support " << fmt(c.support_value) << "\n";
        std::cout << "exposed " << (c.is_exposed ? "true" : "false") << "\n";
        std::cout << "facet_direction " << (c.facet_direction ? fmt(*c.facet_direction) : "none") << "\n";
        std::cout << "face\n";
        print_body(c.face);
    } else if (*near_cmd) {
        const DiscreteRandomSet y = io::load_scene(scene);
        const Vector x = parse_vector(point, y.dim(), "--point");
        const NearestSelection ns = nearest_point_selection(y, x);
        std::cout << "nearest " << fmt(ns.body_nearest) << "\n";
        std::cout << "distance " << fmt((x - ns.body_nearest).norm()) << "\n";
        for (std::size_t j = 0; j < ns.selection.points.size(); ++j) {
            std::cout << "atom " << j + 1 << " " << fmt(ns.selection.points[j]) << "\n";
        }
        std::cout << "selection_mean " << fmt(ns.selection.mean) << "\n";
        std::cout << "compatible " << (ns.compatible ? "true" : "false") << "\n";
    } else if (*sfs_cmd) {
        const DiscreteRandomSet y = io::load_scene(scene);
        std::vector<PointList> sets;
        for (const auto& a : y.atoms()) sets.push_back(a.body.vertices());
        const ShapleyFolkmanGap g = shapley_folkman_gap(sets);
        std::cout << "gap " << fmt(g.gap) << "\n";
        std::cout << "gap_upper " << fmt(g.gap_upper) << "\n";
        std::cout << "bound " << fmt(g.bound) << "\n";
        return g.gap_upper <= g.bound ? kExitOk : kExitVerdict;
    } else if (*sim_cmd) {
        sim.scene_text = io::read_file(sim.scene_path);
        return run_simulation(sim);
    } else if (*replay_cmd) {
        return run_simulation(from_manifest(manifest, replay_out));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
