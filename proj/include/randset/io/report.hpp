#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "randset/experiment.hpp"

namespace randset::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string records_csv(const ExperimentReport& report) {
    std::string out = "replication,N";
    for (const auto& name : report.stat_names) out += "," + name;
    out += "\n";
    for (const auto& r : report.records) {
        out += std::to_string(r.replication);
        out += ",";
        out += std::to_string(r.n);
        for (double v : r.stats) {
            out += ",";
            out += format_double(v);
        }
        out += "\n";
    }
    return out;
}

inline nlohmann::ordered_json report_json(const ExperimentReport& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["kind"] = report.kind;
    doc["passed"] = report.passed();
    doc["config"] = {{"master_seed", report.config.master_seed},
                     {"replications", report.config.replications},
                     {"sample_sizes", report.config.sample_sizes}};
    ordered_json params = ordered_json::object();
    for (const auto& p : report.parameters) params[p.name] = p.values;
    doc["parameters"] = std::move(params);
    doc["stat_names"] = report.stat_names;
    doc["discarded"] = report.discarded;
    ordered_json metrics = ordered_json::object();
    for (const auto& m : report.metrics) metrics[m.name] = m.value;
    doc["metrics"] = std::move(metrics);
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : report.verdicts) {
        verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
    }
    doc["verdicts"] = std::move(verdicts);
    return doc;
}

struct ReportPaths {
    std::filesystem::path report;
    std::filesystem::path records;
    std::filesystem::path manifest;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(path.string() + ": cannot open for writing");
    out << text;
    out.close();
    if (!out) throw Error(path.string() + ": write failed");
}

/// Writes report.json, records.csv and manifest.json into `dir`. `manifest`
/// carries the command and resolved inputs; artifact paths and the tool
/// version are added here.
inline ReportPaths write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                nlohmann::ordered_json manifest) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(dir.string() + ": cannot create directory: " + ec.message());
    const ReportPaths paths{dir / "report.json", dir / "records.csv", dir / "manifest.json"};
    write_text(paths.report, report_json(report).dump(2) + "\n");
    write_text(paths.records, records_csv(report));
    manifest["artifacts"] = {{"report", paths.report.string()},
                             {"records", paths.records.string()},
                             {"manifest", paths.manifest.string()}};
    manifest["tool_version"] = kToolVersion;
    write_text(paths.manifest, manifest.dump(2) + "\n");
    return paths;
}

}  // namespace randset::io
