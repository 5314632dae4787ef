#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scale/error.hpp"
#include "scale/experiment.hpp"

namespace scale {

namespace {

std::string fmt(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

nlohmann::ordered_json to_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["accuracy"] = r.accuracy;
    j["points"] = r.points;
    j["queried_count"] = r.queried_count;
    j["queried_fraction"] = r.queried_fraction;
    j["prequeried_count"] = r.prequeried_count;
    j["kept_count"] = r.kept_count;
    j["uncertain_count"] = r.uncertain_count;
    j["pruned_count"] = r.pruned_count;
    j["witness_count"] = r.witness_count;
    j["budget_exhausted"] = r.budget_exhausted;
    j["feature_dim"] = r.feature_dim;
    j["reduced_dim"] = r.reduced_dim;
    j["sphere_dim"] = r.sphere_dim;
    j["degree_used"] = r.degree_used;
    auto& classes = j["per_class_accuracy"] = nlohmann::ordered_json::array();
    for (const ClassAccuracy& c : r.per_class_accuracy) {
        classes.push_back({{"label", c.label}, {"correct", c.correct}, {"total", c.total}, {"accuracy", c.accuracy()}});
    }
    auto& history = j["component_history"] = nlohmann::ordered_json::array();
    for (const ComponentCount& h : r.component_history) history.push_back({{"eta", h.eta}, {"components", h.components}});
    j["map"] = r.map_status;
    j["wall_time_seconds"] = r.wall_time_seconds;
    auto& cfg = j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config_echo) cfg[k] = v;
    return j;
}

}  // namespace

std::string format_report(const ExperimentReport& r) {
    std::ostringstream out;
    out << "# SCALe experiment report\n";
    out << "accuracy = " << fmt(r.accuracy) << '\n';
    out << "points = " << r.points << '\n';
    out << "queried_count = " << r.queried_count << '\n';
    out << "queried_fraction = " << fmt(r.queried_fraction) << '\n';
    out << "prequeried_count = " << r.prequeried_count << '\n';
    out << "kept_count = " << r.kept_count << '\n';
    out << "uncertain_count = " << r.uncertain_count << '\n';
    out << "pruned_count = " << r.pruned_count << '\n';
    out << "witness_count = " << r.witness_count << '\n';
    out << "budget_exhausted = " << (r.budget_exhausted ? "true" : "false") << '\n';
    out << "feature_dim = " << r.feature_dim << '\n';
    out << "reduced_dim = " << r.reduced_dim << '\n';
    out << "sphere_dim = " << r.sphere_dim << '\n';
    out << "degree_used = " << r.degree_used << '\n';
    out << "map = " << r.map_status << '\n';
    out << "wall_time_seconds = " << fmt(r.wall_time_seconds) << '\n';
    out << "\n[per_class_accuracy]\n";
    for (const ClassAccuracy& c : r.per_class_accuracy) {
        out << c.label << " = " << fmt(c.accuracy()) << " (" << c.correct << '/' << c.total << ")\n";
    }
    out << "\n[component_history]\n";
    for (const ComponentCount& h : r.component_history) out << fmt(h.eta) << " = " << h.components << '\n';
    out << "\n[config]\n";
    for (const auto& [k, v] : r.config_echo) out << k << " = " << v << '\n';
    out << "\n--- BEGIN JSON ---\n" << to_json(r).dump(2) << "\n--- END JSON ---\n";
    return out.str();
}

void write_artifacts(const ExperimentResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw DataError("cli", "cannot create output directory " + out_dir.string());
    {
        std::ofstream out(out_dir / "report.txt", std::ios::binary);
        out << format_report(result.report);
    }
    write_query_log(out_dir / "queries.csv", result.query_log);
    if (result.map) {
        std::ofstream out(out_dir / "map.ppm", std::ios::binary);
        out.write(reinterpret_cast<const char*>(result.map->data()), static_cast<std::streamsize>(result.map->size()));
    }
}

}  // namespace scale
