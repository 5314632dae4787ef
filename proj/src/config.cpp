#include <array>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "scale/error.hpp"
#include "scale/experiment.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "cli";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(kModule, "bad value '" + value + "' for " + key);
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(kModule, "bad boolean '" + value + "' for " + key);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

std::optional<std::size_t> parse_optional_count(const std::string& key, const std::string& value) {
    if (value.empty() || value == "none") return std::nullopt;
    return parse_number<std::size_t>(key, value);
}

std::string fmt(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

template <typename T>
std::string fmt_optional(const std::optional<T>& v) {
    return v ? std::to_string(*v) : "none";
}

}  // namespace

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
    std::string key = trim(raw_key);
    for (char& c : key) {
        if (c == '_') c = '-';
    }
    const std::string value = trim(raw_value);

    if (key == "dataset") dataset = value;
    else if (key == "features") features = value;
    else if (key == "labels") labels = value;
    else if (key == "grid-height") grid_height = parse_number<std::size_t>(key, value);
    else if (key == "grid-width") grid_width = parse_number<std::size_t>(key, value);
    else if (key == "window") {
        if (value.empty() || value == "none") {
            window.reset();
        } else {
            const auto parts = split(value, ',');
            if (parts.size() != 4) throw ConfigError(kModule, "window needs row_begin,row_end,col_begin,col_end");
            window = PixelWindow{parse_number<std::size_t>(key, parts[0]), parse_number<std::size_t>(key, parts[1]),
                                 parse_number<std::size_t>(key, parts[2]), parse_number<std::size_t>(key, parts[3])};
        }
    } else if (key == "classes") {
        classes.clear();
        if (!value.empty() && value != "all") {
            for (const auto& p : split(value, ',')) classes.push_back(parse_number<int>(key, p));
        }
    } else if (key == "fraction") fraction = parse_number<double>(key, value);
    else if (key == "synthetic-k") synthetic_k = parse_number<std::size_t>(key, value);
    else if (key == "synthetic-dim") synthetic_dim = parse_number<std::size_t>(key, value);
    else if (key == "synthetic-spacing") synthetic_spacing = parse_number<double>(key, value);
    else if (key == "synthetic-radius") synthetic_radius = parse_number<double>(key, value);
    else if (key == "synthetic-points") synthetic_points = parse_number<std::size_t>(key, value);
    else if (key == "synthetic-overlap") synthetic_overlap = parse_number<double>(key, value);
    else if (key == "pca") pca = value;
    else if (key == "pca-dim") pca_dim = parse_number<std::size_t>(key, value);
    else if (key == "pca-var") pca_var = parse_number<double>(key, value);
    else if (key == "pca-max") pca_max = parse_number<std::size_t>(key, value);
    else if (key == "projection") {
        if (value == "normalize") projection = Projection::normalize;
        else if (value == "stereographic") projection = Projection::stereographic;
        else throw ConfigError(kModule, "projection must be normalize or stereographic");
    } else if (key == "n") n = parse_number<int>(key, value);
    else if (key == "theta") theta = parse_number<double>(key, value);
    else if (key == "eta-start") eta_start = parse_number<double>(key, value);
    else if (key == "eta-step") eta_step = parse_number<double>(key, value);
    else if (key == "eta-max") eta_max = parse_number<double>(key, value);
    else if (key == "decay-s") decay_s = parse_number<int>(key, value);
    else if (key == "query-budget") query_budget = parse_optional_count(key, value);
    else if (key == "refine-n") refine_n = parse_bool(key, value);
    else if (key == "refine-max-doublings") refine_max_doublings = parse_number<int>(key, value);
    else if (key == "witness-n") witness_n = parse_number<int>(key, value);
    else if (key == "anchor-cap") anchor_cap = parse_optional_count(key, value);
    else if (key == "oracle") oracle = value;
    else if (key == "replay-file") replay_file = value;
    else if (key == "prequeried") prequeried = value;
    else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
    else if (key == "out-dir") out_dir = value;
    else throw ConfigError(kModule, "unknown configuration key '" + raw_key + "'");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    std::string window_text = "none";
    if (window) {
        window_text = std::to_string(window->row_begin) + "," + std::to_string(window->row_end) + "," +
                      std::to_string(window->col_begin) + "," + std::to_string(window->col_end);
    }
    std::string class_text = classes.empty() ? "all" : "";
    for (std::size_t i = 0; i < classes.size(); ++i) class_text += (i ? "," : "") + std::to_string(classes[i]);

    return {
        {"dataset", dataset},
        {"features", features},
        {"labels", labels},
        {"grid-height", std::to_string(grid_height)},
        {"grid-width", std::to_string(grid_width)},
        {"window", window_text},
        {"classes", class_text},
        {"fraction", fmt(fraction)},
        {"synthetic-k", std::to_string(synthetic_k)},
        {"synthetic-dim", std::to_string(synthetic_dim)},
        {"synthetic-spacing", fmt(synthetic_spacing)},
        {"synthetic-radius", fmt(synthetic_radius)},
        {"synthetic-points", std::to_string(synthetic_points)},
        {"synthetic-overlap", fmt(synthetic_overlap)},
        {"pca", pca},
        {"pca-dim", std::to_string(pca_dim)},
        {"pca-var", fmt(pca_var)},
        {"pca-max", std::to_string(pca_max)},
        {"projection", projection == Projection::normalize ? "normalize" : "stereographic"},
        {"n", std::to_string(n)},
        {"theta", fmt(theta)},
        {"eta-start", fmt(eta_start)},
        {"eta-step", fmt(eta_step)},
        {"eta-max", fmt(eta_max)},
        {"decay-s", std::to_string(decay_s)},
        {"query-budget", fmt_optional(query_budget)},
        {"refine-n", refine_n ? "true" : "false"},
        {"refine-max-doublings", std::to_string(refine_max_doublings)},
        {"witness-n", std::to_string(witness_n)},
        {"anchor-cap", fmt_optional(anchor_cap)},
        {"oracle", oracle},
        {"replay-file", replay_file},
        {"prequeried", prequeried},
        {"seed", std::to_string(seed)},
        {"out-dir", out_dir},
    };
}

void ExperimentConfig::validate() const {
    if (dataset != "synthetic" && dataset != "salinas" && dataset != "indian_pines_subset" && dataset != "custom") {
        throw ConfigError(kModule, "dataset must be synthetic, salinas, indian_pines_subset or custom");
    }
    if (dataset != "synthetic" && (features.empty() || labels.empty())) {
        throw ConfigError(kModule, "dataset '" + dataset + "' needs features and labels files");
    }
    if (dataset == "indian_pines_subset" && !window) {
        throw ConfigError(kModule, "indian_pines_subset needs a 57x41 window (row_begin,row_end,col_begin,col_end)");
    }
    if ((grid_height == 0) != (grid_width == 0)) throw ConfigError(kModule, "grid-height and grid-width go together");
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError(kModule, "fraction must lie in [0, 1]");
    if (pca != "auto" && pca != "on" && pca != "off") throw ConfigError(kModule, "pca must be auto, on or off");
    if (!(pca_var > 0.0 && pca_var <= 1.0)) throw ConfigError(kModule, "pca-var must lie in (0, 1]");
    if (pca_max < 1) throw ConfigError(kModule, "pca-max must be positive");
    if (n < 2) throw ConfigError(kModule, "n must be >= 2");
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError(kModule, "theta must lie in (0, 1]");
    if (!(eta_start > 0.0 && eta_start <= eta_max && eta_max <= std::numbers::pi)) {
        throw ConfigError(kModule, "need 0 < eta-start <= eta-max <= pi");
    }
    if (!(eta_step > 0.0)) throw ConfigError(kModule, "eta-step must be positive");
    if (decay_s < 2) throw ConfigError(kModule, "decay-s must be >= 2");
    if (witness_n < 0 || witness_n == 1) throw ConfigError(kModule, "witness-n must be 0 (same as n) or >= 2");
    if (refine_max_doublings < 1) throw ConfigError(kModule, "refine-max-doublings must be positive");
    if (oracle != "truth" && oracle != "replay") throw ConfigError(kModule, "oracle must be truth or replay");
    if (oracle == "replay" && replay_file.empty()) throw ConfigError(kModule, "replay oracle needs replay-file");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(kModule, "line " + std::to_string(line_no) + ": expected key = value");
        }
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(kModule, "cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse(buf.str());
    // Input files are relative to the config file; out-dir stays relative to the working directory.
    const std::filesystem::path base = path.parent_path();
    for (std::string* file : {&cfg.features, &cfg.labels, &cfg.replay_file, &cfg.prequeried}) {
        if (!file->empty() && std::filesystem::path(*file).is_relative()) *file = (base / *file).string();
    }
    return cfg;
}

}  // namespace scale
