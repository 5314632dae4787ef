#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "scale/active_loop.hpp"
#include "scale/error.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "active_loop";

bool parse_fields(std::string_view line, std::vector<long long>& out) {
    out.clear();
    while (true) {
        const auto comma = line.find(',');
        std::string_view f = line.substr(0, comma);
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || ptr != f.data() + f.size()) return false;
        out.push_back(v);
        if (comma == std::string_view::npos) return true;
        line = line.substr(comma + 1);
    }
}

}  // namespace

int LabelOracle::query(std::size_t index) {
    if (const auto it = cache_.find(index); it != cache_.end()) return it->second;
    const int label = lookup(index);
    if (label < 1) throw DataError(kModule, "oracle returned no class for index " + std::to_string(index));
    cache_.emplace(index, label);
    log_.push_back({log_.size() + 1, index, label});
    return label;
}

int GroundTruthOracle::lookup(std::size_t index) const {
    if (index >= labels_.size()) throw DataError(kModule, "oracle index " + std::to_string(index) + " out of range");
    return labels_[index];
}

int ReplayOracle::lookup(std::size_t index) const {
    const auto it = answers_.find(index);
    if (it == answers_.end()) {
        throw DataError(kModule, "replay oracle has no answer for index " + std::to_string(index));
    }
    return it->second;
}

ReplayOracle ReplayOracle::from_csv(const std::filesystem::path& path) {
    std::map<std::size_t, int> answers;
    for (const LabeledIndex& li : read_labeled_indices(path)) answers[li.index] = li.label;
    return ReplayOracle(std::move(answers));
}

std::vector<LabeledIndex> read_labeled_indices(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(kModule, "cannot open " + path.string());
    std::vector<LabeledIndex> out;
    std::vector<long long> fields;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!parse_fields(line, fields)) {
            if (line_no == 1) continue;  // header
            throw DataError(kModule, path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        if (fields.size() < 2 || fields.size() > 3) {
            throw DataError(kModule, path.string() + ":" + std::to_string(line_no) + ": expected 2 or 3 columns");
        }
        const long long index = fields[fields.size() - 2];
        const long long label = fields.back();
        if (index < 0 || label < 1) {
            throw DataError(kModule, path.string() + ":" + std::to_string(line_no) + ": bad index or label");
        }
        out.push_back({static_cast<std::size_t>(index), static_cast<int>(label)});
    }
    return out;
}

std::string format_query_log(const std::vector<QueryRecord>& log) {
    std::ostringstream out;
    out << "order,index,label\n";
    for (const QueryRecord& r : log) out << r.order << ',' << r.index << ',' << r.label << '\n';
    return out.str();
}

void write_query_log(const std::filesystem::path& path, const std::vector<QueryRecord>& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(kModule, "cannot write " + path.string());
    out << format_query_log(log);
}

}  // namespace scale
