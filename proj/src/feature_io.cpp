#include "scale/feature_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <string_view>

#include "scale/error.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "preprocess";
constexpr std::array<char, 4> kMagic = {'S', 'C', 'L', '1'};

static_assert(std::endian::native == std::endian::little,
              "binary feature I/O assumes a little-endian host");

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(kModule, "cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(kModule, "cannot write " + path.string());
    return out;
}

RowMatrix read_binary(std::ifstream& in, const std::filesystem::path& path) {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    in.read(reinterpret_cast<char*>(&rows), sizeof rows);
    in.read(reinterpret_cast<char*>(&cols), sizeof cols);
    if (!in) throw DataError(kModule, path.string() + ": truncated SCL1 header");
    RowMatrix out(rows, cols);
    in.read(reinterpret_cast<char*>(out.data()),
            static_cast<std::streamsize>(sizeof(double) * rows * cols));
    if (!in) throw DataError(kModule, path.string() + ": SCL1 payload shorter than header claims");
    return out;
}

RowMatrix read_csv(std::ifstream& in, const std::filesystem::path& path) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = trim(line);
        if (rest.empty()) continue;
        std::size_t count = 0;
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view field = trim(rest.substr(0, comma));
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                throw DataError(kModule, path.string() + ":" + std::to_string(line_no) +
                                             ": cannot parse '" + std::string(field) + "'");
            }
            values.push_back(v);
            ++count;
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (rows == 0) cols = count;
        if (count != cols) {
            throw DataError(kModule, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                         std::to_string(cols) + " columns, found " + std::to_string(count));
        }
        ++rows;
    }
    RowMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (!values.empty()) std::memcpy(out.data(), values.data(), values.size() * sizeof(double));
    return out;
}

}  // namespace

RowMatrix read_features(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::array<char, 4> head{};
    in.read(head.data(), head.size());
    const bool binary = in.gcount() == 4 && head == kMagic;
    RowMatrix out;
    if (binary) {
        out = read_binary(in, path);
    } else {
        in.clear();
        in.seekg(0);
        out = read_csv(in, path);
    }
    if (out.rows() < 1 || out.cols() < 1) throw DataError(kModule, path.string() + ": no feature rows");
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        if (!out.row(r).allFinite()) {
            throw DataError(kModule, path.string() + ": non-finite value in row " + std::to_string(r));
        }
    }
    return out;
}

void write_features_csv(const std::filesystem::path& path, const RowMatrix& features) {
    std::ofstream out = open_out(path);
    std::array<char, 64> buf{};
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        for (Eigen::Index c = 0; c < features.cols(); ++c) {
            // Shortest round-trip representation.
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), features(r, c));
            if (c) out.put(',');
            out.write(buf.data(), res.ptr - buf.data());
        }
        out.put('\n');
    }
}

void write_features_binary(const std::filesystem::path& path, const RowMatrix& features) {
    std::ofstream out = open_out(path);
    const auto rows = static_cast<std::uint32_t>(features.rows());
    const auto cols = static_cast<std::uint32_t>(features.cols());
    out.write(kMagic.data(), kMagic.size());
    out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    out.write(reinterpret_cast<const char*>(features.data()),
              static_cast<std::streamsize>(sizeof(double) * rows * cols));
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view field = trim(line);
        if (field.empty()) continue;
        int v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size() || v < 0) {
            throw DataError(kModule, path.string() + ":" + std::to_string(line_no) +
                                         ": expected a non-negative integer label");
        }
        labels.push_back(v);
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
    std::ofstream out = open_out(path);
    for (int l : labels) out << l << '\n';
}

}  // namespace scale
