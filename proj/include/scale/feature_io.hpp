#pragma once

#include <filesystem>
#include <vector>

#include "scale/preprocess.hpp"

namespace scale {

// Feature files come in two layouts:
//   CSV    headerless, one sample per row, decimal floating point
//   binary "SCL1", u32 LE rows, u32 LE cols, rows*cols f64 LE, row-major
// read_features() picks the layout from the first four bytes.

RowMatrix read_features(const std::filesystem::path& path);
void write_features_csv(const std::filesystem::path& path, const RowMatrix& features);
void write_features_binary(const std::filesystem::path& path, const RowMatrix& features);

/// Headerless CSV, one integer per line.
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);

}  // namespace scale
