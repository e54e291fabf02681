#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "hsfc/data.hpp"

namespace hsfc {

/// Raised on unreadable files, ragged rows, or cells that do not parse as
/// finite numbers. The message carries 1-based row/column positions.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a rectangular numeric CSV into a DataMatrix. Cells are parsed as
/// 64-bit floats with '.' as the decimal point, independent of locale.
/// Accepts '\n' and '\r\n' line endings. When has_header is set the first
/// row is kept as feature names instead of data.
DataMatrix load_csv(const std::filesystem::path& path, bool has_header = false,
                    char delimiter = ',');

/// Writes values with 17 significant digits so load_csv round-trips them
/// bit-exactly. Feature names, when present, become a header row.
void write_csv(const std::filesystem::path& path, const DataMatrix& data,
               char delimiter = ',');

/// Single-column integer CSV, used for ground-truth label sidecars.
void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<int>& labels);
std::vector<int> load_labels_csv(const std::filesystem::path& path);

}  // namespace hsfc
