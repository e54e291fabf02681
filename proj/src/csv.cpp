#include "hsfc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace hsfc {

namespace {

std::vector<std::string_view> split_line(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
  cell = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
    std::ostringstream os;
    os << "non-numeric cell '" << std::string(cell) << "' at row " << row
       << ", column " << col;
    throw CsvError(os.str());
  }
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "non-finite value at row " << row << ", column " << col;
    throw CsvError(os.str());
  }
  return value;
}

}  // namespace

DataMatrix load_csv(const std::filesystem::path& path, bool has_header,
                    char delimiter) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError("cannot open '" + path.string() + "' for reading");
  }

  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && lineno > 1 && in.peek() == std::ifstream::traits_type::eof()) {
      break;  // trailing newline
    }
    const auto cells = split_line(line, delimiter);
    if (lineno == 1 && has_header) {
      for (const auto& c : cells) feature_names.emplace_back(trim(c));
      width = cells.size();
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      std::ostringstream os;
      os << "ragged row " << lineno << ": expected " << width << " cells, got "
         << cells.size();
      throw CsvError(os.str());
    }
    std::vector<double> parsed(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      parsed[j] = parse_cell(cells[j], lineno, j + 1);
    }
    rows.push_back(std::move(parsed));
  }
  if (in.bad()) {
    throw CsvError("I/O error while reading '" + path.string() + "'");
  }
  if (rows.empty()) {
    throw CsvError("'" + path.string() + "' contains no data rows");
  }

  Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return DataMatrix(std::move(values), std::move(feature_names));
}

void write_csv(const std::filesystem::path& path, const DataMatrix& data,
               char delimiter) {
  std::ofstream out(path);
  if (!out) {
    throw CsvError("cannot open '" + path.string() + "' for writing");
  }
  out.precision(17);
  if (!data.feature_names().empty()) {
    for (Index j = 0; j < data.p(); ++j) {
      if (j) out << delimiter;
      out << data.feature_names()[static_cast<std::size_t>(j)];
    }
    out << '\n';
  }
  for (Index i = 0; i < data.n(); ++i) {
    for (Index j = 0; j < data.p(); ++j) {
      if (j) out << delimiter;
      out << data.values()(i, j);
    }
    out << '\n';
  }
  if (!out) {
    throw CsvError("I/O error while writing '" + path.string() + "'");
  }
}

void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) {
    throw CsvError("cannot open '" + path.string() + "' for writing");
  }
  out << "label\n";
  for (const int l : labels) out << l << '\n';
  if (!out) {
    throw CsvError("I/O error while writing '" + path.string() + "'");
  }
}

std::vector<int> load_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError("cannot open '" + path.string() + "' for reading");
  }
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "label") continue;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      std::ostringstream os;
      os << "non-integer label '" << line << "' at row " << lineno;
      throw CsvError(os.str());
    }
    labels.push_back(value);
  }
  if (labels.empty()) {
    throw CsvError("'" + path.string() + "' contains no labels");
  }
  return labels;
}

}  // namespace hsfc
