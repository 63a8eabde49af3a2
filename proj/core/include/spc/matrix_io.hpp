#pragma once

#include "spc/dataset.hpp"
#include "spc/numerics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spc {

/// Parse failure carrying the 1-based line and column of the bad field.
class ParseError : public Error {
public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Dense matrix text format: a "rows,cols" header line, then one
// comma-separated line per row, values at 17 significant digits.
// Headerless files are accepted on read.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(std::string_view text, const std::string& source = "<memory>");
void save_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);

/// One integer per line.
std::string format_labels(const std::vector<int>& labels);
std::vector<int> parse_labels(std::string_view text, const std::string& source = "<memory>");
void save_labels(const std::filesystem::path& path, const std::vector<int>& labels);
std::vector<int> load_labels(const std::filesystem::path& path);

/// `data.csv` -> `data.labels`.
std::filesystem::path companion_labels_path(const std::filesystem::path& matrix_path);

/// Loads an m x n matrix (columns are samples). Labels come from
/// `labels_path` if given, else from the companion file when it exists.
Dataset load_dense_matrix(const std::filesystem::path& path,
                          const std::optional<std::filesystem::path>& labels_path = std::nullopt);
/// Writes the matrix and, when present, the companion labels file.
void save_dataset(const std::filesystem::path& path, const Dataset& x);

/// Write to a sibling temp file, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace spc
