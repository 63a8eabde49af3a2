#include "spc/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spc {

namespace fs = std::filesystem;

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  // Trailing blank lines are not rows.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_count(std::string_view field, Index& out) {
  field = trim(field);
  if (field.empty()) return false;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || v < 0) return false;
  out = static_cast<Index>(v);
  return true;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + "," + std::to_string(m.cols()) + "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix parse_matrix(std::string_view text, const std::string& source) {
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty()) throw ParseError(source, 1, 1, "empty matrix file");

  std::size_t first_row = 0;
  Index rows = static_cast<Index>(lines.size());
  Index cols = static_cast<Index>(split_fields(lines[0]).size());
  {
    const auto head = split_fields(lines[0]);
    Index r = 0;
    Index c = 0;
    if (head.size() == 2 && parse_count(head[0], r) && parse_count(head[1], c) &&
        static_cast<std::size_t>(r) + 1 == lines.size()) {
      const bool consistent =
          r == 0 || static_cast<Index>(split_fields(lines[1]).size()) == c;
      if (consistent) {
        first_row = 1;
        rows = r;
        cols = c;
      }
    }
  }

  Matrix m(rows, cols);
  for (std::size_t li = first_row; li < lines.size(); ++li) {
    const auto fields = split_fields(lines[li]);
    const std::size_t line_no = li + 1;
    if (static_cast<Index>(fields.size()) != cols) {
      throw ParseError(source, line_no, 1,
                       "expected " + std::to_string(cols) + " fields, found " + std::to_string(fields.size()));
    }
    std::size_t column = 1;
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
      const std::string_view field = trim(fields[fi]);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(source, line_no, column, "invalid number '" + std::string(field) + "'");
      }
      m(static_cast<Index>(li - first_row), static_cast<Index>(fi)) = v;
      column += fields[fi].size() + 1;
    }
  }
  return m;
}

void save_matrix(const fs::path& path, const Matrix& m) { write_file_atomic(path, format_matrix(m)); }

Matrix load_matrix(const fs::path& path) { return parse_matrix(read_file(path), path.string()); }

std::string format_labels(const std::vector<int>& labels) {
  std::string out;
  for (int l : labels) {
    out += std::to_string(l);
    out += '\n';
  }
  return out;
}

std::vector<int> parse_labels(std::string_view text, const std::string& source) {
  std::vector<int> labels;
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view field = trim(lines[li]);
    int v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ParseError(source, li + 1, 1, "invalid label '" + std::string(field) + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

void save_labels(const fs::path& path, const std::vector<int>& labels) {
  write_file_atomic(path, format_labels(labels));
}

std::vector<int> load_labels(const fs::path& path) { return parse_labels(read_file(path), path.string()); }

fs::path companion_labels_path(const fs::path& matrix_path) {
  fs::path p = matrix_path;
  p.replace_extension(".labels");
  return p;
}

Dataset load_dense_matrix(const fs::path& path, const std::optional<fs::path>& labels_path) {
  Matrix values = load_matrix(path);
  std::optional<std::vector<int>> labels;
  if (labels_path) {
    labels = load_labels(*labels_path);
  } else if (const fs::path companion = companion_labels_path(path); fs::exists(companion)) {
    labels = load_labels(companion);
  }
  if (labels && static_cast<Index>(labels->size()) != values.cols()) {
    throw DimensionError("label file has " + std::to_string(labels->size()) + " entries but " + path.string() +
                         " has " + std::to_string(values.cols()) + " samples");
  }
  return Dataset(std::move(values), std::move(labels));
}

void save_dataset(const fs::path& path, const Dataset& x) {
  save_matrix(path, x.values());
  if (x.labels()) save_labels(companion_labels_path(path), *x.labels());
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace spc
