#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seriate/error.hpp"

namespace seriate {

/// Unit / feature identifier. Defaults follow 1-based numbering so that
/// outputs line up with the usual presentation of small study matrices.
using Label = int;

namespace detail {

inline std::vector<Label> default_labels(std::size_t n) {
  std::vector<Label> out(n);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

inline void check_labels_unique(const std::vector<Label>& labels, const char* axis) {
  std::set<Label> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw DomainError(std::string("duplicate ") + axis + " label");
}

}  // namespace detail

/// Dense unit-by-feature matrix of non-negative interaction counts.
/// Rows are the units to be ordered, columns the observed features.
class AbundanceMatrix {
 public:
  AbundanceMatrix() = default;

  AbundanceMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries,
                  std::vector<Label> row_labels = {}, std::vector<Label> col_labels = {})
      : rows_(rows),
        cols_(cols),
        entries_(std::move(entries)),
        row_labels_(row_labels.empty() ? detail::default_labels(rows) : std::move(row_labels)),
        col_labels_(col_labels.empty() ? detail::default_labels(cols) : std::move(col_labels)) {
    if (entries_.size() != rows_ * cols_)
      throw ShapeError("entry count does not match matrix dimensions");
    if (row_labels_.size() != rows_ || col_labels_.size() != cols_)
      throw ShapeError("label count does not match matrix dimensions");
    for (std::int64_t v : entries_)
      if (v < 0) throw DomainError("abundance entries must be non-negative");
    detail::check_labels_unique(row_labels_, "row");
    detail::check_labels_unique(col_labels_, "column");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<std::int64_t>& entries() const { return entries_; }
  const std::vector<Label>& row_labels() const { return row_labels_; }
  const std::vector<Label>& col_labels() const { return col_labels_; }

  bool is_binary() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](std::int64_t v) { return v == 0 || v == 1; });
  }

  bool has_default_col_labels() const { return col_labels_ == detail::default_labels(cols_); }

  friend bool operator==(const AbundanceMatrix&, const AbundanceMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> entries_;
  std::vector<Label> row_labels_;
  std::vector<Label> col_labels_;
};

/// An AbundanceMatrix whose entries are known to be 0/1. Construct via
/// binarize() (or directly, if the data is already binary).
class BinaryMatrix {
 public:
  explicit BinaryMatrix(AbundanceMatrix m) : m_(std::move(m)) {
    if (!m_.is_binary())
      throw DomainError("matrix has entries outside {0,1}; call binarize() first");
  }

  const AbundanceMatrix& matrix() const { return m_; }

  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const std::vector<Label>& row_labels() const { return m_.row_labels(); }
  const std::vector<Label>& col_labels() const { return m_.col_labels(); }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  AbundanceMatrix m_;
};

struct ParseOptions {
  /// Field delimiter; unset means auto-detect (comma if the first data
  /// line contains one, otherwise any whitespace).
  std::optional<char> delimiter;
  /// Treat the first line as integer column labels.
  bool header = false;
};

namespace detail {

inline std::vector<std::string_view> split_line(std::string_view line, std::optional<char> delim) {
  std::vector<std::string_view> out;
  if (delim) {
    std::size_t start = 0;
    while (true) {
      std::size_t p = line.find(*delim, start);
      out.push_back(line.substr(start, p == std::string_view::npos ? p : p - start));
      if (p == std::string_view::npos) break;
      start = p + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::int64_t parse_entry(std::string_view tok, std::size_t line_no, std::size_t col_no) {
  tok = trim(tok);
  auto fail = [&](const char* why) {
    std::ostringstream os;
    os << why << " '" << tok << "' at line " << line_no << ", column " << col_no;
    throw ParseError(os.str());
  };
  if (tok.empty()) fail("empty token");
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("non-integer token");
  if (value < 0) fail("negative entry");
  return value;
}

}  // namespace detail

/// Parse a delimited text block into an AbundanceMatrix. Every data line
/// must hold the same number of non-negative integers.
inline AbundanceMatrix parse_matrix(std::string_view text, const ParseOptions& options = {}) {
  // Collect non-empty lines with their 1-based positions in the text.
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = detail::trim(text.substr(start, end - start));
    if (!line.empty()) lines.emplace_back(line_no, line);
    start = end + 1;
  }
  if (lines.empty()) throw ParseError("no data lines in matrix text");

  std::optional<char> delim = options.delimiter;
  if (!delim && lines.front().second.find(',') != std::string_view::npos) delim = ',';

  std::vector<Label> col_labels;
  std::size_t first_data = 0;
  if (options.header) {
    auto toks = detail::split_line(lines[0].second, delim);
    for (std::size_t j = 0; j < toks.size(); ++j)
      col_labels.push_back(static_cast<Label>(detail::parse_entry(toks[j], lines[0].first, j + 1)));
    first_data = 1;
    if (lines.size() == 1) throw ParseError("header present but no data lines follow");
  }

  std::vector<std::int64_t> entries;
  std::size_t cols = 0, rows = 0;
  for (std::size_t li = first_data; li < lines.size(); ++li) {
    auto [no, line] = lines[li];
    auto toks = detail::split_line(line, delim);
    if (rows == 0) {
      cols = toks.size();
      if (cols == 0) throw ParseError("no entries on first data line");
    } else if (toks.size() != cols) {
      std::ostringstream os;
      os << "ragged matrix: line " << no << " has " << toks.size() << " entries, expected "
         << cols;
      throw ShapeError(os.str());
    }
    for (std::size_t j = 0; j < toks.size(); ++j)
      entries.push_back(detail::parse_entry(toks[j], no, j + 1));
    ++rows;
  }
  if (!col_labels.empty() && col_labels.size() != cols)
    throw ShapeError("header label count does not match data columns");
  return AbundanceMatrix(rows, cols, std::move(entries), {}, std::move(col_labels));
}

/// Inverse of parse_matrix. A header line is emitted only when the column
/// labels differ from the 1..m default.
inline std::string serialize_matrix(const AbundanceMatrix& m, char delimiter = ',') {
  std::ostringstream os;
  if (!m.has_default_col_labels()) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << delimiter;
      os << m.col_labels()[j];
    }
    os << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << delimiter;
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

/// Replace every positive entry with 1. Labels are preserved.
inline BinaryMatrix binarize(const AbundanceMatrix& m) {
  std::vector<std::int64_t> bits(m.entries().size());
  std::transform(m.entries().begin(), m.entries().end(), bits.begin(),
                 [](std::int64_t v) { return v > 0 ? 1 : 0; });
  return BinaryMatrix(AbundanceMatrix(m.rows(), m.cols(), std::move(bits), m.row_labels(),
                                      m.col_labels()));
}

inline BinaryMatrix binarize(const BinaryMatrix& m) { return m; }

/// Embed an n-by-m biadjacency matrix B as the full adjacency matrix
/// [[0, B], [B^T, 0]] of the bipartite graph, of order n+m.
inline BinaryMatrix bipartite_block(const BinaryMatrix& b) {
  const std::size_t n = b.rows(), m = b.cols(), order = n + m;
  std::vector<std::int64_t> entries(order * order, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      entries[i * order + (n + j)] = b(i, j);
      entries[(n + j) * order + i] = b(i, j);
    }
  }
  return BinaryMatrix(AbundanceMatrix(order, order, std::move(entries)));
}

}  // namespace seriate
