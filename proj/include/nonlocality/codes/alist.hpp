#pragma once

#include <charconv>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonlocality/codes/binary_matrix.hpp"
#include "nonlocality/error.hpp"

namespace nonlocality {

// Non-blank lines of a text with their 1-based line numbers. Shared by the
// alist reader and the code-file reader, which stacks several alist blocks.
class LineCursor {
 public:
  explicit LineCursor(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      ++number;
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.find_first_not_of(" \t") != std::string_view::npos) {
        lines_.emplace_back(number, std::string(line));
      }
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  bool done() const noexcept { return next_ >= lines_.size(); }

  // Current line number, or 0 once the input is exhausted.
  std::size_t line_number() const noexcept { return done() ? 0 : lines_[next_].first; }

  // Parses the next line as unsigned integers.
  std::vector<std::size_t> take_numbers(std::string_view what) {
    if (done()) throw ParseError(0, "unexpected end of input, expected " + std::string(what));
    const auto& [number, line] = lines_[next_++];
    std::vector<std::size_t> values;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(number, "malformed " + std::string(what) + ": '" + token + "'");
      }
      values.push_back(value);
    }
    last_ = number;
    return values;
  }

  std::size_t last_line() const noexcept { return last_; }

 private:
  std::vector<std::pair<std::size_t, std::string>> lines_;
  std::size_t next_ = 0;
  std::size_t last_ = 0;
};

namespace detail {

// One column or row index list. Trailing zeros are padding; a zero anywhere
// else is an index, and indices are 1-based.
inline std::vector<std::size_t> take_index_list(LineCursor& in, std::size_t weight, std::size_t limit,
                                                std::string_view what) {
  auto values = in.take_numbers(what);
  const std::size_t line = in.last_line();
  std::vector<std::size_t> indices;
  bool padding = false;
  for (auto v : values) {
    if (v == 0) {
      padding = true;
      continue;
    }
    if (padding || v > limit) {
      throw ParseError(line, "index out of range in " + std::string(what) + ": " + std::to_string(v));
    }
    indices.push_back(v - 1);
  }
  if (indices.size() != weight) {
    if (padding && indices.size() < weight) {
      throw ParseError(line, "index out of range in " + std::string(what) + ": 0");
    }
    throw ParseError(line, std::string(what) + " has " + std::to_string(indices.size()) +
                               " entries, expected " + std::to_string(weight));
  }
  std::set<std::size_t> unique(indices.begin(), indices.end());
  if (unique.size() != indices.size()) {
    throw ParseError(line, "repeated index in " + std::string(what));
  }
  return indices;
}

}  // namespace detail

// Reads one alist block from the cursor. The first header number is the
// column count, the second the row count.
inline BinaryMatrix parse_alist(LineCursor& in) {
  auto header = in.take_numbers("alist header");
  const std::size_t header_line = in.last_line();
  if (header.size() != 2) throw ParseError(header_line, "malformed header: expected 'cols rows'");
  const std::size_t cols = header[0];
  const std::size_t rows = header[1];

  auto maxima = in.take_numbers("max weights");
  if (maxima.size() != 2) throw ParseError(in.last_line(), "malformed header: expected 'max_col max_row'");

  auto take_weights = [&](std::size_t count, std::size_t max_weight, std::string_view what) {
    if (count == 0) return std::vector<std::size_t>{};
    auto weights = in.take_numbers(what);
    if (weights.size() != count) {
      throw ParseError(in.last_line(), "malformed header: expected " + std::to_string(count) + " " +
                                           std::string(what));
    }
    for (auto w : weights) {
      if (w > max_weight) {
        throw ParseError(in.last_line(), std::string(what) + " exceed declared maximum");
      }
    }
    return weights;
  };
  const auto col_weights = take_weights(cols, maxima[0], "column weights");
  const auto row_weights = take_weights(rows, maxima[1], "row weights");

  std::vector<BinaryMatrix::Entry> entries;
  for (std::size_t c = 0; c < cols; ++c) {
    for (auto r : detail::take_index_list(in, col_weights[c], rows, "column list")) {
      entries.emplace_back(r, c);
    }
  }
  std::set<BinaryMatrix::Entry> from_columns(entries.begin(), entries.end());
  for (std::size_t r = 0; r < rows; ++r) {
    for (auto c : detail::take_index_list(in, row_weights[r], cols, "row list")) {
      if (!from_columns.contains({r, c})) {
        throw ParseError(in.last_line(), "row list inconsistent with column lists at row " +
                                             std::to_string(r + 1) + ", column " + std::to_string(c + 1));
      }
    }
  }
  // Row lists have the declared weights and agree entry-wise, so they match.
  return BinaryMatrix(rows, cols, entries);
}

inline BinaryMatrix parse_alist(std::string_view text) {
  LineCursor in(text);
  return parse_alist(in);
}

inline std::string write_alist(const BinaryMatrix& m) {
  std::ostringstream out;
  const auto columns = m.column_supports();
  out << m.cols() << ' ' << m.rows() << '\n';
  out << m.max_col_weight() << ' ' << m.max_row_weight() << '\n';
  auto join_weights = [&out](const auto& lists) {
    if (lists.empty()) return;
    for (std::size_t i = 0; i < lists.size(); ++i) out << (i ? " " : "") << lists[i].size();
    out << '\n';
  };
  auto join_indices = [&out](std::span<const std::size_t> list) {
    if (list.empty()) {
      out << "0\n";
      return;
    }
    for (std::size_t i = 0; i < list.size(); ++i) out << (i ? " " : "") << list[i] + 1;
    out << '\n';
  };
  join_weights(columns);
  std::vector<std::vector<std::size_t>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
  join_weights(rows);
  for (const auto& col : columns) join_indices(col);
  for (const auto& row : rows) join_indices(row);
  return out.str();
}

}  // namespace nonlocality
