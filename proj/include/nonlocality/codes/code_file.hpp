#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "nonlocality/codes/alist.hpp"
#include "nonlocality/codes/stabilizer_code.hpp"

namespace nonlocality {

// Code description file: a line holding n, then the hx and hz alist blocks.
inline std::string write_code_file(const StabilizerCode& code) {
  std::ostringstream out;
  out << code.n() << '\n' << write_alist(code.hx()) << write_alist(code.hz());
  return out.str();
}

inline StabilizerCode parse_code_file(std::string_view text) {
  LineCursor in(text);
  const auto header = in.take_numbers("qubit count");
  if (header.size() != 1) throw ParseError(in.last_line(), "malformed header: expected n");
  const std::size_t header_line = in.last_line();
  auto hx = parse_alist(in);
  auto hz = parse_alist(in);
  if (!in.done()) throw ParseError(in.line_number(), "trailing content after hz block");
  if (hx.cols() != header[0] || hz.cols() != header[0]) {
    throw ParseError(header_line, "n = " + std::to_string(header[0]) + " disagrees with check matrix widths");
  }
  return css_from_checks(std::move(hx), std::move(hz));
}

// The 3 x 7 Hamming check matrix: column j (1-based) is the binary form of j.
inline BinaryMatrix hamming_7_4() {
  std::vector<std::vector<std::size_t>> rows(3);
  for (std::size_t j = 1; j <= 7; ++j) {
    for (std::size_t bit = 0; bit < 3; ++bit) {
      if ((j >> bit) & 1u) rows[bit].push_back(j - 1);
    }
  }
  return BinaryMatrix::from_rows(7, rows);
}

// (L-1) x L parity checks of the length-L repetition code.
inline BinaryMatrix repetition_checks(std::size_t L) {
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i + 1 < L; ++i) rows.push_back({i, i + 1});
  return BinaryMatrix::from_rows(L, rows);
}

}  // namespace nonlocality
