#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonlocality/codes/binary_matrix.hpp"
#include "nonlocality/error.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/rng.hpp"

namespace nonlocality {

// CSS code given by commuting X-type and Z-type check matrices on n qubits.
//
// row_weight_max bounds the number of qubits any check acts on; col_weight_max
// bounds the number of checks (of either type) any qubit takes part in.
class StabilizerCode {
 public:
  std::size_t n() const noexcept { return n_; }
  const BinaryMatrix& hx() const noexcept { return hx_; }
  const BinaryMatrix& hz() const noexcept { return hz_; }
  std::size_t row_weight_max() const noexcept { return row_weight_max_; }
  std::size_t col_weight_max() const noexcept { return col_weight_max_; }
  std::size_t check_count() const noexcept { return hx_.rows() + hz_.rows(); }

  // Supports of all checks, X-type rows first.
  std::vector<std::vector<std::size_t>> check_supports() const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto* m : {&hx_, &hz_}) {
      for (std::size_t r = 0; r < m->rows(); ++r) out.emplace_back(m->row(r).begin(), m->row(r).end());
    }
    return out;
  }

  friend StabilizerCode css_from_checks(BinaryMatrix hx, BinaryMatrix hz);

 private:
  std::size_t n_ = 0;
  BinaryMatrix hx_;
  BinaryMatrix hz_;
  std::size_t row_weight_max_ = 0;
  std::size_t col_weight_max_ = 0;
};

// Throws CommutationError naming the first (x-row, z-row) pair with odd overlap.
inline StabilizerCode css_from_checks(BinaryMatrix hx, BinaryMatrix hz) {
  if (hx.cols() != hz.cols()) {
    throw Error("hx has " + std::to_string(hx.cols()) + " columns but hz has " + std::to_string(hz.cols()));
  }
  for (std::size_t i = 0; i < hx.rows(); ++i) {
    const auto a = hx.row(i);
    for (std::size_t j = 0; j < hz.rows(); ++j) {
      const auto b = hz.row(j);
      std::size_t overlap = 0;
      for (auto p = a.begin(), q = b.begin(); p != a.end() && q != b.end();) {
        if (*p < *q) {
          ++p;
        } else if (*q < *p) {
          ++q;
        } else {
          ++overlap;
          ++p;
          ++q;
        }
      }
      if (overlap % 2 != 0) throw CommutationError(i, j);
    }
  }
  StabilizerCode code;
  code.n_ = hx.cols();
  code.row_weight_max_ = std::max(hx.max_row_weight(), hz.max_row_weight());
  std::vector<std::size_t> per_qubit(code.n_, 0);
  for (const auto* m : {&hx, &hz}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      for (auto q : m->row(r)) ++per_qubit[q];
    }
  }
  code.col_weight_max_ = per_qubit.empty() ? 0 : *std::max_element(per_qubit.begin(), per_qubit.end());
  code.hx_ = std::move(hx);
  code.hz_ = std::move(hz);
  return code;
}

// Toric code on an L x L torus (periodic) or the rotated planar surface code
// on an L x L patch of data qubits (open). Planar qubit (x, y) has index
// y * L + x, so a row-major grid placement is the natural layout.
inline StabilizerCode surface_code(std::size_t L, bool periodic) {
  if (L < 2) throw Error("surface code needs L >= 2");
  std::vector<std::vector<std::size_t>> x_checks, z_checks;
  if (periodic) {
    auto h = [L](std::size_t x, std::size_t y) { return (y % L) * L + (x % L); };
    auto v = [L](std::size_t x, std::size_t y) { return L * L + (y % L) * L + (x % L); };
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t x = 0; x < L; ++x) {
        x_checks.push_back({h(x, y), h(x + L - 1, y), v(x, y), v(x, y + L - 1)});
        z_checks.push_back({h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)});
      }
    }
    for (auto& c : x_checks) std::sort(c.begin(), c.end());
    for (auto& c : z_checks) std::sort(c.begin(), c.end());
    return css_from_checks(BinaryMatrix::from_rows(2 * L * L, x_checks),
                           BinaryMatrix::from_rows(2 * L * L, z_checks));
  }
  // Plaquette (i, j) covers data qubits (i..i+1, j..j+1), for i, j in [-1, L-1].
  // Checkerboard colouring picks the type; X-type plaquettes survive only on
  // the top and bottom edges and Z-type only on the left and right edges.
  const auto side = static_cast<long>(L);
  for (long j = -1; j < side; ++j) {
    for (long i = -1; i < side; ++i) {
      const bool x_type = ((i + j) % 2 + 2) % 2 == 0;
      const bool col_edge = (i == -1 || i == side - 1);
      const bool row_edge = (j == -1 || j == side - 1);
      if (col_edge && row_edge) continue;
      if (row_edge && !x_type) continue;
      if (col_edge && x_type) continue;
      std::vector<std::size_t> support;
      for (long dy = 0; dy <= 1; ++dy) {
        for (long dx = 0; dx <= 1; ++dx) {
          const long x = i + dx, y = j + dy;
          if (x >= 0 && x < side && y >= 0 && y < side) {
            support.push_back(static_cast<std::size_t>(y * side + x));
          }
        }
      }
      std::sort(support.begin(), support.end());
      (x_type ? x_checks : z_checks).push_back(std::move(support));
    }
  }
  return css_from_checks(BinaryMatrix::from_rows(L * L, x_checks), BinaryMatrix::from_rows(L * L, z_checks));
}

// Tillich-Zemor product of h1 (m1 x n1) and h2 (m2 x n2):
//   hx = [h1 (x) I_n2 | I_m1 (x) h2^T],  hz = [I_n1 (x) h2 | h1^T (x) I_m2].
// Qubit (a, b) in n1 x n2 sits at a*n2 + b; qubit (c, e) in m1 x m2 at
// n1*n2 + c*m2 + e.
inline StabilizerCode hypergraph_product(const BinaryMatrix& h1, const BinaryMatrix& h2) {
  const std::size_t m1 = h1.rows(), n1 = h1.cols(), m2 = h2.rows(), n2 = h2.cols();
  const std::size_t n = n1 * n2 + m1 * m2;
  const auto h1_cols = h1.column_supports();
  const auto h2_cols = h2.column_supports();
  auto left = [n2](std::size_t a, std::size_t b) { return a * n2 + b; };
  auto right = [n1, n2, m2](std::size_t c, std::size_t e) { return n1 * n2 + c * m2 + e; };

  std::vector<std::vector<std::size_t>> x_checks, z_checks;
  for (std::size_t c = 0; c < m1; ++c) {
    for (std::size_t b = 0; b < n2; ++b) {
      std::vector<std::size_t> s;
      for (auto a : h1.row(c)) s.push_back(left(a, b));
      for (auto e : h2_cols[b]) s.push_back(right(c, e));
      std::sort(s.begin(), s.end());
      x_checks.push_back(std::move(s));
    }
  }
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t e = 0; e < m2; ++e) {
      std::vector<std::size_t> s;
      for (auto b : h2.row(e)) s.push_back(left(a, b));
      for (auto c : h1_cols[a]) s.push_back(right(c, e));
      std::sort(s.begin(), s.end());
      z_checks.push_back(std::move(s));
    }
  }
  return css_from_checks(BinaryMatrix::from_rows(n, x_checks), BinaryMatrix::from_rows(n, z_checks));
}

// (n*dv/dc) x n matrix with every column of weight dv and row of weight dc,
// drawn by configuration-model pairing. A draw that places a column twice in
// one row is discarded and redrawn.
inline BinaryMatrix random_regular_ldpc(std::size_t n, std::size_t dv, std::size_t dc, std::uint64_t seed,
                                        std::size_t max_retries = 1000) {
  if (dc == 0 || (n * dv) % dc != 0) {
    throw Error("n * dv = " + std::to_string(n * dv) + " is not divisible by dc = " + std::to_string(dc));
  }
  const std::size_t m = n * dv / dc;
  Rng rng(seed);
  std::vector<std::size_t> sockets;
  for (std::size_t c = 0; c < n; ++c) sockets.insert(sockets.end(), dv, c);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    rng.shuffle(std::span<std::size_t>(sockets));
    std::vector<std::vector<std::size_t>> rows(m);
    bool ok = true;
    for (std::size_t r = 0; r < m && ok; ++r) {
      rows[r].assign(sockets.begin() + static_cast<std::ptrdiff_t>(r * dc),
                     sockets.begin() + static_cast<std::ptrdiff_t>((r + 1) * dc));
      std::sort(rows[r].begin(), rows[r].end());
      ok = std::adjacent_find(rows[r].begin(), rows[r].end()) == rows[r].end();
    }
    if (ok) return BinaryMatrix::from_rows(n, rows);
  }
  throw Error("random_regular_ldpc: repeated entries after " + std::to_string(max_retries) + " draws");
}

enum class Certainty { exact, lower_bound, upper_bound };

inline const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::exact: return "exact";
    case Certainty::lower_bound: return "lower-bound";
    case Certainty::upper_bound: return "upper-bound";
  }
  return "?";
}

struct Distance {
  std::size_t value = 0;
  Certainty certainty = Certainty::exact;
};

struct CodeParams {
  std::size_t n = 0;
  std::size_t k = 0;
  Distance d;
};

namespace detail {

// Smallest w <= budget such that some weight-w vector e has detect * e = 0 and
// lies outside the stabilizer row space. Enumerates supports by weight with
// syndromes accumulated column by column.
class LogicalSearch {
 public:
  LogicalSearch(const BinaryMatrix& detect, const BinaryMatrix& stabilizers)
      : n_(detect.cols()), stabilizers_(stabilizers) {
    const auto columns = detect.column_supports();
    for (const auto& col : columns) syndromes_.push_back(BitVector::from_support(detect.rows(), col));
    empty_ = BitVector(detect.rows());
  }

  bool has_logical_of_weight(std::size_t w) const {
    if (w == 0 || w > n_) return false;
    std::vector<std::size_t> pick(w);
    std::vector<BitVector> partial(w + 1, empty_);
    return descend(pick, partial, 0, 0);
  }

 private:
  bool descend(std::vector<std::size_t>& pick, std::vector<BitVector>& partial, std::size_t depth,
               std::size_t start) const {
    const std::size_t w = pick.size();
    for (std::size_t q = start; q + (w - depth) <= n_; ++q) {
      pick[depth] = q;
      partial[depth + 1] = partial[depth];
      partial[depth + 1] ^= syndromes_[q];
      if (depth + 1 == w) {
        if (partial[w].none() && !stabilizers_.contains(BitVector::from_support(n_, pick))) return true;
      } else if (descend(pick, partial, depth + 1, q + 1)) {
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  RowSpace stabilizers_;
  std::vector<BitVector> syndromes_;
  BitVector empty_;
};

}  // namespace detail

// n, k = n - rank(hx) - rank(hz), and the minimum logical weight over both
// X and Z sides when it is at most `distance_budget`. Otherwise d is reported
// as a lower bound of budget + 1 (or n + 1 when the search was exhaustive and
// found no logical at all, which happens only for k = 0).
inline CodeParams code_params(const StabilizerCode& code, std::size_t distance_budget = 6) {
  if (distance_budget < 1) throw Error("distance budget must be at least 1");
  CodeParams params;
  params.n = code.n();
  params.k = code.n() - gf2_rank(code.hx()) - gf2_rank(code.hz());
  const std::size_t cap = std::min(distance_budget, code.n());
  if (params.k > 0) {
    const detail::LogicalSearch z_side(code.hx(), code.hz());
    const detail::LogicalSearch x_side(code.hz(), code.hx());
    for (std::size_t w = 1; w <= cap; ++w) {
      if (z_side.has_logical_of_weight(w) || x_side.has_logical_of_weight(w)) {
        params.d = {w, Certainty::exact};
        return params;
      }
    }
  }
  params.d = {cap + 1, Certainty::lower_bound};
  return params;
}

// One vertex per qubit; u ~ v whenever some check contains both.
inline Graph connectivity_graph(const StabilizerCode& code) {
  std::vector<Edge> edges;
  for (const auto& support : code.check_supports()) {
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = i + 1; j < support.size(); ++j) edges.emplace_back(support[i], support[j]);
    }
  }
  return Graph(code.n(), edges);
}

}  // namespace nonlocality
