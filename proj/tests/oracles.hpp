#pragma once

// Brute-force reference computations used only by the tests. Each one follows
// a different route from the library code it checks.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <vector>

#include "nonlocality/codes/stabilizer_code.hpp"
#include "nonlocality/graphs/graph.hpp"

namespace oracle {

using Dense = std::vector<std::vector<int>>;

inline Dense to_dense(const nonlocality::BinaryMatrix& m) {
  Dense d(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (auto c : m.row(r)) d[r][c] = 1;
  }
  return d;
}

// Textbook Gauss-Jordan over GF(2) on an int matrix.
inline std::size_t rank(Dense a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r != rank && a[r][c]) {
        for (std::size_t j = 0; j < cols; ++j) a[r][j] ^= a[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

inline bool in_row_space(const Dense& generators, const std::vector<int>& v) {
  Dense stacked = generators;
  const std::size_t before = rank(stacked);
  stacked.push_back(v);
  return rank(stacked) == before;
}

inline Dense product_transpose(const Dense& a, const Dense& b) {
  Dense out(a.size(), std::vector<int>(b.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      int s = 0;
      for (std::size_t c = 0; c < a[i].size(); ++c) s ^= a[i][c] & b[j][c];
      out[i][j] = s;
    }
  }
  return out;
}

// Minimum weight non-stabilizer Pauli commuting with every check, searched
// over all 4^n Paulis (x, z) with the symplectic product. Only for small n.
inline std::size_t distance_all_paulis(const nonlocality::StabilizerCode& code) {
  const std::size_t n = code.n();
  const Dense hx = to_dense(code.hx()), hz = to_dense(code.hz());
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t xs = 0; xs < (std::size_t{1} << n); ++xs) {
    std::vector<int> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (xs >> i) & 1;
    bool x_commutes = true;  // X part vs Z checks
    for (const auto& row : hz) {
      int s = 0;
      for (std::size_t i = 0; i < n; ++i) s ^= row[i] & x[i];
      if (s) x_commutes = false;
    }
    if (!x_commutes) continue;
    const bool x_stab = in_row_space(hx, x);
    for (std::size_t zs = 0; zs < (std::size_t{1} << n); ++zs) {
      if (xs == 0 && zs == 0) continue;
      const auto weight = static_cast<std::size_t>(__builtin_popcountll(xs | zs));
      if (weight >= best) continue;
      std::vector<int> z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = (zs >> i) & 1;
      bool z_commutes = true;
      for (const auto& row : hx) {
        int s = 0;
        for (std::size_t i = 0; i < n; ++i) s ^= row[i] & z[i];
        if (s) z_commutes = false;
      }
      if (!z_commutes) continue;
      if (x_stab && in_row_space(hz, z)) continue;
      best = weight;
    }
  }
  return best;
}

// Minimum weight vector e with detect * e = 0 outside rowspace(stabilizers),
// by plain enumeration of all supports of size <= cap in lexicographic order.
inline std::size_t css_side_distance(const Dense& detect, const Dense& stabilizers, std::size_t n,
                                     std::size_t cap) {
  std::vector<std::size_t> pick;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t w = 1; w <= cap && best == std::numeric_limits<std::size_t>::max(); ++w) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(w), true);
    do {
      std::vector<int> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = mask[i] ? 1 : 0;
      bool kernel = true;
      for (const auto& row : detect) {
        int s = 0;
        for (std::size_t i = 0; i < n; ++i) s ^= row[i] & e[i];
        if (s) {
          kernel = false;
          break;
        }
      }
      if (kernel && !in_row_space(stabilizers, e)) {
        best = w;
        break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return best;
}

// Minimum separator size under the 2n/3 balance rule by trying every
// assignment of every vertex to A, S or B. Only for n <= 10.
inline std::size_t separator_by_labelling(const nonlocality::Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::size_t best = n;
  const auto edges = g.edges();
  std::vector<int> label(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code, a = 0, b = 0, s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      label[i] = static_cast<int>(c % 3);
      c /= 3;
      a += label[i] == 0;
      s += label[i] == 1;
      b += label[i] == 2;
    }
    if (s >= best || 3 * a > 2 * n || 3 * b > 2 * n) continue;
    bool ok = true;
    for (const auto& [u, v] : edges) {
      if (label[u] + label[v] == 2 && label[u] != 1) {
        ok = false;
        break;
      }
    }
    if (ok) best = s;
  }
  return best;
}

// Minimum separator size by trying every subset S and splitting the
// components of G - S with a subset-sum over all 2^c groupings.
inline std::size_t separator_by_subsets(const nonlocality::Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const auto s = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (s >= best) continue;
    std::vector<nonlocality::Vertex> rest;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((mask >> v) & 1)) rest.push_back(v);
    }
    const auto sub = nonlocality::induced_subgraph(g, rest);
    const auto parts = nonlocality::connected_components(sub.graph);
    if (parts.size() > 20) continue;
    bool ok = false;
    for (std::size_t group = 0; group < (std::size_t{1} << parts.size()) && !ok; ++group) {
      std::size_t a = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if ((group >> i) & 1) a += parts[i].size();
      }
      const std::size_t b = rest.size() - a;
      ok = 3 * a <= 2 * n && 3 * b <= 2 * n;
    }
    if (ok) best = s;
  }
  return best;
}

// min over nonempty A with |A| <= n/2 of |boundary(A)| / |A|.
inline double vertex_expansion(const nonlocality::Graph& g) {
  const std::size_t n = g.vertex_count();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (2 * size > n) continue;
    std::set<std::size_t> boundary;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((mask >> v) & 1)) continue;
      for (auto w : g.neighbors(v)) {
        if (!((mask >> w) & 1)) boundary.insert(w);
      }
    }
    best = std::min(best, static_cast<double>(boundary.size()) / static_cast<double>(size));
  }
  return best;
}

// Dense Laplacian spectrum, ascending.
inline Eigen::VectorXd laplacian_spectrum(const nonlocality::Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    const auto a = static_cast<Eigen::Index>(u), b = static_cast<Eigen::Index>(v);
    lap(a, a) += 1;
    lap(b, b) += 1;
    lap(a, b) -= 1;
    lap(b, a) -= 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline std::size_t diameter_by_floyd(const nonlocality::Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t inf = n + 1;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  std::size_t best = 0;
  for (const auto& row : d) best = std::max(best, *std::max_element(row.begin(), row.end()));
  return best;
}

}  // namespace oracle
