#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "nonlocality/error.hpp"
#include "nonlocality/graphs/expansion.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/graphs/spectral.hpp"
#include "nonlocality/rng.hpp"

namespace nonlocality {

// V = A + S + B with no A-B edge and |A|, |B| <= 2n/3. All sets sorted.
struct SeparatorResult {
  std::vector<Vertex> separator;
  std::vector<Vertex> part_a;
  std::vector<Vertex> part_b;
  bool certified_optimal = false;

  std::size_t size() const { return separator.size(); }
};

inline bool balanced_part(std::size_t part, std::size_t n) { return 3 * part <= 2 * n; }

inline bool is_valid_separator(const Graph& g, const SeparatorResult& r) {
  const std::size_t n = g.vertex_count();
  std::vector<int> side(n, -1);
  auto mark = [&](const std::vector<Vertex>& set, int label) {
    for (auto v : set) {
      if (v >= n || side[v] != -1) return false;
      side[v] = label;
    }
    return true;
  };
  if (!mark(r.part_a, 0) || !mark(r.separator, 1) || !mark(r.part_b, 2)) return false;
  if (std::count(side.begin(), side.end(), -1) != 0) return false;
  if (!balanced_part(r.part_a.size(), n) || !balanced_part(r.part_b.size(), n)) return false;
  for (const auto& [u, v] : g.edges()) {
    if (side[u] != 1 && side[v] != 1 && side[u] != side[v]) return false;
  }
  return true;
}

// Given S, split the components of G - S into two balanced groups if any
// grouping works. Among feasible groupings the most even one is chosen.
inline std::optional<SeparatorResult> complete_partition(const Graph& g, std::span<const Vertex> separator) {
  const std::size_t n = g.vertex_count();
  std::vector<char> removed(n, 0);
  for (auto v : separator) removed[v] = 1;
  std::vector<std::size_t> label(n, kUnreachable);
  std::vector<std::vector<Vertex>> parts;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (removed[s] || label[s] != kUnreachable) continue;
    parts.emplace_back();
    label[s] = parts.size() - 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      parts.back().push_back(v);
      for (auto w : g.neighbors(v)) {
        if (!removed[w] && label[w] == kUnreachable) {
          label[w] = parts.size() - 1;
          stack.push_back(w);
        }
      }
    }
  }
  const std::size_t rest = n - separator.size();
  // reach[i][a]: some subset of the first i parts has total size a.
  std::vector<std::vector<char>> reach(parts.size() + 1, std::vector<char>(rest + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::size_t w = parts[i].size();
    for (std::size_t a = 0; a <= rest; ++a) {
      if (!reach[i][a]) continue;
      reach[i + 1][a] = 1;
      if (a + w <= rest) reach[i + 1][a + w] = 1;
    }
  }
  std::optional<std::size_t> best;
  for (std::size_t a = 0; a <= rest; ++a) {
    if (!reach[parts.size()][a] || !balanced_part(a, n) || !balanced_part(rest - a, n)) continue;
    const auto gap = [&](std::size_t x) { return x > rest - x ? 2 * x - rest : rest - 2 * x; };
    if (!best || gap(a) < gap(*best)) best = a;
  }
  if (!best) return std::nullopt;
  SeparatorResult out;
  out.separator.assign(separator.begin(), separator.end());
  std::sort(out.separator.begin(), out.separator.end());
  std::size_t a = *best;
  for (std::size_t i = parts.size(); i-- > 0;) {
    const std::size_t w = parts[i].size();
    auto& dest = (a >= w && reach[i][a - w]) ? out.part_a : out.part_b;
    if (&dest == &out.part_a) a -= w;
    dest.insert(dest.end(), parts[i].begin(), parts[i].end());
  }
  std::sort(out.part_a.begin(), out.part_a.end());
  std::sort(out.part_b.begin(), out.part_b.end());
  // Canonical order: A is the smaller part, or holds the lowest id on a tie.
  const bool tie_swap = out.part_a.size() == out.part_b.size() && !out.part_b.empty() &&
                        out.part_b.front() < out.part_a.front();
  if (out.part_a.size() > out.part_b.size() || tie_swap) std::swap(out.part_a, out.part_b);
  return out;
}

namespace detail {

inline std::size_t imbalance(const SeparatorResult& r) {
  const auto a = r.part_a.size(), b = r.part_b.size();
  return a > b ? a - b : b - a;
}

// Bitmask components of G - S for graphs with at most 20 vertices.
inline std::vector<std::uint32_t> mask_components(const std::vector<std::uint32_t>& adj, std::uint32_t alive) {
  std::vector<std::uint32_t> out;
  while (alive) {
    std::uint32_t comp = alive & (~alive + 1);
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    alive &= ~comp;
  }
  return out;
}

inline bool masks_can_balance(const std::vector<std::uint32_t>& comps, std::size_t n, std::size_t rest) {
  std::vector<char> reach(rest + 1, 0);
  reach[0] = 1;
  for (auto c : comps) {
    const auto w = static_cast<std::size_t>(std::popcount(c));
    for (std::size_t a = rest + 1; a-- > w;) reach[a] = reach[a] || reach[a - w];
  }
  for (std::size_t a = 0; a <= rest; ++a) {
    if (reach[a] && balanced_part(a, n) && balanced_part(rest - a, n)) return true;
  }
  return false;
}

}  // namespace detail

// Minimum-cardinality balanced separator by trying every S in order of size.
// Among the minimum ones the most even split wins, then the lexicographically
// first S.
inline SeparatorResult separator_exact(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kExactSearchLimit) throw Error("graph too large for exact separator search (max 20 vertices)");
  std::vector<std::uint32_t> adj(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (auto w : g.neighbors(v)) adj[v] |= std::uint32_t{1} << w;
  }
  const std::uint32_t all = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  for (std::size_t s = 0; s <= n; ++s) {
    std::optional<SeparatorResult> best;
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), 1);
    do {
      std::uint32_t chosen = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) chosen |= std::uint32_t{1} << i;
      }
      const auto comps = detail::mask_components(adj, all & ~chosen);
      if (!detail::masks_can_balance(comps, n, n - s)) continue;
      std::vector<Vertex> sep;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) sep.push_back(i);
      }
      auto candidate = complete_partition(g, sep);
      if (!best || detail::imbalance(*candidate) < detail::imbalance(*best)) best = std::move(candidate);
      if (detail::imbalance(*best) <= 1) break;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (best) {
      best->certified_optimal = true;
      return *best;
    }
  }
  throw Error("no balanced separator found");  // unreachable: |S| = n always works
}

namespace detail {

// Minimum vertex cover of the bipartite graph formed by `edges` (left, right)
// via augmenting paths and Konig's construction.
inline std::vector<Vertex> bipartite_vertex_cover(const std::vector<Edge>& edges) {
  std::vector<Vertex> left, right;
  for (const auto& [u, v] : edges) {
    left.push_back(u);
    right.push_back(v);
  }
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  std::sort(right.begin(), right.end());
  right.erase(std::unique(right.begin(), right.end()), right.end());
  const auto index = [](const std::vector<Vertex>& set, Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(set.begin(), set.end(), v) - set.begin());
  };
  std::vector<std::vector<std::size_t>> adj(left.size());
  for (const auto& [u, v] : edges) adj[index(left, u)].push_back(index(right, v));

  std::vector<std::size_t> match_left(left.size(), kUnreachable), match_right(right.size(), kUnreachable);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (auto v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] == kUnreachable || self(self, match_right[v])) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < left.size(); ++u) {
    seen.assign(right.size(), 0);
    augment(augment, u);
  }
  // Alternating reachability from unmatched left vertices.
  std::vector<char> left_z(left.size(), 0), right_z(right.size(), 0);
  std::vector<std::size_t> queue;
  for (std::size_t u = 0; u < left.size(); ++u) {
    if (match_left[u] == kUnreachable) {
      left_z[u] = 1;
      queue.push_back(u);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto v : adj[queue[head]]) {
      if (right_z[v]) continue;
      right_z[v] = 1;
      const auto u = match_right[v];
      if (u != kUnreachable && !left_z[u]) {
        left_z[u] = 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<Vertex> cover;
  for (std::size_t u = 0; u < left.size(); ++u) {
    if (!left_z[u]) cover.push_back(left[u]);
  }
  for (std::size_t v = 0; v < right.size(); ++v) {
    if (right_z[v]) cover.push_back(right[v]);
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

inline bool better_separator(const SeparatorResult& a, const std::optional<SeparatorResult>& b) {
  if (!b) return true;
  if (a.size() != b->size()) return a.size() < b->size();
  return imbalance(a) < imbalance(*b);
}

}  // namespace detail

// Balanced separator upper bound. Sweeps the low Laplacian modes of the
// largest component, turns each prefix cut into a vertex separator through a
// minimum cover of the cut edges, then greedily drops separator vertices
// while the remaining set still balances.
inline SeparatorResult separator_heuristic(const Graph& g, std::uint64_t seed = 0) {
  const std::size_t n = g.vertex_count();
  if (auto direct = complete_partition(g, {})) return *direct;

  std::optional<SeparatorResult> best;
  auto consider = [&](std::span<const Vertex> sep) {
    auto candidate = complete_partition(g, sep);
    if (candidate && detail::better_separator(*candidate, best)) best = std::move(candidate);
  };

  const auto components = connected_components(g);
  const auto& largest = *std::max_element(components.begin(), components.end(),
                                          [](const auto& a, const auto& b) { return a.size() < b.size(); });
  const auto sub = induced_subgraph(g, largest);
  const auto modes = laplacian_low_modes(sub.graph, 2, derive_seed(seed, 0));
  for (const auto& f : modes.vectors) {
    std::vector<Vertex> order(f.size());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
    std::vector<char> in_prefix(order.size(), 0);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      in_prefix[order[i]] = 1;
      std::vector<Edge> cut;
      for (std::size_t j = 0; j <= i; ++j) {
        const Vertex u = order[j];
        for (auto w : sub.graph.neighbors(u)) {
          if (!in_prefix[w]) cut.emplace_back(sub.parent[u], sub.parent[w]);
        }
      }
      consider(detail::bipartite_vertex_cover(cut));
    }
  }

  // Always-feasible fallback: leaving at most 2n/3 vertices outside S.
  std::vector<Vertex> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), Vertex{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  by_degree.resize(n - (2 * n) / 3);
  consider(by_degree);

  // Greedy refinement in a seeded order.
  Rng rng(derive_seed(seed, 1));
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<Vertex> order = best->separator;
    rng.shuffle(std::span<Vertex>(order));
    for (auto v : order) {
      std::vector<Vertex> trial;
      for (auto s : best->separator) {
        if (s != v) trial.push_back(s);
      }
      if (auto candidate = complete_partition(g, trial)) {
        best = std::move(candidate);
        improved = true;
        break;
      }
    }
  }
  best->certified_optimal = false;
  return *best;
}

enum class BoundSource { exact_search, expansion, connectivity, none };

inline const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::exact_search: return "exact";
    case BoundSource::expansion: return "expansion";
    case BoundSource::connectivity: return "connectivity";
    case BoundSource::none: return "none";
  }
  return "none";
}

struct SeparatorLowerBound {
  std::size_t value = 0;
  BoundSource source = BoundSource::none;
};

// Certified lower bound on |sep(h)|. Up to 20 vertices the exact minimum is
// computed. Larger graphs use |sep| >= min(n, n eps)/6 with the spectral
// lower bound on eps. A connected graph never has an empty separator.
inline SeparatorLowerBound separator_lower_bound(const Graph& h, std::uint64_t seed = 0) {
  const std::size_t n = h.vertex_count();
  if (n == 0) return {};
  if (n <= kExactSearchLimit) return {separator_exact(h).size(), BoundSource::exact_search};
  SeparatorLowerBound out;
  const bool connected = is_connected(h);
  if (connected) out = {1, BoundSource::connectivity};
  const auto report = vertex_expansion(h, seed);
  if (!report.disconnected && report.spectral_converged) {
    const double nn = static_cast<double>(n);
    const double bound = std::min(nn, nn * report.eps_lower) / 6.0;
    const auto value = static_cast<std::size_t>(std::ceil(bound - 1e-9));
    if (value > out.value) out = {value, BoundSource::expansion};
  }
  return out;
}

}  // namespace nonlocality
