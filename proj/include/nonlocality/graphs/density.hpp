#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nonlocality/error.hpp"
#include "nonlocality/graphs/expansion.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/graphs/separators.hpp"
#include "nonlocality/rng.hpp"

namespace nonlocality {

struct ExtractionResult {
  bool found = false;
  std::vector<Vertex> vertices;  // ids in the input graph
  std::optional<ExpansionReport> expansion;
  bool final_cut_certified = false;  // the stopping separator came from exact search
  std::vector<std::size_t> trail;    // sizes of the small separators that were cut away
};

// Repeatedly separate the current piece; while the separator found is
// smaller than t keep the larger side. Success needs 2|H| >= t at the stop.
inline ExtractionResult extract_expander_subgraph(const Graph& g, std::size_t t, std::uint64_t seed = 0) {
  if (t < 1) throw Error("density target t must be at least 1");
  ExtractionResult out;
  std::vector<Vertex> current(g.vertex_count());
  for (Vertex v = 0; v < current.size(); ++v) current[v] = v;
  for (std::uint64_t round = 0;; ++round) {
    if (2 * current.size() < t || current.empty()) return out;
    const auto sub = induced_subgraph(g, current);
    const bool exact = current.size() <= kExactSearchLimit;
    const auto sep = exact ? separator_exact(sub.graph) : separator_heuristic(sub.graph, derive_seed(seed, round));
    if (sep.size() >= t) {
      out.found = true;
      out.final_cut_certified = exact;
      out.vertices = current;
      if (current.size() >= 2) out.expansion = vertex_expansion(sub.graph, derive_seed(seed, round));
      return out;
    }
    out.trail.push_back(sep.size());
    const auto& keep = sep.part_b.size() >= sep.part_a.size() ? sep.part_b : sep.part_a;
    std::vector<Vertex> next;
    next.reserve(keep.size());
    for (auto v : keep) next.push_back(sub.parent[v]);
    current = std::move(next);
  }
}

struct PeelBlock {
  std::vector<Vertex> vertices;  // ids in the input graph
  std::size_t density = 0;       // certified lower bound on the block's separator
  BoundSource source = BoundSource::none;
  std::optional<ExpansionReport> expansion;
};

struct PeelResult {
  std::vector<PeelBlock> blocks;
  std::size_t cumulative_size = 0;
  double alpha_used = 0;
};

namespace detail {

// Candidate vertex sets of size >= min_size in g: BFS balls of the given
// sizes around the highest-degree and some seeded vertices, plus components.
inline std::vector<std::vector<Vertex>> witness_candidates(const Graph& g, const std::vector<std::size_t>& sizes,
                                                           std::size_t min_size, std::uint64_t seed,
                                                           std::size_t seeded_centres = 8) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  if (n == 0) return out;
  std::vector<Vertex> centres(n);
  for (Vertex v = 0; v < n; ++v) centres[v] = v;
  std::stable_sort(centres.begin(), centres.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  centres.resize(std::min<std::size_t>(n, 4));
  Rng rng(seed);
  for (std::size_t i = 0; i < seeded_centres; ++i) centres.push_back(static_cast<Vertex>(rng.below(n)));
  std::sort(centres.begin(), centres.end());
  centres.erase(std::unique(centres.begin(), centres.end()), centres.end());
  for (auto size : sizes) {
    if (size < min_size) continue;
    for (auto c : centres) {
      auto ball = bfs_ball(g, c, size);
      if (ball.size() < min_size) continue;
      std::sort(ball.begin(), ball.end());
      out.push_back(std::move(ball));
    }
  }
  for (auto& comp : connected_components(g)) {
    if (comp.size() >= min_size) {
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// Repeatedly pick the candidate subgraph of size >= d with the largest
// certified separator bound, record it and delete its vertices. A further
// block is only sought while cumulative + d <= alpha k, so the last block
// may overshoot the budget.
inline PeelResult peel_dense_subgraphs(const Graph& g, std::size_t d, std::size_t k, double alpha,
                                       std::uint64_t seed = 0) {
  if (d < 1 || k < 1) throw Error("peeling needs d >= 1 and k >= 1");
  if (!(alpha > 0 && alpha < 1)) throw Error("alpha must lie in (0, 1)");
  PeelResult out;
  out.alpha_used = alpha;
  const double budget = alpha * static_cast<double>(k);
  std::vector<char> alive(g.vertex_count(), 1);
  for (std::uint64_t round = 0; static_cast<double>(out.cumulative_size + d) <= budget; ++round) {
    std::vector<Vertex> remaining;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (alive[v]) remaining.push_back(v);
    }
    if (remaining.size() < d) break;
    const auto rest = induced_subgraph(g, remaining);
    std::vector<std::size_t> sizes{kExactSearchLimit};
    for (std::size_t s = d; s <= remaining.size(); s *= 2) sizes.push_back(s);

    std::optional<PeelBlock> best;
    for (const auto& cand : detail::witness_candidates(rest.graph, sizes, d, derive_seed(seed, 2 * round))) {
      const auto h = induced_subgraph(rest.graph, cand);
      const auto bound = separator_lower_bound(h.graph, derive_seed(seed, 2 * round + 1));
      if (bound.value == 0) continue;
      std::vector<Vertex> ids;
      for (auto v : cand) ids.push_back(rest.parent[v]);
      const bool better = !best || bound.value > best->density ||
                          (bound.value == best->density &&
                           (ids.size() < best->vertices.size() ||
                            (ids.size() == best->vertices.size() && ids.front() < best->vertices.front())));
      if (better) best = PeelBlock{std::move(ids), bound.value, bound.source, std::nullopt};
    }
    if (!best) break;
    if (best->vertices.size() >= 2) {
      best->expansion = vertex_expansion(induced_subgraph(g, best->vertices).graph, derive_seed(seed, round));
    }
    for (auto v : best->vertices) alive[v] = 0;
    out.cumulative_size += best->vertices.size();
    out.blocks.push_back(std::move(*best));
  }
  return out;
}

}  // namespace nonlocality
