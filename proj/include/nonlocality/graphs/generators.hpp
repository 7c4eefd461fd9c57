#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/rng.hpp"

namespace nonlocality {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

// rows x cols grid; vertex (r, c) has id r * cols + c.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, edges);
}

// Uniform-ish random simple regular graph by configuration-model pairing.
// A draw with a self-loop, a repeated edge, or (when `connected`) more than
// one component is discarded and redrawn, up to `max_retries` times.
inline Graph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed,
                                  bool connected = true, std::size_t max_retries = 1000) {
  if ((n * degree) % 2 != 0) throw Error("n * degree must be even");
  if (degree >= n) throw Error("degree must be below n");
  Rng rng(seed);
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), degree, v);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    rng.shuffle(std::span<Vertex>(stubs));
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      Vertex u = stubs[i], v = stubs[i + 1];
      if (u == v) simple = false;
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    Graph g(n, edges);
    if (connected && !is_connected(g)) continue;
    return g;
  }
  throw Error("random_regular_graph: no simple graph after " + std::to_string(max_retries) + " draws");
}

}  // namespace nonlocality
