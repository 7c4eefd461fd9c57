#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonlocality/codes/alist.hpp"
#include "nonlocality/error.hpp"

namespace nonlocality {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Simple undirected graph with sorted adjacency lists. Immutable once built.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

  // Duplicate edges are merged. Self-loops and out-of-range endpoints throw.
  Graph(std::size_t vertex_count, std::span<const Edge> edges) : adjacency_(vertex_count) {
    for (const auto& [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) {
        throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
      }
      if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      max_degree_ = std::max(max_degree_, list.size());
      edge_count_ += list.size();
    }
    edge_count_ /= 2;
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (auto v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t max_degree_ = 0;
  std::size_t edge_count_ = 0;
};

// Subgraph induced by a vertex subset, with the map back to parent ids.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> parent;  // parent[local] = vertex id in the source graph
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.vertex_count(), kUnreachable);
  std::vector<Vertex> parent(vertices.begin(), vertices.end());
  std::sort(parent.begin(), parent.end());
  parent.erase(std::unique(parent.begin(), parent.end()), parent.end());
  for (std::size_t i = 0; i < parent.size(); ++i) local.at(parent[i]) = i;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    for (auto w : g.neighbors(parent[i])) {
      if (local[w] != kUnreachable && i < local[w]) edges.emplace_back(i, local[w]);
    }
  }
  return {Graph(parent.size(), edges), std::move(parent)};
}

inline Graph remove_edges(const Graph& g, std::span<const Edge> removed) {
  std::vector<Edge> drop(removed.begin(), removed.end());
  for (auto& [u, v] : drop) {
    if (u > v) std::swap(u, v);
  }
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    if (!std::binary_search(drop.begin(), drop.end(), e)) kept.push_back(e);
  }
  return Graph(g.vertex_count(), kept);
}

inline Graph disjoint_union(std::span<const Graph> parts) {
  std::size_t offset = 0;
  std::vector<Edge> edges;
  for (const auto& part : parts) {
    for (const auto& [u, v] : part.edges()) edges.emplace_back(u + offset, v + offset);
    offset += part.vertex_count();
  }
  return Graph(offset, edges);
}

inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
  std::deque<Vertex> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (auto w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// At most `limit` vertices in BFS order from `source` (ties by vertex id).
inline std::vector<Vertex> bfs_ball(const Graph& g, Vertex source, std::size_t limit) {
  std::vector<Vertex> order;
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<Vertex> queue{source};
  seen.at(source) = true;
  while (!queue.empty() && order.size() < limit) {
    const Vertex u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (auto w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return order;
}

// Component label per vertex; labels are assigned in order of lowest vertex.
inline std::vector<std::size_t> component_labels(const Graph& g, std::size_t* count = nullptr) {
  std::vector<std::size_t> label(g.vertex_count(), kUnreachable);
  std::size_t next = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnreachable) continue;
    std::deque<Vertex> queue{s};
    label[s] = next;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (auto w : g.neighbors(u)) {
        if (label[w] == kUnreachable) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::size_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<std::vector<Vertex>> parts(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) parts[label[v]].push_back(v);
  return parts;
}

inline bool is_connected(const Graph& g) {
  std::size_t count = 0;
  component_labels(g, &count);
  return count <= 1;
}

// Largest shortest-path distance over all vertex pairs (BFS from each vertex).
inline std::size_t diameter(const Graph& g) {
  if (g.vertex_count() == 0) throw Error("diameter of an empty graph");
  std::size_t best = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    for (auto d : bfs_distances(g, s)) {
      if (d == kUnreachable) throw Error("graph is disconnected: diameter is infinite");
      best = std::max(best, d);
    }
  }
  return best;
}

// Edge-list interchange: "n m" header then m lines "u v", 0-based.
inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline Graph parse_edge_list(std::string_view text) {
  LineCursor in(text);
  const auto header = in.take_numbers("edge-list header");
  if (header.size() != 2) throw ParseError(in.last_line(), "malformed header: expected 'n m'");
  std::vector<Edge> edges;
  edges.reserve(header[1]);
  for (std::size_t i = 0; i < header[1]; ++i) {
    const auto pair = in.take_numbers("edge");
    if (pair.size() != 2) throw ParseError(in.last_line(), "malformed edge: expected 'u v'");
    if (pair[0] >= header[0] || pair[1] >= header[0]) {
      throw ParseError(in.last_line(), "vertex index out of range");
    }
    if (pair[0] == pair[1]) throw ParseError(in.last_line(), "self-loop");
    edges.emplace_back(pair[0], pair[1]);
  }
  if (!in.done()) throw ParseError(in.line_number(), "trailing content after declared edges");
  return Graph(header[0], edges);
}

}  // namespace nonlocality
