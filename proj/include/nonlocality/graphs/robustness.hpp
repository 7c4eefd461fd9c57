#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nonlocality/embeddings/embedding.hpp"
#include "nonlocality/error.hpp"
#include "nonlocality/graphs/density.hpp"
#include "nonlocality/graphs/graph.hpp"

namespace nonlocality {

struct EdgeRemovalReport {
  std::size_t removed_count = 0;
  std::vector<Edge> removed;  // longest first
  Graph pruned;
  std::size_t target_t = 0;
  ExtractionResult survivor;
  double survivor_expansion = 0;  // exact when <= 20 vertices, else sqrt(2 lambda2)
  bool found = false;             // survivor has >= n/2 vertices and expansion >= eps/18
};

// Delete the ceil(n eps / 24) longest edges under `emb`, then look for an
// expander of size >= n/2 in what is left (separator target ceil(n eps / 12)).
inline EdgeRemovalReport remove_longest_edges_experiment(const Graph& g, const Embedding& emb, double eps,
                                                         std::uint64_t seed = 0) {
  if (!(eps > 0)) throw Error("edge removal experiment needs eps > 0");
  const std::size_t n = g.vertex_count();
  const auto profile = edge_length_profile(g, emb);
  const double nn = static_cast<double>(n);
  EdgeRemovalReport out;
  out.removed_count = std::min(profile.edges.size(), static_cast<std::size_t>(std::ceil(nn * eps / 24.0 - 1e-12)));
  out.removed.assign(profile.edges.begin(), profile.edges.begin() + static_cast<std::ptrdiff_t>(out.removed_count));
  out.pruned = remove_edges(g, out.removed);
  out.target_t = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(nn * eps / 12.0 - 1e-12)));
  out.survivor = extract_expander_subgraph(out.pruned, out.target_t, seed);
  if (out.survivor.found && out.survivor.expansion) {
    out.survivor_expansion = out.survivor.expansion->estimate();
    out.found = 2 * out.survivor.vertices.size() >= n && out.survivor_expansion >= eps / 18.0;
  }
  return out;
}

}  // namespace nonlocality
