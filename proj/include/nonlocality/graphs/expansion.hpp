#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "nonlocality/error.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/graphs/spectral.hpp"

namespace nonlocality {

inline constexpr std::size_t kExactSearchLimit = 20;

struct ExpansionReport {
  std::optional<double> eps_exact;
  double lambda2 = 0;
  double eps_upper = 0;  // sqrt(2 lambda2)
  double eps_lower = 0;  // lambda2 / (2 max_degree), from the edge-cut bound
  std::size_t delta_max = 0;
  bool disconnected = false;
  bool spectral_converged = true;

  // Best available point value: exact if computed, else the spectral upper bound.
  double estimate() const { return eps_exact ? *eps_exact : eps_upper; }
};

// min over nonempty A, |A| <= n/2, of |N(A) \ A| / |A|, by enumerating every
// subset. Neighbourhood masks are built incrementally from the lowest bit.
inline double exact_vertex_expansion(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kExactSearchLimit) throw Error("exact expansion limited to 20 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (auto w : g.neighbors(v)) adj[v] |= std::uint32_t{1} << w;
  }
  const std::uint32_t full = 1u << n;
  std::vector<std::uint32_t> reach(full, 0);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    reach[mask] = reach[mask & (mask - 1)] | adj[low];
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (2 * size > n) continue;
    const auto boundary = static_cast<double>(std::popcount(reach[mask] & ~mask));
    best = std::min(best, boundary / static_cast<double>(size));
  }
  return best;
}

inline ExpansionReport vertex_expansion(const Graph& g, std::uint64_t seed = 0) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error("vertex expansion needs at least 2 vertices");
  ExpansionReport report;
  report.delta_max = g.max_degree();
  report.disconnected = !is_connected(g);
  if (report.disconnected) {
    // A smallest component has at most n/2 vertices and an empty boundary.
    report.eps_exact = 0.0;
    report.lambda2 = 0.0;
    return report;
  }
  const auto modes = laplacian_low_modes(g, 1, seed);
  report.lambda2 = modes.values.front();
  report.spectral_converged = modes.converged;
  report.eps_upper = std::sqrt(2.0 * report.lambda2);
  report.eps_lower = report.lambda2 / (2.0 * static_cast<double>(report.delta_max));
  if (n <= kExactSearchLimit) report.eps_exact = exact_vertex_expansion(g);
  return report;
}

}  // namespace nonlocality
