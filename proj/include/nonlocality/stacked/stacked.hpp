#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "nonlocality/codes/stabilizer_code.hpp"
#include "nonlocality/embeddings/embedding.hpp"
#include "nonlocality/error.hpp"

namespace nonlocality {

struct StackLayer {
  std::size_t l = 0;
  double radius = 0;          // 2^l / sqrt 2
  std::uint64_t capacity = 0;  // 4^{l_m - l} generators
};

struct StackedLayout {
  std::size_t l_m = 0;
  std::size_t delta_g = 0;
  std::uint64_t delta0 = 0;  // C(delta_g, 2): edges one generator can induce
  std::uint64_t grid_side = 1;
  std::vector<StackLayer> layers;

  std::uint64_t total_capacity() const {
    std::uint64_t total = 0;
    for (const auto& layer : layers) total += layer.capacity;
    return total;
  }
};

inline StackedLayout build_stacked_layout(std::size_t l_m, std::size_t delta_g) {
  if (l_m > 25) throw Error("l_m too large (max 25)");
  StackedLayout out;
  out.l_m = l_m;
  out.delta_g = delta_g;
  out.delta0 = delta_g < 2 ? 0 : static_cast<std::uint64_t>(delta_g) * (delta_g - 1) / 2;
  out.grid_side = std::uint64_t{1} << l_m;
  for (std::size_t l = 0; l <= l_m; ++l) {
    out.layers.push_back({l, std::ldexp(1.0, static_cast<int>(l)) / std::sqrt(2.0), std::uint64_t{1} << (2 * (l_m - l))});
  }
  return out;
}

struct StackAssignment {
  std::vector<std::optional<std::size_t>> layer;  // per stabilizer; empty if no layer is wide enough
  std::vector<double> circumradius;
  std::vector<std::uint64_t> usage;
  std::vector<std::size_t> overflow_layers;
  std::optional<std::size_t> too_wide;  // first stabilizer wider than the top layer
  bool feasible = true;
};

// Half the largest distance between two points of the support.
inline double support_circumradius(const Embedding& emb, std::span<const std::size_t> support) {
  double widest = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) widest = std::max(widest, emb.distance(support[i], support[j]));
  }
  return widest / 2;
}

// Each support goes to the lowest layer whose radius covers it. Capacity is
// only checked afterwards; overflow is reported, not rebalanced.
inline StackAssignment assign_supports(const std::vector<std::vector<std::size_t>>& supports, const Embedding& emb,
                                       const StackedLayout& layout) {
  if (emb.dimension() != 2) throw Error("stacked layouts need a 2-dimensional embedding");
  if (layout.grid_side * layout.grid_side < emb.vertex_count()) {
    throw Error("stacked grid has fewer sites than qubits");
  }
  StackAssignment out;
  out.usage.assign(layout.layers.size(), 0);
  for (std::size_t i = 0; i < supports.size(); ++i) {
    const double r = support_circumradius(emb, supports[i]);
    out.circumradius.push_back(r);
    std::optional<std::size_t> chosen;
    for (const auto& layer : layout.layers) {
      if (r <= layer.radius * (1 + 1e-12)) {
        chosen = layer.l;
        break;
      }
    }
    out.layer.push_back(chosen);
    if (chosen) {
      ++out.usage[*chosen];
    } else if (!out.too_wide) {
      out.too_wide = i;
    }
  }
  for (const auto& layer : layout.layers) {
    if (out.usage[layer.l] > layer.capacity) out.overflow_layers.push_back(layer.l);
  }
  out.feasible = !out.too_wide && out.overflow_layers.empty();
  return out;
}

inline StackAssignment assign_to_stack(const StabilizerCode& code, const Embedding& emb, const StackedLayout& layout) {
  if (emb.vertex_count() < code.n()) throw Error("embedding does not cover every qubit");
  return assign_supports(code.check_supports(), emb, layout);
}

// sum_l delta0 4^{l_m-l} (2 r_l)^p = 2^{p/2} delta0 4^{l_m} sum_l 2^{(p-2) l}.
inline double stacked_delta_p(const StackedLayout& layout, double p) {
  if (p < 0) throw Error("moment order must be non-negative");
  const double top = std::ldexp(static_cast<double>(layout.delta0), static_cast<int>(2 * layout.l_m));
  const double levels = static_cast<double>(layout.l_m + 1);
  if (p == 2) return 2.0 * top * levels;
  const double q = std::pow(2.0, p - 2);
  const double series = (std::pow(q, levels) - 1) / (q - 1);
  return std::pow(2.0, p / 2) * top * series;
}

// Highest layer that can hold the shortest edge of any set of `edges` edges
// drawn from a capacity-respecting assignment: l_m - floor(log4(edges/delta0)).
inline long lowest_layer_bound(const StackedLayout& layout, std::uint64_t edges) {
  if (layout.delta0 == 0 || edges == 0) return static_cast<long>(layout.l_m);
  // shift = floor(log4(edges / delta0)), by integer comparison.
  long shift = 0;
  if (edges >= layout.delta0) {
    for (std::uint64_t scaled = layout.delta0 * 4; scaled <= edges; scaled *= 4) ++shift;
  } else {
    shift = -1;
    for (std::uint64_t scaled = edges * 4; scaled < layout.delta0; scaled *= 4) --shift;
  }
  return static_cast<long>(layout.l_m) - shift;
}

struct StackCheck {
  double direct_distance = 0;  // d / (n^{2/3} ln^{2/3} n)
  double direct_tradeoff = 0;  // k^3 d^4 / (n^5 ln^4 n)
  double moment_distance = 0;  // d / (n^{2/3} ln n)
  double moment_tradeoff = 0;  // k^3 d^4 / (n^5 ln^6 n)
  double threshold = 1;
  bool flagged = false;  // "not stackable at constant 1"
};

inline StackCheck stacked_bound_check(const CodeParams& params, double threshold = 1.0) {
  if (params.n < 2) throw Error("stack check needs n >= 2");
  const double n = static_cast<double>(params.n);
  const double k = static_cast<double>(params.k);
  const double d = static_cast<double>(params.d.value);
  const double ln = std::log(n);
  const double n23 = std::cbrt(n * n);
  StackCheck out;
  out.threshold = threshold;
  out.direct_distance = d / (n23 * std::pow(ln, 2.0 / 3.0));
  const double kd = k * k * k * d * d * d * d;
  const double n5 = std::pow(n, 5);
  out.direct_tradeoff = kd / (n5 * std::pow(ln, 4));
  out.moment_distance = d / (n23 * ln);
  out.moment_tradeoff = kd / (n5 * std::pow(ln, 6));
  out.flagged = out.direct_distance > threshold || out.direct_tradeoff > threshold ||
                out.moment_distance > threshold || out.moment_tradeoff > threshold;
  return out;
}

}  // namespace nonlocality
