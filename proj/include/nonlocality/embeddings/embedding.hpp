#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocality/error.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/graphs/spectral.hpp"
#include "nonlocality/rng.hpp"

namespace nonlocality {

namespace detail {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Smallest distance between two of the points (row-major, `dim` per point).
// Exhaustive up to 2000 points; above that a sweep along the first axis,
// which is still exact.
inline double min_pairwise_distance(std::span<const double> coords, std::size_t dim) {
  const std::size_t n = coords.size() / dim;
  auto point = [&](std::size_t i) { return coords.subspan(i * dim, dim); };
  double best = std::numeric_limits<double>::infinity();
  if (n <= 2000) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, squared_distance(point(i), point(j)));
    }
    return std::sqrt(best);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return point(a)[0] < point(b)[0]; });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = point(order[j])[0] - point(order[i])[0];
      if (dx * dx >= best) break;
      best = std::min(best, squared_distance(point(order[i]), point(order[j])));
    }
  }
  return std::sqrt(best);
}

}  // namespace detail

// Points in R^D, one per vertex, pairwise at least theta apart.
class Embedding {
 public:
  Embedding(std::size_t dimension, double theta, std::vector<double> coords)
      : dimension_(dimension), theta_(theta), coords_(std::move(coords)) {
    if (dimension_ < 1 || dimension_ > 3) throw Error("embedding dimension must be 1, 2 or 3");
    if (coords_.size() % dimension_ != 0) throw Error("coordinate count is not a multiple of the dimension");
    if (!(theta_ > 0)) throw Error("theta must be positive");
    for (double c : coords_) {
      if (!std::isfinite(c)) throw Error("non-finite coordinate");
    }
    const double spacing = detail::min_pairwise_distance(coords_, dimension_);
    if (spacing < theta_ * (1 - 1e-9)) {
      throw Error("points closer than theta: min distance " + std::to_string(spacing));
    }
  }

  std::size_t dimension() const noexcept { return dimension_; }
  double theta() const noexcept { return theta_; }
  std::size_t vertex_count() const noexcept { return coords_.size() / dimension_; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  std::span<const double> point(Vertex v) const {
    if (v >= vertex_count()) throw Error("vertex " + std::to_string(v) + " has no coordinates");
    return std::span<const double>(coords_).subspan(v * dimension_, dimension_);
  }

  double distance(Vertex u, Vertex v) const { return std::sqrt(detail::squared_distance(point(u), point(v))); }

  bool operator==(const Embedding&) const = default;

 private:
  std::size_t dimension_;
  double theta_;
  std::vector<double> coords_;
};

// Smallest s with s^D >= n.
inline std::size_t lattice_side(std::size_t n, std::size_t dimension) {
  std::size_t s = 1;
  auto cells = [&](std::size_t side) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < dimension; ++i) c *= side;
    return c;
  };
  while (cells(s) < n) ++s;
  return s;
}

// Row-major placement on the integer lattice scaled by theta.
inline Embedding grid_embedding(std::size_t n, std::size_t dimension, double theta = 1.0) {
  if (dimension < 1 || dimension > 3) throw Error("grid embedding dimension must be 1, 2 or 3");
  const std::size_t side = lattice_side(n, dimension);
  std::vector<double> coords;
  coords.reserve(n * dimension);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t rest = v;
    for (std::size_t axis = 0; axis < dimension; ++axis) {
      coords.push_back(theta * static_cast<double>(rest % side));
      rest /= side;
    }
  }
  return Embedding(dimension, theta, std::move(coords));
}

inline Embedding grid_embedding(const Graph& g, std::size_t dimension, double theta = 1.0) {
  return grid_embedding(g.vertex_count(), dimension, theta);
}

// Low Laplacian modes as coordinates, stretched over the lattice of side
// s (s^D >= n), jittered by up to a quarter cell and snapped vertex by vertex
// (in a seeded order) to the nearest free cell.
inline Embedding spectral_layout(const Graph& g, std::size_t dimension, double theta = 1.0, std::uint64_t seed = 0) {
  if (dimension < 2 || dimension > 3) throw Error("spectral layout dimension must be 2 or 3");
  if (!is_connected(g)) throw Error("spectral layout needs a connected graph");
  const std::size_t n = g.vertex_count();
  const std::size_t side = lattice_side(n, dimension);
  const auto modes = laplacian_low_modes(g, dimension, derive_seed(seed, 0));
  Rng rng(derive_seed(seed, 1));
  std::vector<double> target(n * dimension, 0.0);
  for (std::size_t axis = 0; axis < dimension; ++axis) {
    if (axis >= modes.vectors.size()) continue;
    const auto& f = modes.vectors[axis];
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    const double span = *hi - *lo;
    for (std::size_t v = 0; v < n; ++v) {
      const double scaled = span > 0 ? (f[v] - *lo) / span * static_cast<double>(side - 1) : 0.0;
      target[v * dimension + axis] = scaled;
    }
  }
  for (auto& x : target) x += (rng.unit() - 0.5) * 0.5;

  std::size_t cells = 1;
  for (std::size_t i = 0; i < dimension; ++i) cells *= side;
  std::vector<double> cell_coords(cells * dimension);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t axis = 0; axis < dimension; ++axis) {
      cell_coords[c * dimension + axis] = static_cast<double>(rest % side);
      rest /= side;
    }
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  rng.shuffle(std::span<Vertex>(order));
  std::vector<char> taken(cells, 0);
  std::vector<double> coords(n * dimension);
  const std::span<const double> all_targets(target), all_cells(cell_coords);
  for (auto v : order) {
    const auto want = all_targets.subspan(v * dimension, dimension);
    std::size_t best = cells;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cells; ++c) {
      if (taken[c]) continue;
      const double d = detail::squared_distance(want, all_cells.subspan(c * dimension, dimension));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    taken[best] = 1;
    for (std::size_t axis = 0; axis < dimension; ++axis) {
      coords[v * dimension + axis] = theta * cell_coords[best * dimension + axis];
    }
  }
  return Embedding(dimension, theta, std::move(coords));
}

// The layout the surface-code constructor has in mind. Planar: qubit
// y*L + x at (x, y). Toric: horizontal edge qubit (x, y) at (2x+1, 2y)/sqrt2
// and vertical edge qubit at (2x, 2y+1)/sqrt2, so neighbours sit theta apart.
inline Embedding natural_surface_embedding(std::size_t L, bool periodic, double theta = 1.0) {
  if (L < 2) throw Error("surface code side must be at least 2");
  if (!periodic) return grid_embedding(L * L, 2, theta);
  std::vector<double> coords(4 * L * L);
  const double s = theta / std::sqrt(2.0);
  for (std::size_t y = 0; y < L; ++y) {
    for (std::size_t x = 0; x < L; ++x) {
      const std::size_t h = y * L + x, v = L * L + y * L + x;
      coords[2 * h] = s * static_cast<double>(2 * x + 1);
      coords[2 * h + 1] = s * static_cast<double>(2 * y);
      coords[2 * v] = s * static_cast<double>(2 * x);
      coords[2 * v + 1] = s * static_cast<double>(2 * y + 1);
    }
  }
  return Embedding(2, theta, std::move(coords));
}

// CSV "vertex,x[,y[,z]]". Vertex ids must be exactly 0..n-1 in any order.
// theta is measured as the smallest pairwise distance.
inline Embedding load_embedding_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::size_t number = 0, start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string line(text.substr(start, end - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) lines.emplace_back(number, line);
      start = end + 1;
    }
  }
  if (lines.empty()) throw ParseError(0, "empty embedding file");
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
      const auto a = field.find_first_not_of(" \t"), b = field.find_last_not_of(" \t");
      fields.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
  };
  const auto header = split(lines[0].second);
  static const char* axes[] = {"x", "y", "z"};
  if (header.size() < 2 || header.size() > 4 || header[0] != "vertex") {
    throw ParseError(lines[0].first, "malformed header: expected vertex,x[,y[,z]]");
  }
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != axes[i - 1]) throw ParseError(lines[0].first, "malformed header: expected vertex,x[,y[,z]]");
  }
  const std::size_t dim = header.size() - 1;
  const std::size_t n = lines.size() - 1;
  std::vector<double> coords(n * dim);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto fields = split(line);
    if (fields.size() != dim + 1) throw ParseError(number, "ragged row: expected " + std::to_string(dim + 1) + " fields");
    std::size_t id = 0;
    std::size_t used = 0;
    try {
      id = std::stoul(fields[0], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != fields[0].size() || fields[0].empty() || fields[0][0] == '-') {
      throw ParseError(number, "malformed vertex id '" + fields[0] + "'");
    }
    if (id >= n) throw ParseError(number, "vertex id " + std::to_string(id) + " out of range");
    if (seen[id]) throw ParseError(number, "duplicate vertex id " + std::to_string(id));
    seen[id] = 1;
    for (std::size_t a = 0; a < dim; ++a) {
      double value = 0;
      try {
        value = std::stod(fields[a + 1], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != fields[a + 1].size() || fields[a + 1].empty() || !std::isfinite(value)) {
        throw ParseError(number, "malformed coordinate '" + fields[a + 1] + "'");
      }
      coords[id * dim + a] = value;
    }
  }
  if (n < 2) throw ParseError(0, "embedding needs at least two points to measure theta");
  const double theta = detail::min_pairwise_distance(coords, dim);
  if (!(theta > 0)) throw Error("coincident points: theta = 0");
  return Embedding(dim, theta, std::move(coords));
}

inline std::string write_embedding_csv(const Embedding& emb) {
  static const char* axes[] = {"x", "y", "z"};
  std::string out = "vertex";
  for (std::size_t a = 0; a < emb.dimension(); ++a) out += std::string(",") + axes[a];
  out += '\n';
  char buf[40];
  for (Vertex v = 0; v < emb.vertex_count(); ++v) {
    out += std::to_string(v);
    for (double c : emb.point(v)) {
      std::snprintf(buf, sizeof buf, ",%.17g", c);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  std::size_t count = 0;
};

struct EdgeLengthProfile {
  std::vector<double> lengths;  // descending
  std::vector<Edge> edges;      // edges[i] has lengths[i]

  double stretch() const {
    if (lengths.empty()) throw Error("stretch undefined for an empty edge set");
    return lengths.front();
  }

  std::size_t count_at_least(double threshold) const {
    return static_cast<std::size_t>(
        std::upper_bound(lengths.begin(), lengths.end(), threshold, std::greater<double>()) - lengths.begin());
  }

  // Bins [i w, (i+1) w) from 0 up to the stretch.
  std::vector<HistogramBin> histogram(double width) const {
    if (!(width > 0)) throw Error("histogram bin width must be positive");
    std::vector<HistogramBin> bins;
    if (lengths.empty()) return bins;
    const auto count = static_cast<std::size_t>(std::floor(lengths.front() / width)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      bins.push_back({width * static_cast<double>(i), width * static_cast<double>(i + 1), 0});
    }
    for (double l : lengths) ++bins[std::min(count - 1, static_cast<std::size_t>(std::floor(l / width)))].count;
    return bins;
  }
};

inline EdgeLengthProfile edge_length_profile(const Graph& g, const Embedding& emb) {
  if (emb.vertex_count() < g.vertex_count()) {
    throw Error("vertex " + std::to_string(emb.vertex_count()) + " has no coordinates");
  }
  std::vector<std::pair<double, Edge>> tagged;
  for (const auto& e : g.edges()) tagged.emplace_back(emb.distance(e.first, e.second), e);
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  EdgeLengthProfile out;
  for (const auto& [len, e] : tagged) {
    out.lengths.push_back(len);
    out.edges.push_back(e);
  }
  return out;
}

struct MomentReport {
  double p = 0;
  double delta_p = 0;
};

inline MomentReport delta_p(const EdgeLengthProfile& profile, double p) {
  if (p < 0) throw Error("moment order must be non-negative");
  MomentReport out{p, 0.0};
  for (double l : profile.lengths) out.delta_p += std::pow(l, p);
  return out;
}

// Any theta-embedding of a graph with this diameter has stretch at least
// (theta/2) n^{1/D} / diam: the n disjoint radius-theta/2 balls must fit in a
// ball of radius stretch * diam.
inline double packing_lower_bound(std::size_t n, std::size_t dimension, double theta, std::size_t diam) {
  if (diam < 1 || n < 2) throw Error("packing bound needs n >= 2 and diam >= 1");
  if (dimension < 1) throw Error("dimension must be positive");
  return theta / 2.0 * std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dimension)) /
         static_cast<double>(diam);
}

}  // namespace nonlocality
