#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nonlocality/codes/stabilizer_code.hpp"
#include "nonlocality/error.hpp"
#include "nonlocality/graphs/density.hpp"
#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/graphs/separators.hpp"

namespace nonlocality {

struct ProfileSample {
  std::size_t r = 0;
  std::size_t lower = 0;  // certified: some subgraph with <= r vertices has separator >= lower
  std::size_t upper = 0;  // heuristic separator of that witness
  std::string witness;
  std::size_t witness_size = 0;
  BoundSource source = BoundSource::none;
};

struct SeparationProfile {
  std::size_t n = 0;
  std::vector<ProfileSample> samples;

  const ProfileSample* at(std::size_t r) const {
    for (const auto& s : samples) {
      if (s.r == r) return &s;
    }
    return nullptr;
  }
};

// 2, 4, 8, ... below n, then n itself.
inline std::vector<std::size_t> default_r_grid(std::size_t n) {
  std::vector<std::size_t> grid;
  for (std::size_t r = 2; r < n; r *= 2) grid.push_back(r);
  if (n >= 2) grid.push_back(n);
  return grid;
}

inline SeparationProfile separation_profile(const Graph& g, std::vector<std::size_t> r_grid, std::uint64_t seed = 0) {
  const std::size_t n = g.vertex_count();
  std::sort(r_grid.begin(), r_grid.end());
  r_grid.erase(std::unique(r_grid.begin(), r_grid.end()), r_grid.end());
  for (auto r : r_grid) {
    if (r < 2 || r > n) throw Error("r grid values must lie in [2, n]; got " + std::to_string(r));
  }
  struct Witness {
    std::vector<Vertex> vertices;
    std::string id;
  };
  std::vector<Witness> witnesses;
  const auto balls = detail::witness_candidates(g, r_grid, 1, derive_seed(seed, 0));
  for (const auto& ball : balls) {
    witnesses.push_back({ball, "ball:" + std::to_string(ball.front()) + "+" + std::to_string(ball.size())});
  }
  std::vector<Vertex> everything(n);
  for (Vertex v = 0; v < n; ++v) everything[v] = v;
  witnesses.push_back({everything, "whole"});
  // Expander blocks extracted at each separator target on the grid.
  for (std::size_t t = 2; 3 * t <= n + 2; t *= 2) {
    const auto ex = extract_expander_subgraph(g, t, derive_seed(seed, 1 + t));
    if (ex.found) witnesses.push_back({ex.vertices, "block:t" + std::to_string(t)});
  }

  struct Scored {
    std::size_t size;
    SeparatorLowerBound bound;
    std::size_t index;
  };
  std::vector<Scored> scored;
  std::vector<std::vector<Vertex>> seen;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (std::find(seen.begin(), seen.end(), witnesses[i].vertices) != seen.end()) continue;
    seen.push_back(witnesses[i].vertices);
    const auto h = induced_subgraph(g, witnesses[i].vertices);
    scored.push_back({h.graph.vertex_count(), separator_lower_bound(h.graph, derive_seed(seed, 100 + i)), i});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.size != b.size ? a.size < b.size : a.index < b.index;
  });

  SeparationProfile profile;
  profile.n = n;
  std::optional<Scored> best;
  std::size_t best_upper = 0;
  std::size_t next = 0;
  for (auto r : r_grid) {
    // The family of subgraphs grows with r, so the best bound so far carries over.
    for (; next < scored.size() && scored[next].size <= r; ++next) {
      if (!best || scored[next].bound.value > best->bound.value) {
        best = scored[next];
        const auto h = induced_subgraph(g, witnesses[best->index].vertices);
        best_upper = h.graph.vertex_count() <= kExactSearchLimit && best->bound.source == BoundSource::exact_search
                         ? best->bound.value
                         : separator_heuristic(h.graph, derive_seed(seed, 200 + best->index)).size();
      }
    }
    ProfileSample sample;
    sample.r = r;
    if (best) {
      sample.lower = best->bound.value;
      sample.upper = std::max(best_upper, sample.lower);
      sample.witness = witnesses[best->index].id;
      sample.witness_size = best->size;
      sample.source = best->bound.source;
    }
    profile.samples.push_back(std::move(sample));
  }
  return profile;
}

struct CmaxReport {
  double c_max = 0;
  std::size_t r0 = 0;
  std::size_t d_used = 0;
  std::size_t samples_used = 0;
};

// max over sampled r in [d, n] of ln(lower) / ln(r); r0 is the smallest maximiser.
inline CmaxReport cmax_report(const SeparationProfile& profile, std::size_t d) {
  CmaxReport out;
  out.d_used = d;
  bool any = false;
  for (const auto& s : profile.samples) {
    if (s.r < d || s.r > profile.n || s.r < 2) continue;
    if (s.lower == 0) throw Error("nontrivial profile required: zero lower bound at r = " + std::to_string(s.r));
    if (s.lower > (s.r + 2) / 3) {
      throw Error("bad lower bound: " + std::to_string(s.lower) + " exceeds r/3 at r = " + std::to_string(s.r));
    }
    const double c = std::log(static_cast<double>(s.lower)) / std::log(static_cast<double>(s.r));
    ++out.samples_used;
    if (!any || c > out.c_max + 1e-12) {
      out.c_max = c;
      out.r0 = s.r;
    }
    any = true;
  }
  if (!any) throw Error("no profile sample with r in [d, n]");
  return out;
}

struct GeneralizedBounds {
  double rho_d = 0;  // d / upper(n)
  double rho_k = 0;  // k / (d^{2(c_max - 1)} n ln^2 n)
  std::optional<CmaxReport> cmax;
};

inline GeneralizedBounds check_generalized_bounds(const CodeParams& params, const SeparationProfile& profile) {
  const auto* top = profile.at(profile.n);
  if (top == nullptr) throw Error("profile must be sampled at r = n");
  GeneralizedBounds out;
  const double d = static_cast<double>(params.d.value);
  out.rho_d = top->upper == 0 ? 0.0 : d / static_cast<double>(top->upper);
  if (params.k == 0) return out;
  out.cmax = cmax_report(profile, params.d.value);
  const double n = static_cast<double>(params.n);
  const double ln = std::log(n);
  out.rho_k = static_cast<double>(params.k) / (std::pow(d, 2.0 * (out.cmax->c_max - 1.0)) * n * ln * ln);
  return out;
}

}  // namespace nonlocality
