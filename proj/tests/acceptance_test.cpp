// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nonlocality.hpp"
#include "oracles.hpp"

namespace nl = nonlocality;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

nl::Graph random_connected_graph(nl::Rng& rng, std::size_t n) {
  const double p = 0.2 + 0.6 * rng.unit();
  for (;;) {
    std::vector<nl::Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (rng.unit() < p) edges.emplace_back(u, v);
      }
    }
    nl::Graph g(n, edges);
    if (nl::is_connected(g)) return g;
  }
}

Outcome separators_against_oracle() {
  Outcome o;
  nl::Rng rng(101);
  const int graphs = 12000;
  for (int i = 0; i < graphs; ++i) {
    const auto g = random_connected_graph(rng, 1 + rng.below(8));
    const auto exact = nl::separator_exact(g);
    const auto heur = nl::separator_heuristic(g, static_cast<std::uint64_t>(i));
    const auto best = oracle::separator_by_labelling(g);
    if (!nl::is_valid_separator(g, heur)) fail(o, "invalid heuristic separator on graph " + std::to_string(i));
    if (!nl::is_valid_separator(g, exact)) fail(o, "invalid exact separator on graph " + std::to_string(i));
    if (exact.size() != best) fail(o, "exact not minimal on graph " + std::to_string(i));
    if (heur.size() < exact.size()) fail(o, "heuristic below exact on graph " + std::to_string(i));
  }
  if (o.pass) o.detail = std::to_string(graphs) + " graphs";
  return o;
}

std::vector<nl::Graph> small_fixtures() {
  std::vector<nl::Graph> out;
  for (std::size_t n : {4, 7, 12, 20}) {
    out.push_back(nl::path_graph(n));
    out.push_back(nl::cycle_graph(n));
  }
  for (std::size_t n : {4, 6, 9}) out.push_back(nl::complete_graph(n));
  out.push_back(nl::grid_graph(3, 3));
  out.push_back(nl::grid_graph(4, 4));
  out.push_back(nl::grid_graph(4, 5));
  for (std::size_t n : {10, 12, 14, 16, 18, 20}) {
    for (std::uint64_t seed : {1, 2, 3}) out.push_back(nl::random_regular_graph(n, 3, seed));
  }
  out.push_back(nl::random_regular_graph(20, 4, 5));
  out.push_back(nl::connectivity_graph(nl::surface_code(2, true)));
  out.push_back(nl::connectivity_graph(nl::surface_code(3, false)));
  out.push_back(nl::connectivity_graph(nl::surface_code(4, false)));
  return out;
}

Outcome lemma_checks() {
  Outcome o;
  std::size_t embeddings = 0;
  const auto fixtures = small_fixtures();
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& g = fixtures[i];
    const double n = static_cast<double>(g.vertex_count());
    const double eps = nl::exact_vertex_expansion(g);
    const auto sep = nl::separator_exact(g);
    if (static_cast<double>(sep.size()) < std::floor(n * std::min(1.0, eps) / 6.0)) {
      fail(o, "(a) fixture " + std::to_string(i));
    }
    const double lambda2 = oracle::laplacian_spectrum(g)[1];
    if (eps > std::sqrt(2 * std::max(0.0, lambda2)) + 1e-6) fail(o, "(b) fixture " + std::to_string(i));

    const auto diam = oracle::diameter_by_floyd(g);
    std::vector<nl::Embedding> layouts;
    for (std::size_t D : {1, 2, 3}) layouts.push_back(nl::grid_embedding(g, D, 1.0));
    layouts.push_back(nl::spectral_layout(g, 2, 1.0, i));
    layouts.push_back(nl::spectral_layout(g, 3, 0.5, i + 100));
    for (const auto& emb : layouts) {
      ++embeddings;
      const double stretch = nl::edge_length_profile(g, emb).stretch();
      if (stretch < nl::packing_lower_bound(g.vertex_count(), emb.dimension(), emb.theta(), diam) - 1e-12) {
        fail(o, "(c) fixture " + std::to_string(i));
      }
      for (nl::Vertex u = 0; u < g.vertex_count(); ++u) {
        const auto dist = nl::bfs_distances(g, u);
        for (nl::Vertex v = 0; v < g.vertex_count(); ++v) {
          if (emb.distance(u, v) > stretch * static_cast<double>(dist[v]) + 1e-9) {
            fail(o, "(d) fixture " + std::to_string(i));
          }
        }
      }
    }
  }
  for (std::size_t L : {2, 3, 4}) {
    const auto g = nl::connectivity_graph(nl::surface_code(L, false));
    const auto emb = nl::natural_surface_embedding(L, false);
    ++embeddings;
    const double stretch = nl::edge_length_profile(g, emb).stretch();
    if (stretch < nl::packing_lower_bound(g.vertex_count(), 2, emb.theta(), nl::diameter(g)) - 1e-12) {
      fail(o, "(c) surface L=" + std::to_string(L));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(fixtures.size()) + " graphs, " + std::to_string(embeddings) + " embeddings";
  }
  return o;
}

std::size_t oracle_k(const nl::StabilizerCode& code) {
  return code.n() - oracle::rank(oracle::to_dense(code.hx())) - oracle::rank(oracle::to_dense(code.hz()));
}

std::size_t oracle_css_distance(const nl::StabilizerCode& code, std::size_t cap) {
  const auto hx = oracle::to_dense(code.hx()), hz = oracle::to_dense(code.hz());
  return std::min(oracle::css_side_distance(hx, hz, code.n(), cap), oracle::css_side_distance(hz, hx, code.n(), cap));
}

Outcome code_oracles() {
  Outcome o;
  for (std::size_t L : {2, 3, 4}) {
    const auto code = nl::surface_code(L, true);
    const auto k = nl::code_params(code, 1).k;
    if (k != 2 || oracle_k(code) != 2) fail(o, "toric L=" + std::to_string(L) + " k=" + std::to_string(k));
  }
  const auto planar = nl::surface_code(3, false);
  const auto planar_params = nl::code_params(planar, 9);
  if (planar_params.d.value != 3 || planar_params.d.certainty != nl::Certainty::exact ||
      oracle::distance_all_paulis(planar) != 3) {
    fail(o, "surface L=3 distance");
  }
  const auto toric = nl::surface_code(3, true);
  const auto toric_params = nl::code_params(toric, 6);
  if (toric_params.d.value != 3 || toric_params.d.certainty != nl::Certainty::exact ||
      oracle_css_distance(toric, 4) != 3) {
    fail(o, "toric L=3 distance");
  }
  const auto hgp = nl::hypergraph_product(nl::hamming_7_4(), nl::hamming_7_4());
  const auto hp = nl::code_params(hgp, 4);
  if (hgp.n() != 58 || hp.k != 16 || oracle_k(hgp) != 16 || hp.d.value != 3 ||
      hp.d.certainty != nl::Certainty::exact || oracle_css_distance(hgp, 3) != 3) {
    fail(o, "hamming x hamming: n=" + std::to_string(hgp.n()) + " k=" + std::to_string(hp.k) +
                " d=" + std::to_string(hp.d.value));
  }
  if (o.pass) o.detail = "toric k, L=3 distances, [[58,16,3]]";
  return o;
}

Outcome stacked_closed_form() {
  Outcome o;
  for (std::size_t delta_g : {2, 4, 6}) {
    for (std::size_t l_m = 0; l_m <= 10; ++l_m) {
      const auto layout = nl::build_stacked_layout(l_m, delta_g);
      const double expected = 2.0 * static_cast<double>(layout.delta0) * std::pow(4.0, static_cast<double>(l_m)) *
                              static_cast<double>(l_m + 1);
      if (nl::stacked_delta_p(layout, 2) != expected) fail(o, "closed form at l_m=" + std::to_string(l_m));
    }
  }
  std::vector<double> ns, scaled;
  for (std::size_t l_m = 1; l_m <= 10; ++l_m) {
    const double n = std::pow(4.0, static_cast<double>(l_m));
    ns.push_back(n);
    scaled.push_back(nl::stacked_delta_p(nl::build_stacked_layout(l_m, 4), 2) / (n * std::log(n)));
  }
  const double hi = *std::max_element(scaled.begin(), scaled.end());
  const double lo = *std::min_element(scaled.begin(), scaled.end());
  if (!(hi / lo < 4)) fail(o, "delta_p / (n ln n) not bounded");
  const auto fit = nl::fit_scaling(ns, scaled);
  if (std::abs(fit.exponent) > 0.1) fail(o, "exponent " + std::to_string(fit.exponent));
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "exponent %.4f, range [%.3f, %.3f]", fit.exponent, lo, hi);
    o.detail = buf;
  }
  return o;
}

Outcome expander_scaling() {
  Outcome o;
  std::vector<double> ns, ys;
  std::string values;
  for (std::size_t n : {64, 128, 256, 512}) {
    const auto g = nl::random_regular_graph(n, 3, 1000 + n);
    const auto emb = nl::spectral_layout(g, 2, 1.0, 2000 + n);
    const auto ex = nl::vertex_expansion(g, 3000 + n);
    if (!ex.spectral_converged) fail(o, "spectral solve did not converge at n=" + std::to_string(n));
    const auto lengths = nl::edge_length_profile(g, emb);
    const double nn = static_cast<double>(n);
    const auto index = static_cast<std::size_t>(std::ceil(nn * ex.eps_upper / 24.0 - 1e-12));
    const double L = lengths.lengths.at(std::max<std::size_t>(index, 1) - 1);
    ns.push_back(nn);
    ys.push_back(L * std::log(nn));
  }
  const auto fit = nl::fit_scaling(ns, ys);
  if (fit.exponent < 0.35) fail(o, "exponent " + std::to_string(fit.exponent));
  if (o.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "exponent %.4f", fit.exponent);
    o.detail = buf;
  }
  return o;
}

Outcome surface_consistency() {
  Outcome o;
  std::vector<double> ns, ds;
  for (std::size_t L = 3; L <= 6; ++L) {
    const auto code = nl::surface_code(L, false);
    const auto params = nl::code_params(code, L);
    const auto lengths = nl::edge_length_profile(nl::connectivity_graph(code), nl::natural_surface_embedding(L, false));
    if (lengths.stretch() > 2) fail(o, "stretch at L=" + std::to_string(L));
    if (nl::any_violation(nl::audit_theorem_main(params, lengths, 2))) fail(o, "violation at L=" + std::to_string(L));
    if (params.d.certainty != nl::Certainty::exact) fail(o, "distance not exact at L=" + std::to_string(L));
    ns.push_back(static_cast<double>(params.n));
    ds.push_back(static_cast<double>(params.d.value));
  }
  const auto fit = nl::fit_scaling(ns, ds);
  if (std::abs(fit.exponent - 0.5) > 0.05) fail(o, "exponent " + std::to_string(fit.exponent));
  if (o.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "d exponent %.4f", fit.exponent);
    o.detail = buf;
  }
  return o;
}

Outcome peeling_blocks() {
  Outcome o;
  std::vector<nl::Graph> parts;
  for (std::uint64_t s = 0; s < 4; ++s) parts.push_back(nl::random_regular_graph(32, 3, 40 + s));
  const auto g = nl::disjoint_union(parts);
  const auto peel = nl::peel_dense_subgraphs(g, 8, 96, 0.9, 17);
  if (peel.blocks.size() < 3) fail(o, std::to_string(peel.blocks.size()) + " blocks");
  std::set<nl::Vertex> seen;
  for (const auto& b : peel.blocks) {
    std::set<std::size_t> components;
    for (auto v : b.vertices) {
      components.insert(v / 32);
      if (!seen.insert(v).second) fail(o, "blocks overlap");
    }
    if (components.size() != 1) fail(o, "block spans components");
  }
  if (o.pass) o.detail = std::to_string(peel.blocks.size()) + " blocks";
  return o;
}

Outcome stacked_gate() {
  Outcome o;
  if (!nl::stacked_bound_check({4096, 1, {4096, nl::Certainty::exact}}).flagged) fail(o, "(4096, 1, 4096) not flagged");
  if (nl::stacked_bound_check({58, 16, {3, nl::Certainty::exact}}).flagged) fail(o, "(58, 16, 3) flagged");
  if (o.pass) o.detail = "linear distance flagged, [[58,16,3]] not flagged";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Run every pipeline in two fresh directories and compare report.json bytes.
Outcome cli_determinism() {
  Outcome o;
  const std::string cli = NONLOCALITY_CLI;
  const std::vector<std::string> pipelines = {
      "build surface --L 3 --periodic -o toric.code --out build_report",
      "graph --code toric.code --out graph",
      "profile --code toric.code --out profile",
      "embed spectral --code toric.code --seed 5 -o toric.csv --out embed",
      "embed load --code toric.code --csv toric.csv --out load",
      "audit --family surface --sizes 3,4,5,6 --out audit_surface",
      "audit --family expander --sizes 64,128,256 --seed 11 --out audit_expander",
      "audit --family ldpc --sizes 8,12 --dim 3 --distance-budget 4 --out audit_ldpc",
      "stack assign --family surface --L 4 --out stack_assign",
      "stack check --n 1024 --k 1 --d 1 --out stack_check",
      "report audit_surface/report.json audit_expander/report.json --fit stretch,d --out merged",
  };
  const auto root = std::filesystem::path(NONLOCALITY_SCRATCH) / "determinism";
  std::filesystem::remove_all(root);
  std::vector<std::string> outputs;
  for (const char* run : {"a", "b"}) {
    const auto dir = root / run;
    std::filesystem::create_directories(dir);
    for (const auto& p : pipelines) {
      const std::string cmd = "cd '" + dir.string() + "' && NONLOCALITY_SEED=3 '" + cli + "' " + p + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) fail(o, "command failed: " + p);
    }
  }
  std::size_t compared = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root / "a")) {
    if (entry.path().filename() != "report.json") continue;
    const auto rel = std::filesystem::relative(entry.path(), root / "a");
    const auto first = slurp(entry.path());
    if (first.empty() || first != slurp(root / "b" / rel)) fail(o, rel.string() + " differs");
    ++compared;
  }
  if (compared != pipelines.size()) fail(o, std::to_string(compared) + " reports for " + std::to_string(pipelines.size()) + " pipelines");
  if (o.pass) o.detail = std::to_string(compared) + " report.json files identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"separator oracle equivalence", separators_against_oracle},
      {"lemma-level checks on small fixtures", lemma_checks},
      {"code parameter oracles", code_oracles},
      {"stacked closed form and n ln n scaling", stacked_closed_form},
      {"expander long-edge scaling", expander_scaling},
      {"surface family consistency", surface_consistency},
      {"peeling on block structure", peeling_blocks},
      {"stacked gate", stacked_gate},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      fail(o, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%s; %.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
