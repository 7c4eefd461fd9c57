#include <gtest/gtest.h>

#include <cmath>

#include "nonlocality/graphs/density.hpp"
#include "nonlocality/graphs/expansion.hpp"
#include "nonlocality/graphs/generators.hpp"
#include "nonlocality/graphs/profile.hpp"
#include "nonlocality/graphs/separators.hpp"
#include "nonlocality/graphs/spectral.hpp"
#include "oracles.hpp"

namespace nl = nonlocality;

namespace {

nl::Graph random_graph(std::size_t n, double p, nl::Rng& rng) {
  std::vector<nl::Edge> edges;
  for (nl::Vertex u = 0; u < n; ++u) {
    for (nl::Vertex v = u + 1; v < n; ++v) {
      if (rng.unit() < p) edges.emplace_back(u, v);
    }
  }
  return nl::Graph(n, edges);
}

nl::Graph union_of(const std::vector<nl::Graph>& parts) { return nl::disjoint_union(parts); }

}  // namespace

TEST(GraphBasics, EdgeListRoundTrip) {
  nl::Rng rng(3);
  const auto g = random_graph(15, 0.3, rng);
  EXPECT_EQ(nl::parse_edge_list(nl::write_edge_list(g)), g);
  EXPECT_THROW(nl::parse_edge_list("2 1\n0 2\n"), nl::ParseError);
  EXPECT_THROW(nl::parse_edge_list("2 1\n1 1\n"), nl::ParseError);
  EXPECT_THROW(nl::parse_edge_list("2 1\n0 1\n0 1\n"), nl::ParseError);
}

TEST(GraphBasics, DiameterExamples) {
  EXPECT_EQ(nl::diameter(nl::cycle_graph(8)), 4u);
  EXPECT_EQ(nl::diameter(nl::path_graph(5)), 4u);
  EXPECT_EQ(nl::diameter(nl::complete_graph(6)), 1u);
  EXPECT_THROW(nl::diameter(union_of({nl::path_graph(2), nl::path_graph(2)})), nl::Error);
}

TEST(GraphBasics, DiameterMatchesFloyd) {
  nl::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(12, 0.3, rng);
    if (!nl::is_connected(g)) continue;
    EXPECT_EQ(nl::diameter(g), oracle::diameter_by_floyd(g));
  }
}

TEST(Generators, RandomRegular) {
  const auto g = nl::random_regular_graph(64, 3, 5);
  EXPECT_EQ(g.vertex_count(), 64u);
  for (nl::Vertex v = 0; v < 64; ++v) EXPECT_EQ(g.degree(v), 3u);
  EXPECT_TRUE(nl::is_connected(g));
  EXPECT_EQ(g, nl::random_regular_graph(64, 3, 5));
  EXPECT_THROW(nl::random_regular_graph(7, 3, 1), nl::Error);
}

TEST(Spectral, MatchesDenseEigensolver) {
  nl::Rng rng(8);
  std::vector<nl::Graph> graphs = {nl::cycle_graph(8), nl::path_graph(30), nl::grid_graph(5, 7),
                                   nl::random_regular_graph(100, 3, 2)};
  for (int i = 0; i < 5; ++i) {
    auto g = random_graph(25, 0.25, rng);
    if (nl::is_connected(g)) graphs.push_back(std::move(g));
  }
  for (const auto& g : graphs) {
    const auto modes = nl::laplacian_low_modes(g, 3, 1);
    ASSERT_TRUE(modes.converged);
    const auto spectrum = oracle::laplacian_spectrum(g);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(modes.values[j], spectrum(static_cast<Eigen::Index>(j + 1)), 1e-7);
    }
    double sum = 0;
    for (double x : modes.vectors[0]) sum += x;
    EXPECT_NEAR(sum, 0.0, 1e-9);
  }
}

TEST(Spectral, DeterministicForSeed) {
  const auto g = nl::random_regular_graph(60, 3, 4);
  const auto a = nl::laplacian_low_modes(g, 2, 9);
  const auto b = nl::laplacian_low_modes(g, 2, 9);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Expansion, Examples) {
  const auto c8 = nl::vertex_expansion(nl::cycle_graph(8));
  ASSERT_TRUE(c8.eps_exact);
  EXPECT_DOUBLE_EQ(*c8.eps_exact, 0.5);
  EXPECT_NEAR(c8.lambda2, 2 - 2 * std::cos(2 * M_PI / 8), 1e-9);
  EXPECT_NEAR(c8.eps_upper, std::sqrt(2 * c8.lambda2), 1e-12);

  const auto k4 = nl::vertex_expansion(nl::complete_graph(4));
  EXPECT_DOUBLE_EQ(*k4.eps_exact, 1.0);

  const auto split = nl::vertex_expansion(union_of({nl::path_graph(2), nl::path_graph(2)}));
  EXPECT_TRUE(split.disconnected);
  EXPECT_DOUBLE_EQ(*split.eps_exact, 0.0);
  EXPECT_DOUBLE_EQ(split.lambda2, 0.0);

  EXPECT_THROW(nl::vertex_expansion(nl::path_graph(1)), nl::Error);
  EXPECT_FALSE(nl::vertex_expansion(nl::random_regular_graph(30, 3, 1)).eps_exact);
}

TEST(Expansion, MatchesBruteForceAndSpectralSandwich) {
  nl::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 2 + rng.below(11);
    const auto g = random_graph(n, 0.2 + 0.6 * rng.unit(), rng);
    const auto report = nl::vertex_expansion(g);
    ASSERT_TRUE(report.eps_exact);
    EXPECT_NEAR(*report.eps_exact, oracle::vertex_expansion(g), 1e-12);
    EXPECT_LE(*report.eps_exact, 1.0 + 2.0 / static_cast<double>(n - 1) + 1e-12);
    if (!report.disconnected) {
      EXPECT_LE(*report.eps_exact, report.eps_upper + 1e-6);
      EXPECT_GE(*report.eps_exact, report.eps_lower - 1e-9);
    }
  }
}

TEST(SeparatorExact, Examples) {
  const auto p5 = nl::separator_exact(nl::path_graph(5));
  EXPECT_EQ(p5.separator, std::vector<nl::Vertex>{2});
  EXPECT_EQ(p5.part_a.size(), 2u);
  EXPECT_EQ(p5.part_b.size(), 2u);
  EXPECT_TRUE(p5.certified_optimal);

  const auto k6 = nl::separator_exact(nl::complete_graph(6));
  EXPECT_EQ(k6.size(), 2u);
  EXPECT_TRUE(k6.part_a.empty());
  EXPECT_EQ(k6.part_b.size(), 4u);

  // The diagonal {(0,2),(1,1),(2,0)} cuts off a corner of 3 and leaves 10 <= 32/3.
  const auto grid = nl::grid_graph(4, 4);
  const auto g4 = nl::separator_exact(grid);
  EXPECT_EQ(g4.size(), 3u);
  EXPECT_EQ(g4.size(), oracle::separator_by_subsets(grid));
  EXPECT_TRUE(nl::is_valid_separator(grid, g4));

  EXPECT_THROW(nl::separator_exact(nl::path_graph(21)), nl::Error);
}

TEST(SeparatorExact, MatchesOraclesOnRandomGraphs) {
  nl::Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = 1 + rng.below(9);
    const auto g = random_graph(n, rng.unit(), rng);
    const auto exact = nl::separator_exact(g);
    ASSERT_TRUE(nl::is_valid_separator(g, exact));
    EXPECT_EQ(exact.size(), oracle::separator_by_labelling(g));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_graph(14, 0.25, rng);
    EXPECT_EQ(nl::separator_exact(g).size(), oracle::separator_by_subsets(g));
  }
}

TEST(SeparatorHeuristic, Examples) {
  EXPECT_EQ(nl::separator_heuristic(nl::path_graph(5), 1).size(), 1u);
  const auto grid = nl::grid_graph(8, 8);
  const auto g8 = nl::separator_heuristic(grid, 1);
  EXPECT_TRUE(nl::is_valid_separator(grid, g8));
  EXPECT_LE(g8.size(), 12u);
  EXPECT_FALSE(g8.certified_optimal);

  const auto two = union_of({nl::complete_graph(4), nl::complete_graph(4)});
  const auto cliques = nl::separator_heuristic(two, 1);
  EXPECT_EQ(cliques.size(), 0u);
  EXPECT_EQ(cliques.part_a, (std::vector<nl::Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(cliques.part_b, (std::vector<nl::Vertex>{4, 5, 6, 7}));
}

TEST(SeparatorHeuristic, ValidOnRandomGraphsAndNeverBelowExact) {
  nl::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + rng.below(64);
    const auto g = random_graph(n, 4.0 / static_cast<double>(n) * rng.unit() + 0.01, rng);
    const auto h = nl::separator_heuristic(g, trial);
    ASSERT_TRUE(nl::is_valid_separator(g, h)) << "n = " << n;
    EXPECT_EQ(h.size(), nl::separator_heuristic(g, trial).size());
    if (n <= 12) {
      EXPECT_GE(h.size(), nl::separator_exact(g).size());
    }
  }
}

TEST(SeparatorLemma, ExpanderSeparatorsAreLarge) {
  // |sep| >= (1/6) n min(1, eps) up to one unit of integer slack.
  nl::Rng rng(31);
  std::vector<nl::Graph> graphs = {nl::complete_graph(12), nl::cycle_graph(16), nl::grid_graph(4, 4),
                                   nl::random_regular_graph(20, 3, 1), nl::random_regular_graph(18, 4, 2)};
  for (int i = 0; i < 30; ++i) graphs.push_back(random_graph(6 + rng.below(10), 0.5, rng));
  for (const auto& g : graphs) {
    const double n = static_cast<double>(g.vertex_count());
    const double eps = *nl::vertex_expansion(g).eps_exact;
    EXPECT_GE(static_cast<double>(nl::separator_exact(g).size()), n * std::min(1.0, eps) / 6.0 - 1.0);
  }
}

TEST(SeparatorLowerBound, RoutesAndSoundness) {
  const auto k12 = nl::separator_lower_bound(nl::complete_graph(12));
  EXPECT_EQ(k12.value, 4u);
  EXPECT_EQ(k12.source, nl::BoundSource::exact_search);
  const auto path = nl::separator_lower_bound(nl::path_graph(60));
  EXPECT_EQ(path.value, 1u);
  EXPECT_EQ(path.source, nl::BoundSource::connectivity);
  const auto big = nl::random_regular_graph(200, 3, 8);
  const auto bound = nl::separator_lower_bound(big, 1);
  EXPECT_LE(bound.value, nl::separator_heuristic(big, 1).size());
  const auto k30 = nl::separator_lower_bound(nl::complete_graph(30));
  EXPECT_EQ(k30.source, nl::BoundSource::expansion);
  EXPECT_EQ(k30.value, 3u);  // eps_lower = 30/58, so the bound is 15.5/6
}

TEST(Profile, PathIsOneEverywhere) {
  const auto g = nl::path_graph(40);
  const auto profile = nl::separation_profile(g, nl::default_r_grid(40), 3);
  for (const auto& s : profile.samples) {
    EXPECT_EQ(s.lower, 1u);
    EXPECT_EQ(s.upper, 1u);
  }
}

TEST(Profile, CliqueUnionsAndClique) {
  std::vector<nl::Graph> parts(4, nl::complete_graph(8));
  const auto four = union_of(parts);
  const auto p = nl::separation_profile(four, {8, 32}, 1);
  EXPECT_GE(p.at(8)->lower, 3u);

  const auto k12 = nl::separation_profile(nl::complete_graph(12), {12}, 1);
  EXPECT_EQ(k12.at(12)->lower, 4u);
}

TEST(Profile, InvariantsOnVariousGraphs) {
  std::vector<nl::Graph> graphs = {nl::grid_graph(6, 6), nl::random_regular_graph(64, 3, 3), nl::cycle_graph(30),
                                   nl::connectivity_graph(nl::surface_code(3, true))};
  for (const auto& g : graphs) {
    const auto profile = nl::separation_profile(g, nl::default_r_grid(g.vertex_count()), 2);
    ASSERT_FALSE(profile.samples.empty());
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
      const auto& s = profile.samples[i];
      EXPECT_LE(s.lower, s.upper);
      EXPECT_LE(s.lower, (s.r + 2) / 3);
      EXPECT_LE(s.witness_size, s.r);
      if (i > 0) {
        EXPECT_GE(s.lower, profile.samples[i - 1].lower);
        EXPECT_GT(s.r, profile.samples[i - 1].r);
      }
    }
    EXPECT_LT(nl::cmax_report(profile, 2).c_max, 1.0);
  }
  EXPECT_THROW(nl::separation_profile(nl::path_graph(5), {1}, 0), nl::Error);
  EXPECT_THROW(nl::separation_profile(nl::path_graph(5), {6}, 0), nl::Error);
}

TEST(Cmax, Examples) {
  nl::SeparationProfile p{16, {{4, 2, 2, "", 4, {}}, {16, 4, 4, "", 16, {}}}};
  const auto r = nl::cmax_report(p, 4);
  EXPECT_NEAR(r.c_max, 0.5, 1e-12);
  EXPECT_EQ(r.r0, 4u);

  nl::SeparationProfile q{9, {{9, 3, 3, "", 9, {}}}};
  EXPECT_NEAR(nl::cmax_report(q, 9).c_max, 0.5, 1e-12);
  EXPECT_EQ(nl::cmax_report(q, 9).r0, 9u);

  nl::SeparationProfile bad{8, {{8, 8, 8, "", 8, {}}}};
  EXPECT_THROW(nl::cmax_report(bad, 1), nl::Error);
  nl::SeparationProfile zero{8, {{8, 0, 0, "", 8, {}}}};
  EXPECT_THROW(nl::cmax_report(zero, 1), nl::Error);
  EXPECT_THROW(nl::cmax_report(q, 10), nl::Error);
}

TEST(GeneralizedBounds, Examples) {
  const auto code = nl::surface_code(3, true);
  const auto params = nl::code_params(code, 4);
  const auto g = nl::connectivity_graph(code);
  const auto profile = nl::separation_profile(g, nl::default_r_grid(g.vertex_count()), 1);
  const auto b = nl::check_generalized_bounds(params, profile);
  EXPECT_GT(b.rho_d, 0.0);
  EXPECT_TRUE(std::isfinite(b.rho_d));
  EXPECT_GT(b.rho_k, 0.0);
  EXPECT_TRUE(std::isfinite(b.rho_k));

  nl::CodeParams zero_k{18, 0, {1, nl::Certainty::lower_bound}};
  EXPECT_EQ(nl::check_generalized_bounds(zero_k, profile).rho_k, 0.0);

  nl::SeparationProfile minimal{2, {{2, 1, 1, "", 2, {}}}};
  nl::CodeParams tiny{2, 1, {1, nl::Certainty::exact}};
  EXPECT_LE(nl::check_generalized_bounds(tiny, minimal).rho_d, 1.0);

  nl::SeparationProfile partial{18, {{4, 1, 1, "", 4, {}}}};
  EXPECT_THROW(nl::check_generalized_bounds(params, partial), nl::Error);
}

TEST(Extraction, Examples) {
  const auto cubic = nl::random_regular_graph(64, 3, 1);
  const auto ex = nl::extract_expander_subgraph(cubic, 4, 1);
  ASSERT_TRUE(ex.found);
  EXPECT_GE(ex.vertices.size(), 32u);
  ASSERT_TRUE(ex.expansion);
  EXPECT_GT(ex.expansion->eps_upper, 0.0);

  const auto path = nl::extract_expander_subgraph(nl::path_graph(100), 2, 1);
  EXPECT_FALSE(path.found);
  EXPECT_FALSE(path.trail.empty());
  for (auto s : path.trail) EXPECT_LT(s, 2u);

  const auto k12 = nl::extract_expander_subgraph(nl::complete_graph(12), 4, 1);
  ASSERT_TRUE(k12.found);
  EXPECT_EQ(k12.vertices.size(), 12u);
  EXPECT_DOUBLE_EQ(*k12.expansion->eps_exact, 1.0);
  EXPECT_TRUE(k12.final_cut_certified);
  EXPECT_THROW(nl::extract_expander_subgraph(nl::path_graph(3), 0), nl::Error);
}

TEST(Peeling, BlocksOnDisjointCubicGraphs) {
  std::vector<nl::Graph> parts;
  for (std::uint64_t s = 0; s < 4; ++s) parts.push_back(nl::random_regular_graph(32, 3, 40 + s));
  const auto g = union_of(parts);
  const auto peel = nl::peel_dense_subgraphs(g, 8, 96, 0.9, 1);
  EXPECT_GE(peel.blocks.size(), 3u);
  std::vector<char> used(g.vertex_count(), 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < peel.blocks.size(); ++i) {
    const auto& block = peel.blocks[i];
    EXPECT_GE(block.vertices.size(), 8u);
    const auto comp = block.vertices.front() / 32;
    for (auto v : block.vertices) {
      EXPECT_EQ(v / 32, comp);
      EXPECT_FALSE(used[v]);
      used[v] = 1;
    }
    if (i + 1 < peel.blocks.size()) total += block.vertices.size();
  }
  EXPECT_LE(static_cast<double>(total), 0.9 * 96);
}

TEST(Peeling, PathAndBudget) {
  const auto peel = nl::peel_dense_subgraphs(nl::path_graph(50), 5, 10, 0.5, 1);
  EXPECT_LE(peel.blocks.size(), 1u);
  for (const auto& b : peel.blocks) EXPECT_EQ(b.density, 1u);
  EXPECT_TRUE(nl::peel_dense_subgraphs(nl::complete_graph(10), 8, 10, 0.5, 1).blocks.empty());
  EXPECT_THROW(nl::peel_dense_subgraphs(nl::path_graph(5), 0, 1, 0.5), nl::Error);
  EXPECT_THROW(nl::peel_dense_subgraphs(nl::path_graph(5), 1, 1, 1.5), nl::Error);
}

TEST(DiameterClaim, CubicExpandersStayLogarithmic) {
  double reference = 0;
  for (std::size_t n : {32u, 64u, 128u, 256u, 512u}) {
    const auto g = nl::random_regular_graph(n, 3, 7);
    const auto report = nl::vertex_expansion(g, 1);
    const double value =
        static_cast<double>(nl::diameter(g)) * report.eps_upper / std::log(static_cast<double>(n));
    if (n == 32) reference = value;
    EXPECT_LE(value, 4 * reference) << "n = " << n;
  }
}
