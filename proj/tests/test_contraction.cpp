#include "doctest.h"

#include <numeric>

#include "rainbow/contraction.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/reductions.hpp"
#include "test_util.hpp"

using namespace rainbow;

namespace {

std::vector<int> all_edge_ids(const ColoredGraph& g) {
  std::vector<int> ids(g.m());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

}  // namespace

TEST_CASE("contract_stars: two stars joined by one leaf-leaf edge") {
  // centers 0 and 3, leaves 1,2 and 4,5, bridge 2-4
  const ColoredGraph g = build_colored_graph(
      6, {{0, 1, 0}, {0, 2, 1}, {3, 4, 2}, {3, 5, 3}, {2, 4, 4}});
  const std::vector<int> centers = {0, 3};
  const auto assignment = star_assignment(g, all_edge_ids(g), centers);
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), centers, assignment);
  CHECK(cg.n == 2);
  REQUIRE(cg.edges.size() == 1);
  CHECK(cg.edges[0].u == 0);
  CHECK(cg.edges[0].v == 1);
  CHECK(cg.edges[0].orig_edge == 4);
  CHECK(cg.simple());
  // block sizes partition the subgraph vertices
  long long covered = 0;
  for (int v : cm.members)
    covered += cm.block_of[v] >= 0 ? 1 : 0;
  CHECK(covered == static_cast<long long>(cm.members.size()));
  CHECK(cm.members.size() == 6);
}

TEST_CASE("contract_stars: intra-block extra edge becomes a reported loop") {
  const ColoredGraph g = build_colored_graph(4, {{0, 1, 0}, {0, 2, 1}, {0, 3, 2}, {1, 2, 3}});
  const std::vector<int> centers = {0};
  const auto assignment = star_assignment(g, all_edge_ids(g), centers);
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), centers, assignment);
  CHECK(cg.n == 1);
  REQUIRE(cg.loops.size() == 1);
  CHECK(cg.edges[cg.loops[0]].orig_edge == 3);
  CHECK_FALSE(cg.simple());
}

TEST_CASE("contract_stars: two colors joining the same blocks form a parallel pair") {
  const ColoredGraph g = build_colored_graph(
      6, {{0, 1, 0}, {0, 2, 1}, {3, 4, 2}, {3, 5, 3}, {1, 4, 4}, {2, 5, 5}});
  const std::vector<int> centers = {0, 3};
  const auto assignment = star_assignment(g, all_edge_ids(g), centers);
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), centers, assignment);
  CHECK(cg.n == 2);
  CHECK(cg.edges.size() == 2);
  REQUIRE(cg.parallel_pairs.size() == 1);
  CHECK(cg.loops.empty());
}

TEST_CASE("contract_stars: unassigned and non-adjacent assignments are rejected") {
  const ColoredGraph g = build_colored_graph(4, {{0, 1, 0}, {2, 3, 1}});
  std::vector<int> assignment(4, -1);
  assignment[0] = 0;
  assignment[1] = 0;
  CHECK(testutil::thrown_kind([&] { contract_stars(g, {0, 1}, {0}, assignment); }) ==
        Err::unassigned_vertex);
  assignment[2] = 0;  // 2 is not adjacent to 0
  assignment[3] = 0;
  CHECK(testutil::thrown_kind([&] { contract_stars(g, {0, 1}, {0}, assignment); }) ==
        Err::non_adjacent_assignment);
}

TEST_CASE("lift: identity triangle through singleton blocks") {
  const ColoredGraph g = build_colored_graph(3, {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}});
  const std::vector<int> centers = {0, 1, 2};
  const auto assignment = star_assignment(g, all_edge_ids(g), centers);
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), centers, assignment);
  REQUIRE(cg.n == 3);
  REQUIRE(cg.edges.size() == 3);
  auto cyc = undirected_girth_edges(3, {{cg.edges[0].u, cg.edges[0].v},
                                        {cg.edges[1].u, cg.edges[1].v},
                                        {cg.edges[2].u, cg.edges[2].v}});
  REQUIRE(cyc.has_value());
  const CycleCertificate lifted = lift_cycle(cm, g, cg, *cyc);
  CHECK(lifted.length() == 3);
  CHECK(verify_rainbow_cycle(g, lifted));
}

TEST_CASE("lift: parallel pair between two star blocks gives length <= 6") {
  const ColoredGraph g = build_colored_graph(
      6, {{0, 1, 0}, {0, 2, 1}, {3, 4, 2}, {3, 5, 3}, {1, 4, 4}, {2, 5, 5}});
  const std::vector<int> centers = {0, 3};
  const auto assignment = star_assignment(g, all_edge_ids(g), centers);
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), centers, assignment);
  REQUIRE(cg.parallel_pairs.size() == 1);
  const auto [a, b] = cg.parallel_pairs[0];
  CycleCertificate two;
  two.vertices = {cg.edges[a].u, cg.edges[a].v};
  two.edge_ids = {a, b};
  const CycleCertificate lifted = lift_cycle(cm, g, cg, two);
  CHECK(lifted.length() <= 6);
  CHECK(verify_rainbow_cycle(g, lifted));
}

TEST_CASE("lift: reported loop gives a rainbow cycle of length <= 3") {
  const ColoredGraph g = build_colored_graph(4, {{0, 1, 0}, {0, 2, 1}, {0, 3, 2}, {1, 2, 3}});
  const auto assignment = star_assignment(g, all_edge_ids(g), {0});
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), {0}, assignment);
  REQUIRE(cg.loops.size() == 1);
  CycleCertificate loop;
  loop.vertices = {0};
  loop.edge_ids = {cg.loops[0]};
  const CycleCertificate lifted = lift_cycle(cm, g, cg, loop);
  CHECK(lifted.length() == 3);
  CHECK(verify_rainbow_cycle(g, lifted));
}

TEST_CASE("lift: contracted 4-cycle with one nontrivial block stays within 3x") {
  // centers 0,3,6,9; block of 0 also holds leaf 1; colors all distinct
  const ColoredGraph g = build_colored_graph(
      10, {{0, 1, 0}, {1, 3, 1}, {3, 6, 2}, {6, 9, 3}, {9, 0, 4}});
  const std::vector<int> centers = {0, 3, 6, 9};
  const auto assignment = star_assignment(g, all_edge_ids(g), centers);
  const auto [cg, cm] = contract_stars(g, all_edge_ids(g), centers, assignment);
  CHECK(cg.n == 4);
  REQUIRE(cg.simple());
  std::vector<std::pair<int, int>> plain;
  for (const ContractedEdge& e : cg.edges) plain.push_back({e.u, e.v});
  auto cyc = undirected_girth_edges(cg.n, plain);
  REQUIRE(cyc.has_value());
  CHECK(cyc->length() == 4);
  const CycleCertificate lifted = lift_cycle(cm, g, cg, *cyc);
  CHECK(lifted.length() <= 12);
  CHECK(verify_rainbow_cycle(g, lifted));
  CHECK(lifted.length() == 5);  // the one nontrivial block adds one tree edge
}

TEST_CASE("contraction invariants on pipeline-shaped random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ColoredGraph g = gen_random_colored(14, 16, 2, mix64(seed + 100));
    PipelineParams p;
    p.c = 1.0;
    const std::vector<int> S = find_color_hitting_set(g, 2, p, seed);
    const std::vector<int> F = representative_subgraph(g, S);
    std::vector<char> touched(g.n, 0);
    for (int id : F) {
      touched[g.edges[id].u] = 1;
      touched[g.edges[id].v] = 1;
    }
    std::vector<int> centers;
    for (int v : S)
      if (touched[v]) centers.push_back(v);
    const auto assignment = star_assignment(g, F, centers);
    const auto [cg, cm] = contract_stars(g, F, centers, assignment);

    // block sizes sum to |V(subgraph)|
    std::vector<long long> block_size(cg.n, 0);
    for (int v : cm.members) {
      REQUIRE(cm.block_of[v] >= 0);
      ++block_size[cm.block_of[v]];
    }
    CHECK(std::accumulate(block_size.begin(), block_size.end(), 0LL) ==
          static_cast<long long>(cm.members.size()));

    // contracted edges preserve their preimage endpoints' blocks
    for (const ContractedEdge& e : cg.edges) {
      const ColoredEdge& oe = g.edges[e.orig_edge];
      const int bu = cm.block_of[oe.u], bv = cm.block_of[oe.v];
      CHECK(((bu == e.u && bv == e.v) || (bu == e.v && bv == e.u)));
    }
  }
}
