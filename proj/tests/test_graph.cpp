#include "doctest.h"

#include "rainbow/cycle_search.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/io.hpp"
#include "test_util.hpp"

using namespace rainbow;
using testutil::thrown_kind;

TEST_CASE("build_colored_graph: rainbow triangle") {
  const ColoredGraph g = build_colored_graph(3, {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}});
  CHECK(g.n == 3);
  CHECK(g.K == 3);
  for (int c = 0; c < 3; ++c) CHECK(g.class_size(c) == 1);
  CHECK(g.incidence(0, 0) == 1);
  CHECK(g.incidence(0, 1) == 0);
  CHECK(g.incidence(2, 2) == 1);
}

TEST_CASE("build_colored_graph: rejects loops, parallels, negative ids") {
  CHECK(thrown_kind([] { build_colored_graph(2, {{0, 0, 0}}); }) == Err::loop_edge);
  CHECK(thrown_kind([] { build_colored_graph(3, {{0, 1, 0}, {1, 0, 1}}); }) == Err::parallel_edge);
  CHECK(thrown_kind([] { build_colored_graph(3, {{-1, 1, 0}}); }) == Err::negative_id);
  CHECK(thrown_kind([] { build_colored_graph(3, {{0, 1, -2}}); }) == Err::negative_id);
  CHECK(thrown_kind([] { build_colored_graph(2, {{0, 5, 0}}); }) == Err::out_of_range);
}

TEST_CASE("validate_classes") {
  const ColoredGraph tri = build_colored_graph(3, {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}});
  CHECK(validate_classes(tri, 1, 3));
  CHECK_FALSE(validate_classes(tri, 2, 3));
  CHECK_FALSE(validate_classes(tri, 1, 2));

  const ColoredGraph two = build_colored_graph(
      6, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 4, 1}, {4, 5, 1}, {5, 0, 1}});
  CHECK(validate_classes(two, 3, 2));
  CHECK_FALSE(validate_classes(two, 4, 2));
}

TEST_CASE("from_digraph: directed n-cycle becomes n singleton classes, rainbow girth n") {
  const int n = 7;
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) arcs.push_back({v, (v + 1) % n});
  const ColoredGraph g = from_digraph(build_digraph(n, arcs));
  CHECK(g.K == n);
  for (int c = 0; c < n; ++c) CHECK(g.class_size(c) == 1);
  const auto res = rainbow_girth_exact(g, {n, 1'000'000});
  REQUIRE(res.status == SearchStatus::found);
  CHECK(res.certificate->length() == n);
}

TEST_CASE("from_digraph: circulant(9,{1,2}) gives 9 classes of size 2") {
  const ColoredGraph g = from_digraph(gen_circulant_digraph(9, {1, 2}));
  CHECK(g.n == 9);
  CHECK(g.K == 9);
  for (int c = 0; c < 9; ++c) CHECK(g.class_size(c) == 2);
}

TEST_CASE("from_digraph: vertex without out-neighbors is rejected") {
  // 0 -> 1, 1 -> 0 is a digon, so use three vertices with one sink.
  CHECK(thrown_kind([] { from_digraph(build_digraph(3, {{0, 1}, {1, 2}})); }) ==
        Err::empty_out_neighborhood);
}

TEST_CASE("digraph build rejects digons and duplicate arcs") {
  CHECK(thrown_kind([] { build_digraph(2, {{0, 1}, {1, 0}}); }) == Err::digon_risk);
  CHECK(thrown_kind([] { build_digraph(2, {{0, 1}, {0, 1}}); }) == Err::digon_risk);
  CHECK(thrown_kind([] { build_digraph(2, {{1, 1}}); }) == Err::loop_edge);
}

TEST_CASE("serialize/parse round trip is the identity") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const ColoredGraph g = gen_random_colored(10, 8, 2, seed);
    const std::string text = serialize(g);
    const ColoredGraph back = parse_colored_graph(text);
    CHECK(back == g);
    CHECK(serialize(back) == text);
  }
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Digraph d = gen_random_min_outdeg(11, 3, seed);
    const std::string text = serialize(d);
    const Digraph back = parse_digraph(text);
    CHECK(back == d);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("parser accepts comments and rejects malformed headers") {
  const ColoredGraph g =
      parse_colored_graph("# comment\necg 1\n# another\nn 3 m 1 K 1\ne 0 1 0\n");
  CHECK(g.n == 3);
  CHECK(g.m() == 1);
  CHECK(thrown_kind([] { parse_colored_graph("weird\n"); }) == Err::io_error);
  CHECK(thrown_kind([] { parse_colored_graph("ecg 1\nn 3 m 1 K 5\ne 0 1 0\n"); }) == Err::io_error);
}

TEST_CASE("incidence counts match a direct recount") {
  const ColoredGraph g = gen_random_colored(12, 10, 3, 99);
  for (int v = 0; v < g.n; ++v) {
    for (int c = 0; c < g.K; ++c) {
      int direct = 0;
      for (auto [w, id] : g.adj[v])
        if (g.edges[id].color == c) ++direct;
      CHECK(g.incidence(v, c) == direct);
    }
  }
}

TEST_CASE("directed cycles map to rainbow cycles of the same length under from_digraph") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Digraph d = gen_random_min_outdeg(10, 2, seed);
    const ColoredGraph g = from_digraph(d);
    const auto cycles = testutil::enum_directed_cycles(d);
    REQUIRE(!cycles.empty());  // min out-degree 2 forces a cycle
    for (const auto& vc : cycles) {
      CycleCertificate cert;
      cert.vertices = vc;
      for (std::size_t i = 0; i < vc.size(); ++i) {
        const int id = testutil::edge_between(g, vc[i], vc[(i + 1) % vc.size()]);
        REQUIRE(id >= 0);
        cert.edge_ids.push_back(id);
      }
      cert.rainbow = true;
      CHECK(verify_rainbow_cycle(g, cert));
      CHECK(cert.length() == static_cast<int>(vc.size()));
    }
  }
}

TEST_CASE("certificate canonical form is stable and valid") {
  const ColoredGraph g = build_colored_graph(4, {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {3, 0, 3}});
  CycleCertificate c;
  c.vertices = {2, 1, 0, 3};
  c.edge_ids = {1, 0, 3, 2};
  CHECK(verify_cycle(g, c));
  canonicalize_cycle(c);
  CHECK(c.vertices[0] == 0);
  CHECK(c.vertices[1] < c.vertices.back());
  CHECK(verify_cycle(g, c));
}
