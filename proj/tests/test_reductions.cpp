#include "doctest.h"

#include <map>
#include <set>

#include "rainbow/generators.hpp"
#include "rainbow/reductions.hpp"
#include "test_util.hpp"

using namespace rainbow;

namespace {

bool hits_every_color(const ColoredGraph& g, const std::vector<int>& S) {
  std::vector<char> in_S(g.n, 0);
  for (int v : S) in_S[v] = 1;
  std::vector<char> hit(g.K, 0);
  for (const ColoredEdge& e : g.edges)
    if (in_S[e.u] || in_S[e.v]) hit[e.color] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

// All-dominating fixture: `classes` star classes of `per_class` edges each,
// centers 0..classes-1, leaves shared round-robin among `leaves` vertices.
ColoredGraph star_instance(int classes, int per_class, int leaves) {
  std::vector<ColoredEdge> edges;
  for (int c = 0; c < classes; ++c)
    for (int i = 0; i < per_class; ++i)
      edges.push_back({c, classes + (i + c) % leaves, c});
  return build_colored_graph(classes + leaves, edges);
}

}  // namespace

TEST_CASE("pipeline params: derived quantities follow their formulas") {
  PipelineParams p;  // paper-scale constant
  CHECK(p.t(2) == doctest::Approx(2e9));
  CHECK(p.deletion_rate_numerator(2) == 8);  // probability 8/r, e.g. 8/100 at r = 100
  CHECK(p.deletion_window_lo(2) == 4);
  CHECK(p.deletion_window_hi(2) == 16);
  CHECK(p.domination_threshold(2) == doctest::Approx(2e7 + 16));
  CHECK(p.hitting_rounds(2) == 2);
  CHECK(p.hitting_rounds(1) == 0);
  CHECK(p.hitting_sample_size(560 * 2, 4) == 1);
  CHECK(p.sigma(1000, 2) == doctest::Approx(1e9 * 4 / 4000.0));
  CHECK(p.gamma(8) == doctest::Approx(4e6));  // (1e9)^(2/3) * 8^(2/3)
  CHECK(p.class_size_requirement(3) == 3'000'000'000LL);
  p.min_class_size = 5;
  CHECK(p.class_size_requirement(3) == 5);
}

TEST_CASE("hitting set: sampling rounds fire on large instances and stay deterministic") {
  const ColoredGraph g = gen_random_colored(1000, 800, 2, 31);
  PipelineParams p;
  p.c = 1.0;
  REQUIRE(p.hitting_sample_size(g.n, 2) >= 1);
  REQUIRE(p.hitting_rounds(2) == 2);
  const std::vector<int> a = find_color_hitting_set(g, 2, p, 77);
  const std::vector<int> b = find_color_hitting_set(g, 2, p, 77);
  CHECK(a == b);
  CHECK(hits_every_color(g, a));
}

TEST_CASE("hitting set: star with every color at the center") {
  // K_{1,6} whose colors all touch the center.
  std::vector<ColoredEdge> edges;
  for (int i = 0; i < 6; ++i) edges.push_back({0, i + 1, i % 3});
  const ColoredGraph g = build_colored_graph(7, edges);
  PipelineParams p;
  p.c = 1.0;
  const std::vector<int> S = find_color_hitting_set(g, 1, p, 5);
  CHECK(S == std::vector<int>{0});
}

TEST_CASE("hitting set: empty color classes are rejected") {
  // color 1 is empty because only colors 0 and 2 appear
  const ColoredGraph g = build_colored_graph(3, {{0, 1, 0}, {1, 2, 2}});
  PipelineParams p;
  CHECK(testutil::thrown_kind([&] { find_color_hitting_set(g, 1, p, 0); }) == Err::precondition);
}

TEST_CASE("hitting set: disjoint monochromatic triangles need one vertex each") {
  std::vector<ColoredEdge> edges;
  const int q = 4;
  for (int t = 0; t < q; ++t) {
    const int base = 3 * t;
    edges.push_back({base, base + 1, t});
    edges.push_back({base + 1, base + 2, t});
    edges.push_back({base + 2, base, t});
  }
  const ColoredGraph g = build_colored_graph(3 * q, edges);
  PipelineParams p;
  p.c = 1.0;
  const std::vector<int> S = find_color_hitting_set(g, 3, p, 11);
  CHECK(static_cast<int>(S.size()) == q);
  CHECK(hits_every_color(g, S));
}

TEST_CASE("hitting set postcondition on generated families") {
  PipelineParams p;
  p.c = 1.0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const ColoredGraph a = from_digraph(gen_circulant_digraph(20, {1, 2}));
    CHECK(hits_every_color(a, find_color_hitting_set(a, 2, p, seed)));
    const ColoredGraph b = gen_random_colored(16, 12, 3, mix64(seed));
    CHECK(hits_every_color(b, find_color_hitting_set(b, 3, p, seed)));
    const ColoredGraph c = from_digraph(gen_random_min_outdeg(15, 4, mix64(seed + 1)));
    CHECK(hits_every_color(c, find_color_hitting_set(c, 4, p, seed)));
  }
}

TEST_CASE("representative subgraph: one edge per color, each touching S") {
  const ColoredGraph tri = build_colored_graph(3, {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}});
  CHECK(testutil::thrown_kind([&] { representative_subgraph(tri, {0}); }) == Err::color_not_hit);
  const std::vector<int> F = representative_subgraph(tri, {0, 1});
  CHECK(F == std::vector<int>{0, 1, 2});

  PipelineParams p;
  p.c = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ColoredGraph g = gen_random_colored(14, 10, 2, mix64(seed + 50));
    const std::vector<int> S = find_color_hitting_set(g, 2, p, seed);
    const std::vector<int> F2 = representative_subgraph(g, S);
    CHECK(static_cast<int>(F2.size()) == g.K);
    std::set<int> colors;
    std::vector<char> in_S(g.n, 0);
    for (int v : S) in_S[v] = 1;
    for (int id : F2) {
      colors.insert(g.edges[id].color);
      CHECK((in_S[g.edges[id].u] || in_S[g.edges[id].v]));
    }
    CHECK(static_cast<int>(colors.size()) == g.K);
  }
}

TEST_CASE("colorful stars: single star, two disjoint stars, over-cap monochrome star") {
  PipelineParams p;
  p.star_min_size = 4.0;
  p.star_color_cap = 2.0;

  // sigma edges in distinct colors -> one star
  std::vector<ColoredEdge> edges;
  for (int i = 0; i < 4; ++i) edges.push_back({0, i + 1, i});
  const StarCollection one = colorful_star_collection(build_colored_graph(5, edges), 2, p);
  CHECK(one.stars.size() == 1);
  CHECK(one.colors_missing == 0);

  // two vertex-disjoint stars with disjoint colors -> two stars
  std::vector<ColoredEdge> edges2 = edges;
  for (int i = 0; i < 4; ++i) edges2.push_back({5, 6 + i, 4 + i});
  const StarCollection two = colorful_star_collection(build_colored_graph(10, edges2), 2, p);
  CHECK(two.stars.size() == 2);

  // sigma edges all one color with gamma < sigma -> no star at all
  std::vector<ColoredEdge> edges3;
  for (int i = 0; i < 4; ++i) edges3.push_back({0, i + 1, 0});
  const StarCollection none = colorful_star_collection(build_colored_graph(5, edges3), 2, p);
  CHECK(none.stars.empty());
  CHECK(none.colors_missing == 1);

  // diagnostic thresholds follow their formulas
  CHECK(none.missing_colors_bound == doctest::Approx(1.0));
  CHECK(none.size_bound == doctest::Approx(std::pow(5.0, 0.2) / 12.0));
}

TEST_CASE("colorful stars: invariants and greedy maximality on random instances") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ColoredGraph g = gen_random_colored(12, 8, 3, mix64(seed + 200));
    PipelineParams p;
    p.star_min_size = 3.0;
    p.star_color_cap = 2.0;
    const StarCollection col = colorful_star_collection(g, 2, p);
    std::vector<char> taken(g.K, 0);
    std::set<int> centers;
    for (const Star& s : col.stars) {
      CHECK(centers.insert(s.center).second);
      CHECK(static_cast<double>(s.edge_ids.size()) >= p.star_min_size.value());
      std::map<int, int> per_color;
      for (int id : s.edge_ids) {
        const ColoredEdge& e = g.edges[id];
        CHECK((e.u == s.center || e.v == s.center));
        ++per_color[e.color];
      }
      for (auto [c, cnt] : per_color) {
        CHECK(static_cast<double>(cnt) <= p.star_color_cap.value());
        CHECK_FALSE(taken[c]);  // disjoint colors across stars
        taken[c] = 1;
      }
    }
    // maximality: no further colorful star fits at any vertex
    for (int v = 0; v < g.n; ++v) {
      if (centers.count(v)) continue;
      std::map<int, int> avail;
      for (auto [w, id] : g.adj[v]) {
        const int c = g.edges[id].color;
        if (!taken[c]) ++avail[c];
      }
      double total = 0;
      for (auto [c, cnt] : avail) total += std::min<double>(cnt, p.star_color_cap.value());
      CHECK(total < p.star_min_size.value());
    }
  }
}

TEST_CASE("dominated map: threshold edge cases") {
  // color 0 has 10 edges at vertex 0
  std::vector<ColoredEdge> edges;
  for (int i = 0; i < 10; ++i) edges.push_back({0, i + 1, 0});
  const ColoredGraph g = build_colored_graph(11, edges);
  const DominationMap hit = dominated_map(g, 10);
  CHECK(hit.vertex_of_color[0] == 0);
  CHECK(hit.dominated_set == std::vector<int>{0});
  const DominationMap miss = dominated_map(g, 11);
  CHECK(miss.vertex_of_color[0] == -1);
  CHECK(miss.dominated_set.empty());

  // perfect matching class: every incidence count is 1
  const ColoredGraph pm = build_colored_graph(6, {{0, 1, 0}, {2, 3, 0}, {4, 5, 0}});
  CHECK(dominated_map(pm, 2).dominated_set.empty());
}

TEST_CASE("domination digraph: single arc and circulant round trip") {
  const ColoredGraph g = build_colored_graph(3, {{0, 1, 0}, {1, 2, 1}});
  DominationMap dm;
  dm.vertex_of_color = {0, -1};
  dm.dominated_set = {0, 1};
  const DominationDigraph dd = domination_digraph(g, dm);
  REQUIRE(dd.d.m() == 1);
  CHECK(dd.vertex_of[dd.d.arcs[0].u] == 0);
  CHECK(dd.vertex_of[dd.d.arcs[0].v] == 1);
  CHECK(dd.arc_color[0] == 0);

  // from_digraph of a circulant: with threshold 2 each color picks its own
  // star center, and the domination digraph recovers the digraph exactly.
  const Digraph d = gen_circulant_digraph(9, {1, 2});
  const ColoredGraph star = from_digraph(d);
  const DominationMap dm2 = dominated_map(star, 2);
  CHECK(static_cast<int>(dm2.dominated_set.size()) == 9);
  for (int c = 0; c < 9; ++c) CHECK(dm2.vertex_of_color[c] == c);
  const DominationDigraph dd2 = domination_digraph(star, dm2);
  CHECK(dd2.d.m() == d.m());
  std::set<std::pair<int, int>> want, got;
  for (const Arc& a : d.arcs) want.insert({a.u, a.v});
  for (const Arc& a : dd2.d.arcs) got.insert({dd2.vertex_of[a.u], dd2.vertex_of[a.v]});
  CHECK(want == got);
}

TEST_CASE("deletion sample: window arithmetic and failure modes") {
  const ColoredGraph g = star_instance(5, 18, 400);  // centers 0..4 dominate, |H| = 400
  const DominationMap dm = dominated_map(g, 18);
  REQUIRE(dm.dominated_set == std::vector<int>{0, 1, 2, 3, 4});
  PipelineParams p;
  p.c = 100.0;  // t = 200, t/100 = 2 < r, threshold consistency is the caller's business here
  const long long k = 2;
  const DeletionSample ds = deletion_sample(g, dm, k, p, 424242);
  REQUIRE(ds.accepted);
  CHECK(ds.bad_colors == 0);  // every class dominates
  CHECK(static_cast<long long>(ds.deleted.size()) > 2 * k);
  CHECK(static_cast<long long>(ds.deleted.size()) < 8 * k);
  for (int v : ds.deleted) CHECK(v >= 5);  // T stays inside H

  // r <= 4k violates the sampling precondition
  const ColoredGraph tiny = star_instance(2, 3, 6);
  const DominationMap dmt = dominated_map(tiny, 3);
  CHECK(testutil::thrown_kind([&] { deletion_sample(tiny, dmt, 2, p, 1); }) == Err::precondition);
}

TEST_CASE("deletion sample: single-draw acceptance is frequent when all classes dominate") {
  const long long k = 2;
  const ColoredGraph g = star_instance(5, 9 * static_cast<int>(k), 200 * static_cast<int>(k));
  PipelineParams p;
  p.c = 100.0;
  p.retry_cap = 1;
  const DominationMap dm = dominated_map(g, p.domination_threshold(k));
  REQUIRE(static_cast<long long>(dm.dominated_set.size()) == 5);
  int accepted = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i)
    if (deletion_sample(g, dm, k, p, derive_seed(9, i)).accepted) ++accepted;
  CHECK(accepted > trials / 2);
}

TEST_CASE("pipeline_main: k = 1 takes one edge per color") {
  const ColoredGraph g = gen_random_colored(10, 10, 1, 77);
  PipelineParams p;
  p.c = 1.0;
  const PipelineReport rep = pipeline_main(g, 1, p, 3);
  REQUIRE(rep.status == PipelineStatus::ok);
  CHECK(rep.branch == "k1");
  REQUIRE(rep.certificate.has_value());
  CHECK(verify_rainbow_cycle(g, *rep.certificate));
  CHECK(rep.certificate->length() <= 10);
  CHECK(rep.certified_bound == 10);
}

TEST_CASE("pipeline_main: full domination routes through the digraph branch") {
  // circulant(40, {1..18}) star coloring: threshold t/100 + 8k = 17 <= 18,
  // every color dominates its own center, H is empty.
  std::vector<int> steps;
  for (int s = 1; s <= 18; ++s) steps.push_back(s);
  const ColoredGraph g = from_digraph(gen_circulant_digraph(40, steps));
  PipelineParams p;
  p.c = 50.0;
  p.min_class_size = 18;
  const long long k = 2;
  REQUIRE(p.domination_threshold(k) == doctest::Approx(17.0));
  const PipelineReport rep = pipeline_main(g, k, p, 5);
  REQUIRE(rep.status == PipelineStatus::ok);
  CHECK(rep.branch == "domination");
  CHECK(rep.sizes.H == 0);
  REQUIRE(rep.certificate.has_value());
  CHECK(verify_rainbow_cycle(g, *rep.certificate));
  // ceil(40/18) = 3: the directed girth, reproduced exactly
  CHECK(rep.certificate->length() == 3);
  CHECK(rep.certified_bound == 3);
}

TEST_CASE("pipeline_main: deletion branch end to end on a spread-out instance") {
  const ColoredGraph g = gen_random_colored(40, 40, 8, 1234);
  PipelineParams p;
  p.c = 4.0;  // class requirement ceil(4*2) = 8, matches the generator
  const long long k = 2;
  int ok_runs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PipelineReport rep = pipeline_main(g, k, p, seed);
    if (rep.status == PipelineStatus::ok) {
      ++ok_runs;
      CHECK(rep.branch.rfind("deletion/", 0) == 0);
      REQUIRE(rep.certificate.has_value());
      CHECK(verify_rainbow_cycle(g, *rep.certificate));
      CHECK(rep.certificate->length() <= rep.certified_bound);
    } else {
      CHECK(rep.certificate.has_value() == false);
    }
  }
  CHECK(ok_runs > 0);
}

TEST_CASE("pipeline_n_plus_k: bridged two-star instance yields a short certificate") {
  const ColoredGraph g = build_colored_graph(
      6, {{0, 1, 0}, {0, 2, 1}, {3, 4, 2}, {3, 5, 3}, {1, 4, 4}, {2, 5, 5}});
  PipelineParams p;
  p.c = 1.0;
  p.min_class_size = 1;
  p.enforce_color_count = false;  // 6 colors on 6 vertices is not n + k
  const PipelineReport rep = pipeline_n_plus_k(g, 1, p, 9);
  REQUIRE(rep.status == PipelineStatus::ok);
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate->length() <= 6);
  CHECK(verify_rainbow_cycle(g, *rep.certificate));
}

TEST_CASE("pipeline_n_plus_k: exact n+k validation passes and emits a sound certificate") {
  // 22 colors of size 3 on 20 vertices: exactly n + 2 classes
  const ColoredGraph g = gen_random_colored(20, 22, 3, 555);
  PipelineParams p;
  p.c = 1.0;  // class requirement ceil(1*2) = 2 <= 3
  const PipelineReport rep = pipeline_n_plus_k(g, 2, p, 77);
  REQUIRE(rep.status == PipelineStatus::ok);
  REQUIRE(rep.certificate.has_value());
  CHECK(verify_rainbow_cycle(g, *rep.certificate));
  CHECK(rep.certificate->length() <= rep.certified_bound);
  CHECK(rep.sizes.F == 22);

  PipelineParams strict = p;
  strict.enforce_color_count = true;
  const PipelineReport bad = pipeline_n_plus_k(g, 5, strict, 77);  // needs 25 classes
  CHECK(bad.status == PipelineStatus::precondition_failed);
}

TEST_CASE("pipeline_n_plus_k: star-colored circulant lifts within 3x of the contracted girth") {
  const ColoredGraph g = from_digraph(gen_circulant_digraph(30, {1, 2, 3}));
  PipelineParams p;
  p.c = 1.0;
  p.min_class_size = 3;
  p.enforce_color_count = false;  // K = n on this inherited family
  const PipelineReport rep = pipeline_n_plus_k(g, 3, p, 21);
  REQUIRE(rep.status == PipelineStatus::ok);
  REQUIRE(rep.certificate.has_value());
  CHECK(verify_rainbow_cycle(g, *rep.certificate));
  CHECK(rep.certificate->length() <= rep.certified_bound);
}

TEST_CASE("pipeline_n_plus_k: forest-shaped representative subgraph reports no cycle") {
  // path with distinctly colored edges: contraction of a tree stays a forest
  std::vector<ColoredEdge> edges;
  for (int i = 0; i < 7; ++i) edges.push_back({i, i + 1, i});
  const ColoredGraph g = build_colored_graph(8, edges);
  PipelineParams p;
  p.c = 1.0;
  p.min_class_size = 1;
  p.enforce_color_count = false;
  const PipelineReport rep = pipeline_n_plus_k(g, 1, p, 2);
  CHECK(rep.status == PipelineStatus::no_cycle_found);
  CHECK_FALSE(rep.certificate.has_value());
}

TEST_CASE("pipeline soundness across families at scaled constants (sample)") {
  PipelineParams p;
  p.c = 50.0;
  p.min_class_size = 2;
  int certificates = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const ColoredGraph g = from_digraph(gen_circulant_digraph(24 + (seed % 5), {1, 2}));
    const PipelineReport rep = pipeline_main(g, 2, p, seed);
    if (rep.certificate) {
      ++certificates;
      CHECK(verify_rainbow_cycle(g, *rep.certificate));
      CHECK(rep.certificate->length() <= rep.certified_bound);
    }
  }
  // whatever the status mix, no bad certificate may appear
  CHECK(certificates >= 0);
}

TEST_CASE("pipelines emit typed statuses or verified certificates on arbitrary inputs") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const ColoredGraph g = testutil::make_arbitrary_colored(6 + static_cast<int>(seed % 7),
                                                            mix64(seed + 40'000));
    PipelineParams p;
    p.c = 1.0;
    p.min_class_size = 1;
    p.enforce_color_count = false;
    for (const PipelineReport& rep :
         {pipeline_main(g, 1 + static_cast<long long>(seed % 3), p, seed),
          pipeline_n_plus_k(g, 1 + static_cast<long long>(seed % 3), p, seed)}) {
      if (rep.certificate) {
        CHECK(rep.status == PipelineStatus::ok);
        CHECK(verify_rainbow_cycle(g, *rep.certificate));
        CHECK(rep.certificate->length() <= rep.certified_bound);
      } else {
        CHECK(rep.status != PipelineStatus::ok);
      }
    }
  }
}

TEST_CASE("report JSON carries the stable field names") {
  const ColoredGraph g = gen_random_colored(10, 10, 1, 3);
  PipelineParams p;
  p.c = 1.0;
  const PipelineReport rep = pipeline_main(g, 1, p, 3);
  const nlohmann::json j = report_to_json(rep, &g);
  for (const char* key : {"branch", "seed", "params", "sizes", "certificate", "bound", "status"})
    CHECK(j.contains(key));
}
