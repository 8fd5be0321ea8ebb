// Core data model: simple edge-colored graphs and simple digraphs.
//
// Vertex ids and color ids are dense 0-based integers. Instances are
// immutable after construction; every operation on them is a pure function,
// so values can be shared freely between threads.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rainbow/error.hpp"

namespace rainbow {

struct ColoredEdge {
  int u = 0;
  int v = 0;
  int color = 0;
};

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Simple undirected graph with an edge coloring b. K is the number of
// colors; class_index[i] lists the edge ids of b^-1(i). Per-(vertex,color)
// incidence counts are precomputed so they can be queried in O(1).
struct ColoredGraph {
  int n = 0;
  int K = 0;
  std::vector<ColoredEdge> edges;
  std::vector<std::vector<int>> class_index;               // color -> edge ids
  std::vector<std::vector<std::pair<int, int>>> adj;       // vertex -> (neighbor, edge id)
  std::vector<std::vector<std::pair<int, int>>> color_support;  // color -> (vertex, count)
  std::unordered_map<std::uint64_t, int> incidence_map;    // (vertex,color) -> count

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  long long class_size(int color) const { return static_cast<long long>(class_index[color].size()); }

  // Number of edges of the given color incident to v.
  int incidence(int v, int color) const {
    auto it = incidence_map.find((static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint32_t>(color));
    return it == incidence_map.end() ? 0 : it->second;
  }

  int other_end(int edge_id, int v) const {
    const ColoredEdge& e = edges[edge_id];
    return e.u == v ? e.v : e.u;
  }

  bool operator==(const ColoredGraph& o) const {
    if (n != o.n || K != o.K || edges.size() != o.edges.size()) return false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].u != o.edges[i].u || edges[i].v != o.edges[i].v ||
          edges[i].color != o.edges[i].color)
        return false;
    }
    return true;
  }
};

struct Arc {
  int u = 0;
  int v = 0;
};

// Simple digraph: no loops and at most one arc per unordered vertex pair,
// so in particular no digons.
struct Digraph {
  int n = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<std::pair<int, int>>> out_adj;  // vertex -> (head, arc id)

  int m() const { return static_cast<int>(arcs.size()); }
  int out_degree(int v) const { return static_cast<int>(out_adj[v].size()); }

  bool operator==(const Digraph& o) const {
    if (n != o.n || arcs.size() != o.arcs.size()) return false;
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if (arcs[i].u != o.arcs[i].u || arcs[i].v != o.arcs[i].v) return false;
    return true;
  }
};

// A closed walk claimed to be a cycle. vertices[i] -- vertices[i+1] (cyclically)
// must be joined by edge_ids[i]; for digraph certificates edge_ids are arc ids
// and the arc is vertices[i] -> vertices[i+1].
struct CycleCertificate {
  std::vector<int> vertices;
  std::vector<int> edge_ids;
  bool rainbow = false;

  int length() const { return static_cast<int>(edge_ids.size()); }
};

inline ColoredGraph build_colored_graph(int n, const std::vector<ColoredEdge>& edges) {
  if (n < 0) fail(Err::negative_id, "vertex count is negative");
  ColoredGraph g;
  g.n = n;
  g.edges = edges;
  g.adj.assign(n, {});
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  int max_color = -1;
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    const ColoredEdge& e = edges[id];
    if (e.u < 0 || e.v < 0 || e.color < 0) fail(Err::negative_id, "negative id in edge " + std::to_string(id));
    if (e.u >= n || e.v >= n) fail(Err::out_of_range, "vertex id out of range in edge " + std::to_string(id));
    if (e.u == e.v) fail(Err::loop_edge, "loop at vertex " + std::to_string(e.u));
    if (!seen.insert(pair_key(e.u, e.v)).second)
      fail(Err::parallel_edge, "parallel edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    max_color = std::max(max_color, e.color);
    g.adj[e.u].push_back({e.v, id});
    g.adj[e.v].push_back({e.u, id});
  }
  g.K = max_color + 1;
  g.class_index.assign(g.K, {});
  for (int id = 0; id < g.m(); ++id) g.class_index[edges[id].color].push_back(id);

  g.incidence_map.reserve(edges.size() * 2);
  for (const ColoredEdge& e : edges) {
    ++g.incidence_map[(static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.color)];
    ++g.incidence_map[(static_cast<std::uint64_t>(e.v) << 32) | static_cast<std::uint32_t>(e.color)];
  }
  g.color_support.assign(g.K, {});
  for (int c = 0; c < g.K; ++c) {
    std::unordered_map<int, int> cnt;
    for (int id : g.class_index[c]) {
      ++cnt[edges[id].u];
      ++cnt[edges[id].v];
    }
    g.color_support[c].assign(cnt.begin(), cnt.end());
    std::sort(g.color_support[c].begin(), g.color_support[c].end());
  }
  return g;
}

inline Digraph build_digraph(int n, const std::vector<Arc>& arcs) {
  if (n < 0) fail(Err::negative_id, "vertex count is negative");
  Digraph d;
  d.n = n;
  d.arcs = arcs;
  d.out_adj.assign(n, {});
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(arcs.size() * 2);
  for (int id = 0; id < static_cast<int>(arcs.size()); ++id) {
    const Arc& a = arcs[id];
    if (a.u < 0 || a.v < 0) fail(Err::negative_id, "negative id in arc " + std::to_string(id));
    if (a.u >= n || a.v >= n) fail(Err::out_of_range, "vertex id out of range in arc " + std::to_string(id));
    if (a.u == a.v) fail(Err::loop_edge, "loop arc at vertex " + std::to_string(a.u));
    if (!seen.insert(pair_key(a.u, a.v)).second)
      fail(Err::digon_risk, "digon or duplicate arc between " + std::to_string(a.u) + " and " + std::to_string(a.v));
    d.out_adj[a.u].push_back({a.v, id});
  }
  return d;
}

// True iff g has exactly K_required nonempty classes, they are the colors
// 0..K_required-1, and every class has at least min_size edges.
inline bool validate_classes(const ColoredGraph& g, long long min_size, int K_required) {
  if (g.K != K_required) return false;
  for (int c = 0; c < g.K; ++c)
    if (g.class_size(c) < std::max<long long>(min_size, 1)) return false;
  return true;
}

// Standard reduction from the directed setting: color class i becomes the
// star of v_i's out-edges. Requires every vertex to have at least one
// out-neighbor, so that no color class is empty.
inline ColoredGraph from_digraph(const Digraph& d) {
  for (int v = 0; v < d.n; ++v)
    if (d.out_degree(v) == 0)
      fail(Err::empty_out_neighborhood, "vertex " + std::to_string(v) + " has no out-neighbors");
  std::vector<ColoredEdge> edges;
  edges.reserve(d.arcs.size());
  for (int v = 0; v < d.n; ++v)
    for (auto [w, arc_id] : d.out_adj[v]) edges.push_back({v, w, v});
  return build_colored_graph(d.n, edges);
}

// Structural validity of a certificate against g: pairwise-distinct
// vertices joined cyclically by the listed edges, length >= 3.
inline bool verify_cycle(const ColoredGraph& g, const CycleCertificate& c) {
  const int len = c.length();
  if (len < 3 || static_cast<int>(c.vertices.size()) != len) return false;
  std::unordered_set<int> distinct(c.vertices.begin(), c.vertices.end());
  if (static_cast<int>(distinct.size()) != len) return false;
  for (int i = 0; i < len; ++i) {
    const int a = c.vertices[i];
    const int b = c.vertices[(i + 1) % len];
    if (a < 0 || a >= g.n || b < 0 || b >= g.n) return false;
    const int id = c.edge_ids[i];
    if (id < 0 || id >= g.m()) return false;
    const ColoredEdge& e = g.edges[id];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) return false;
  }
  std::unordered_set<int> edge_set(c.edge_ids.begin(), c.edge_ids.end());
  return static_cast<int>(edge_set.size()) == len;
}

inline bool verify_directed_cycle(const Digraph& d, const CycleCertificate& c) {
  const int len = c.length();
  if (len < 2 || static_cast<int>(c.vertices.size()) != len) return false;
  std::unordered_set<int> distinct(c.vertices.begin(), c.vertices.end());
  if (static_cast<int>(distinct.size()) != len) return false;
  for (int i = 0; i < len; ++i) {
    const int a = c.vertices[i];
    const int b = c.vertices[(i + 1) % len];
    const int id = c.edge_ids[i];
    if (id < 0 || id >= d.m()) return false;
    if (d.arcs[id].u != a || d.arcs[id].v != b) return false;
  }
  return true;
}

// Canonical form: rotate so the smallest vertex comes first, then orient
// toward its smaller neighbor. Makes certificates reproducible.
inline void canonicalize_cycle(CycleCertificate& c) {
  const int len = c.length();
  if (len < 3) return;
  int pos = 0;
  for (int i = 1; i < len; ++i)
    if (c.vertices[i] < c.vertices[pos]) pos = i;
  std::rotate(c.vertices.begin(), c.vertices.begin() + pos, c.vertices.end());
  std::rotate(c.edge_ids.begin(), c.edge_ids.begin() + pos, c.edge_ids.end());
  if (c.vertices[1] > c.vertices[len - 1]) {
    std::reverse(c.vertices.begin() + 1, c.vertices.end());
    std::reverse(c.edge_ids.begin(), c.edge_ids.end());
  }
}

}  // namespace rainbow
