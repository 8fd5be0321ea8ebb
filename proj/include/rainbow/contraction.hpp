// Star contraction of a representative subgraph and the lift that turns a
// cycle of the contracted graph back into a cycle of the original graph.
//
// The representative subgraph is given as a set of edge ids of g, every one
// incident to a center. Each non-center vertex is assigned to an adjacent
// center; the edge realizing that assignment is the vertex's tree edge and
// is consumed by the contraction. Everything else maps to a contracted
// edge, a loop, or a member of a parallel pair; the contracted graph is
// explicitly allowed to be non-simple and reports those degeneracies.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "rainbow/cycle_search.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

struct ContractedEdge {
  int u = 0;          // contracted endpoint ids; u == v marks a loop
  int v = 0;
  int color = 0;
  int orig_edge = 0;  // edge id in the original graph
};

struct ContractedGraph {
  int n = 0;
  std::vector<ContractedEdge> edges;
  std::vector<int> loops;                          // indices into edges
  std::vector<std::pair<int, int>> parallel_pairs; // index pairs into edges
  bool simple() const { return loops.empty() && parallel_pairs.empty(); }
};

struct ContractionMap {
  std::vector<int> block_of;      // original vertex -> contracted id (-1 outside subgraph)
  std::vector<int> center_of;     // contracted id -> original center vertex
  std::vector<int> tree_edge_of;  // original vertex -> star edge id (-1 for centers / outside)
  std::vector<int> members;       // all subgraph vertices

  long long block_count() const { return static_cast<long long>(center_of.size()); }
};

// Assign every non-center vertex of the representative subgraph to its
// adjacent center of smallest index. Returns a full-size vector; entries are
// the chosen center, the vertex itself for centers, -1 outside the subgraph.
inline std::vector<int> star_assignment(const ColoredGraph& g, const std::vector<int>& rep_edges,
                                        const std::vector<int>& centers) {
  std::vector<char> is_center(g.n, 0);
  for (int c : centers) is_center[c] = 1;
  std::vector<int> assignment(g.n, -1);
  for (int c : centers) assignment[c] = c;
  std::vector<std::vector<int>> incident(g.n);
  for (int id : rep_edges) {
    incident[g.edges[id].u].push_back(id);
    incident[g.edges[id].v].push_back(id);
  }
  for (int v = 0; v < g.n; ++v) {
    if (is_center[v] || incident[v].empty()) continue;
    int best = -1;
    for (int id : incident[v]) {
      const int w = g.other_end(id, v);
      if (is_center[w] && (best < 0 || w < best)) best = w;
    }
    if (best < 0) fail(Err::unassigned_vertex, "vertex " + std::to_string(v) + " has no adjacent center");
    assignment[v] = best;
  }
  return assignment;
}

inline std::pair<ContractedGraph, ContractionMap> contract_stars(const ColoredGraph& g,
                                                                 const std::vector<int>& rep_edges,
                                                                 const std::vector<int>& centers,
                                                                 const std::vector<int>& assignment) {
  ContractionMap cm;
  cm.block_of.assign(g.n, -1);
  cm.tree_edge_of.assign(g.n, -1);

  std::vector<int> sorted_centers = centers;
  std::sort(sorted_centers.begin(), sorted_centers.end());
  sorted_centers.erase(std::unique(sorted_centers.begin(), sorted_centers.end()), sorted_centers.end());
  cm.center_of = sorted_centers;
  for (int i = 0; i < static_cast<int>(sorted_centers.size()); ++i) cm.block_of[sorted_centers[i]] = i;

  std::vector<char> in_sub(g.n, 0);
  for (int id : rep_edges) {
    in_sub[g.edges[id].u] = 1;
    in_sub[g.edges[id].v] = 1;
  }
  for (int c : sorted_centers) in_sub[c] = 1;
  for (int v = 0; v < g.n; ++v)
    if (in_sub[v]) cm.members.push_back(v);

  // Locate each non-center vertex's tree edge: the representative edge to
  // its assigned center. The underlying graph is simple, so it is unique.
  std::map<std::pair<int, int>, int> rep_by_pair;
  for (int id : rep_edges) {
    const ColoredEdge& e = g.edges[id];
    rep_by_pair[{std::min(e.u, e.v), std::max(e.u, e.v)}] = id;
  }
  for (int v : cm.members) {
    if (cm.block_of[v] >= 0) continue;  // center
    const int c = (v < static_cast<int>(assignment.size())) ? assignment[v] : -1;
    if (c < 0) fail(Err::unassigned_vertex, "vertex " + std::to_string(v) + " is not assigned to a center");
    if (c >= g.n || cm.block_of[c] < 0 || assignment[c] != c)
      fail(Err::non_adjacent_assignment, "vertex " + std::to_string(v) + " assigned to non-center " + std::to_string(c));
    auto it = rep_by_pair.find({std::min(v, c), std::max(v, c)});
    if (it == rep_by_pair.end())
      fail(Err::non_adjacent_assignment,
           "vertex " + std::to_string(v) + " not adjacent to center " + std::to_string(c) + " in the subgraph");
    cm.block_of[v] = cm.block_of[c];
    cm.tree_edge_of[v] = it->second;
  }

  ContractedGraph cg;
  cg.n = static_cast<int>(sorted_centers.size());
  std::vector<char> is_tree(g.m(), 0);
  for (int v : cm.members)
    if (cm.tree_edge_of[v] >= 0) is_tree[cm.tree_edge_of[v]] = 1;
  for (int id : rep_edges) {
    if (is_tree[id]) continue;
    const ColoredEdge& e = g.edges[id];
    cg.edges.push_back({cm.block_of[e.u], cm.block_of[e.v], e.color, id});
  }
  std::map<std::pair<int, int>, int> first_between;
  for (int i = 0; i < static_cast<int>(cg.edges.size()); ++i) {
    ContractedEdge& e = cg.edges[i];
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) {
      cg.loops.push_back(i);
      continue;
    }
    auto [it, fresh] = first_between.insert({{e.u, e.v}, i});
    if (!fresh) cg.parallel_pairs.push_back({it->second, i});
  }
  return {cg, cm};
}

namespace detail {

// Path from a to b inside one block: empty, one tree edge when either end is
// the center, otherwise two tree edges through the center.
inline void append_block_path(const ContractionMap& cm, int a, int b, std::vector<int>& verts,
                              std::vector<int>& edge_ids) {
  if (a == b) return;
  const int center = cm.center_of[cm.block_of[a]];
  if (cm.block_of[b] != cm.block_of[a])
    fail(Err::lift_failure, "block path endpoints in different blocks");
  auto push = [&](int to, int via_vertex) {
    const int id = cm.tree_edge_of[via_vertex];
    if (id < 0) fail(Err::lift_failure, "missing tree edge during lift");
    verts.push_back(to);
    edge_ids.push_back(id);
  };
  if (a == center) {
    push(b, b);
  } else if (b == center) {
    push(b, a);
  } else {
    push(center, a);
    push(b, b);
  }
}

}  // namespace detail

// Lift a cycle of the contracted graph (including the degenerate length-1
// loop and length-2 parallel-pair cases) to a rainbow cycle of g with at
// most 3x the edges. Any inconsistency is a bug in the caller's pipeline
// and is surfaced as lift_failure rather than patched over.
inline CycleCertificate lift_cycle(const ContractionMap& cm, const ColoredGraph& g,
                                   const ContractedGraph& cg, const CycleCertificate& contracted) {
  const int len = contracted.length();
  if (len < 1 || static_cast<int>(contracted.vertices.size()) != len)
    fail(Err::lift_failure, "malformed contracted certificate");

  // Entry/exit endpoints of every hop, oriented along the walk.
  std::vector<int> from(len), to(len);
  for (int i = 0; i < len; ++i) {
    const ContractedEdge& e = cg.edges[contracted.edge_ids[i]];
    const int bu = contracted.vertices[i];
    const int bv = contracted.vertices[(i + 1) % len];
    const ColoredEdge& oe = g.edges[e.orig_edge];
    if (e.u == e.v) {  // loop hop: stay in the block, pick a fixed orientation
      if (bu != e.u || bv != e.u) fail(Err::lift_failure, "loop hop leaves its block");
      from[i] = oe.u;
      to[i] = oe.v;
    } else if (cm.block_of[oe.u] == bu && cm.block_of[oe.v] == bv) {
      from[i] = oe.u;
      to[i] = oe.v;
    } else if (cm.block_of[oe.v] == bu && cm.block_of[oe.u] == bv) {
      from[i] = oe.v;
      to[i] = oe.u;
    } else {
      fail(Err::lift_failure, "contracted edge does not join the walk's blocks");
    }
  }

  CycleCertificate lifted;
  for (int i = 0; i < len; ++i) {
    const int enter = to[(i + len - 1) % len];  // where the walk arrived in this block
    if (i == 0) lifted.vertices.push_back(enter);
    detail::append_block_path(cm, enter, from[i], lifted.vertices, lifted.edge_ids);
    if (i + 1 < len) lifted.vertices.push_back(to[i]);
    lifted.edge_ids.push_back(cg.edges[contracted.edge_ids[i]].orig_edge);
  }
  lifted.rainbow = true;

  if (lifted.length() > 3 * len) fail(Err::lift_failure, "lift exceeded the 3x length bound");
  if (!verify_rainbow_cycle(g, lifted)) fail(Err::lift_failure, "lifted walk is not a rainbow cycle");
  canonicalize_cycle(lifted);
  return lifted;
}

}  // namespace rainbow
