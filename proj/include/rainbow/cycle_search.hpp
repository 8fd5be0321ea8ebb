// Exact girth, directed girth and rainbow girth, plus a factorial-time
// enumeration oracle used to cross-validate the exact searcher.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

struct SearchLimits {
  int max_len = 20;
  long long node_budget = 100'000'000;
};

namespace detail {

// BFS distances from s over an undirected edge list.
inline void bfs_dist(int n, const std::vector<std::vector<std::pair<int, int>>>& adj, int s,
                     std::vector<int>& dist, std::vector<int>& parent_edge,
                     std::vector<int>& parent) {
  dist.assign(n, -1);
  parent.assign(n, -1);
  parent_edge.assign(n, -1);
  std::queue<int> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (auto [w, id] : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        parent_edge[w] = id;
        q.push(w);
      }
    }
  }
}

}  // namespace detail

// Exact girth of a simple undirected graph given as an edge list. BFS from
// every vertex; every non-tree edge closes a walk through the root which is
// trimmed at the deepest common ancestor to a genuine simple cycle. The
// minimum over all roots and edges is the girth.
inline std::optional<CycleCertificate> undirected_girth_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    adj[edges[id].first].push_back({edges[id].second, id});
    adj[edges[id].second].push_back({edges[id].first, id});
  }
  std::optional<CycleCertificate> best;
  int best_len = n + 1;
  std::vector<int> dist, parent, parent_edge;
  for (int s = 0; s < n && best_len > 3; ++s) {
    detail::bfs_dist(n, adj, s, dist, parent_edge, parent);
    for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
      const int u = edges[id].first, w = edges[id].second;
      if (dist[u] < 0 || dist[w] < 0) continue;
      if (parent[u] == w || parent[w] == u) continue;  // tree edge
      if (dist[u] + dist[w] + 1 >= best_len) continue;
      // Root paths u->s and w->s; cut at the deepest shared vertex.
      std::vector<int> pu, pw;
      for (int x = u; x != -1; x = parent[x]) pu.push_back(x);
      for (int x = w; x != -1; x = parent[x]) pw.push_back(x);
      int i = static_cast<int>(pu.size()) - 1, j = static_cast<int>(pw.size()) - 1;
      while (i > 0 && j > 0 && pu[i - 1] == pw[j - 1]) { --i; --j; }
      // Cycle: pu[i..0] joined to pw[0..j] by edge id; pu[i] == pw[j] is the pivot.
      CycleCertificate c;
      for (int a = i; a >= 1; --a) {
        c.vertices.push_back(pu[a]);
        c.edge_ids.push_back(parent_edge[pu[a - 1]]);
      }
      c.vertices.push_back(pu[0]);
      c.edge_ids.push_back(id);
      for (int b = 0; b < j; ++b) {
        c.vertices.push_back(pw[b]);
        c.edge_ids.push_back(parent_edge[pw[b]]);
      }
      if (c.length() < best_len && c.length() >= 3) {
        canonicalize_cycle(c);
        best_len = c.length();
        best = c;
        if (best_len == 3) break;
      }
    }
  }
  return best;
}

inline std::optional<CycleCertificate> undirected_girth(const ColoredGraph& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (const ColoredEdge& e : g.edges) edges.push_back({e.u, e.v});
  return undirected_girth_edges(g.n, edges);
}

// Exact directed girth: BFS out of every vertex, close with an in-arc of the
// root. Shortest closed walk through the root is automatically simple.
inline std::optional<CycleCertificate> directed_girth(const Digraph& d) {
  std::vector<std::vector<std::pair<int, int>>> in_adj(d.n);
  for (int id = 0; id < d.m(); ++id) in_adj[d.arcs[id].v].push_back({d.arcs[id].u, id});
  std::optional<CycleCertificate> best;
  int best_len = d.n + 1;
  std::vector<int> dist(d.n), parent(d.n), parent_arc(d.n);
  for (int s = 0; s < d.n && best_len > 3; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (dist[u] + 1 >= best_len) continue;
      for (auto [w, id] : d.out_adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          parent_arc[w] = id;
          q.push(w);
        }
      }
    }
    for (auto [u, id] : in_adj[s]) {
      if (dist[u] < 0 || dist[u] + 1 >= best_len) continue;
      CycleCertificate c;
      std::vector<int> path;
      for (int x = u; x != s; x = parent[x]) path.push_back(x);
      path.push_back(s);
      std::reverse(path.begin(), path.end());  // s .. u
      c.vertices = path;
      for (std::size_t i = 1; i < path.size(); ++i) c.edge_ids.push_back(parent_arc[path[i]]);
      c.edge_ids.push_back(id);
      best_len = c.length();
      best = c;
    }
  }
  return best;
}

// True iff c is a genuine cycle of g whose edge colors are pairwise distinct.
inline bool verify_rainbow_cycle(const ColoredGraph& g, const CycleCertificate& c) {
  if (!verify_cycle(g, c)) return false;
  std::unordered_set<int> colors;
  for (int id : c.edge_ids)
    if (!colors.insert(g.edges[id].color).second) return false;
  return true;
}

enum class SearchStatus { found, none, budget_exceeded };

struct RainbowSearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<CycleCertificate> certificate;  // best found so far on budget exhaustion
  long long nodes = 0;
};

namespace detail {

struct RainbowDfs {
  const ColoredGraph& g;
  const std::vector<std::vector<std::pair<int, int>>>& sorted_adj;
  const std::vector<int>& dist;  // from the current root, full graph
  int root = 0;
  int limit = 0;
  long long budget = 0;
  long long nodes = 0;
  bool out_of_budget = false;
  std::vector<char> on_path;
  std::vector<std::uint64_t> used_colors;
  std::vector<int> path_vertices;
  std::vector<int> path_edges;

  bool color_used(int c) const { return (used_colors[c >> 6] >> (c & 63)) & 1; }
  void set_color(int c) { used_colors[c >> 6] ^= (1ULL << (c & 63)); }

  // Returns true when a rainbow cycle of length <= limit has been closed.
  bool expand(int u, int depth) {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    for (auto [w, id] : sorted_adj[u]) {
      const int c = g.edges[id].color;
      if (w == root && depth >= 3 && !color_used(c)) {
        path_edges.push_back(id);
        return true;
      }
      if (w <= root || on_path[w] || color_used(c)) continue;
      // After stepping to w the path holds `depth` edges and still needs at
      // least dist[w] more to close.
      if (depth + dist[w] > limit) continue;
      on_path[w] = 1;
      set_color(c);
      path_vertices.push_back(w);
      path_edges.push_back(id);
      if (expand(w, depth + 1)) return true;
      if (out_of_budget) return false;
      path_edges.pop_back();
      path_vertices.pop_back();
      set_color(c);
      on_path[w] = 0;
    }
    return false;
  }
};

}  // namespace detail

// Shortest rainbow cycle of length <= lim.max_len, by iterative deepening
// over the target length. Each cycle is searched from its minimum vertex;
// neighbors are visited in ascending-degree order; a path is cut as soon as
// the plain BFS distance back to the root shows the budgeted length is
// unreachable. Exact whenever the node budget is not exhausted.
inline RainbowSearchResult rainbow_girth_exact(const ColoredGraph& g, SearchLimits lim = {}) {
  RainbowSearchResult result;
  if (lim.max_len < 2 || lim.node_budget <= 0) fail(Err::domain_error, "bad search limits");
  const int max_len = std::min(lim.max_len, g.n);

  std::vector<std::vector<std::pair<int, int>>> sorted_adj(g.n);
  for (int v = 0; v < g.n; ++v) {
    sorted_adj[v] = g.adj[v];
    std::sort(sorted_adj[v].begin(), sorted_adj[v].end(),
              [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                const int da = g.degree(a.first), db = g.degree(b.first);
                return da != db ? da < db : a < b;
              });
  }
  // Distances from every root, cached across deepening levels.
  const bool cache_ok = g.n <= 4096;
  std::vector<std::vector<int>> dist_cache(cache_ok ? g.n : 0);
  std::vector<int> scratch_dist, scratch_pe, scratch_p;
  auto dist_from = [&](int s) -> const std::vector<int>& {
    if (cache_ok) {
      if (dist_cache[s].empty()) {
        detail::bfs_dist(g.n, g.adj, s, dist_cache[s], scratch_pe, scratch_p);
      }
      return dist_cache[s];
    }
    detail::bfs_dist(g.n, g.adj, s, scratch_dist, scratch_pe, scratch_p);
    return scratch_dist;
  };

  long long nodes_total = 0;
  for (int limit = 3; limit <= max_len; ++limit) {
    for (int s = 0; s < g.n; ++s) {
      detail::RainbowDfs dfs{g, sorted_adj, dist_from(s), 0, 0, 0, 0, false, {}, {}, {}, {}};
      dfs.root = s;
      dfs.limit = limit;
      dfs.budget = lim.node_budget - nodes_total;
      dfs.on_path.assign(g.n, 0);
      dfs.used_colors.assign((g.K + 63) / 64 + 1, 0);
      dfs.on_path[s] = 1;
      dfs.path_vertices.push_back(s);
      const bool found = dfs.expand(s, 1);
      nodes_total += dfs.nodes;
      if (found) {
        CycleCertificate c;
        c.vertices = dfs.path_vertices;
        c.edge_ids = dfs.path_edges;
        c.rainbow = true;
        canonicalize_cycle(c);
        result.status = SearchStatus::found;
        result.certificate = c;
        result.nodes = nodes_total;
        return result;
      }
      if (dfs.out_of_budget) {
        result.status = SearchStatus::budget_exceeded;
        result.nodes = nodes_total;
        return result;
      }
    }
  }
  result.status = SearchStatus::none;
  result.nodes = nodes_total;
  return result;
}

// Independent oracle: enumerate every simple cycle (no color pruning along
// the way) and keep the shortest one whose colors are pairwise distinct.
// Factorial in the worst case, hence the size gate.
inline std::optional<int> brute_force_rainbow_girth(const ColoredGraph& g) {
  if (g.n > 12) fail(Err::too_large, "brute force is limited to n <= 12");
  int best = g.n + 1;
  std::vector<char> on_path(g.n, 0);
  std::vector<int> path, path_edges;

  auto is_rainbow_closure = [&](int closing_edge) {
    std::unordered_set<int> colors;
    for (int id : path_edges)
      if (!colors.insert(g.edges[id].color).second) return false;
    return colors.insert(g.edges[closing_edge].color).second;
  };

  // Cycles are counted once: started at their minimum vertex, oriented with
  // second vertex smaller than last.
  std::function<void(int, int)> extend = [&](int root, int u) {
    const int depth = static_cast<int>(path.size());
    if (depth >= best) return;
    for (auto [w, id] : g.adj[u]) {
      if (w == root && depth >= 3) {
        if (path[1] < path.back() && depth < best && is_rainbow_closure(id)) best = depth;
        continue;
      }
      if (w <= root || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      path_edges.push_back(id);
      extend(root, w);
      path_edges.pop_back();
      path.pop_back();
      on_path[w] = 0;
    }
  };

  for (int s = 0; s < g.n; ++s) {
    path = {s};
    path_edges.clear();
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[s] = 1;
    extend(s, s);
  }
  if (best > g.n) return std::nullopt;
  return best;
}

}  // namespace rainbow
