// Reproducible instance families. Identical GenSpec (family, sizes, seed)
// always yields a byte-identical serialized instance.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

struct GenSpec {
  std::string family;  // circulant | random-digraph | random-colored | star-circulant | star-random
  long long n = 0;
  long long k = 0;  // class size / min out-degree, per family
  long long K = 0;  // number of colors (random-colored)
  std::uint64_t seed = 0;
  std::vector<int> steps;  // circulant step set
};

inline nlohmann::json spec_to_json(const GenSpec& s) {
  nlohmann::json j;
  j["family"] = s.family;
  j["n"] = s.n;
  j["k"] = s.k;
  j["K"] = s.K;
  j["seed"] = s.seed;
  j["steps"] = s.steps;
  return j;
}

inline GenSpec spec_from_json(const nlohmann::json& j) {
  GenSpec s;
  s.family = j.at("family").get<std::string>();
  s.n = j.value("n", 0LL);
  s.k = j.value("k", 0LL);
  s.K = j.value("K", 0LL);
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("steps")) s.steps = j.at("steps").get<std::vector<int>>();
  return s;
}

// Arcs v -> v+s (mod n) for every step s. Digons are impossible exactly when
// no two steps (including a step with itself) sum to n.
inline Digraph gen_circulant_digraph(long long n, const std::vector<int>& steps) {
  if (n < 3) fail(Err::domain_error, "circulant needs n >= 3");
  std::set<int> step_set(steps.begin(), steps.end());
  for (int s : step_set) {
    if (s < 1 || s >= n) fail(Err::domain_error, "step " + std::to_string(s) + " outside [1, n-1]");
    const int mirror = static_cast<int>(n) - s;
    if (step_set.count(mirror))
      fail(Err::digon_risk, "steps " + std::to_string(s) + " and " + std::to_string(mirror) + " sum to n");
  }
  std::vector<Arc> arcs;
  arcs.reserve(n * step_set.size());
  for (int v = 0; v < n; ++v)
    for (int s : step_set) arcs.push_back({v, static_cast<int>((v + s) % n)});
  return build_digraph(static_cast<int>(n), arcs);
}

// Every vertex gets exactly k out-neighbors, chosen uniformly among the
// candidates that create neither loops nor digons. If the sequential choice
// wedges (a vertex's candidate pool runs dry), the whole attempt is redrawn;
// after the attempt cap a circulant with steps 1..k stands in, which keeps
// the degree guarantee deterministically.
inline Digraph gen_random_min_outdeg(long long n, long long k, std::uint64_t seed) {
  if (k < 1 || k > (n - 1) / 2)
    fail(Err::infeasible_degree, "need 1 <= k <= (n-1)/2 to avoid digons");
  Rng rng(seed);
  const int attempts = 64;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Arc> arcs;
    std::unordered_set<std::uint64_t> used;  // unordered pair keys
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      std::vector<int> pool;
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        if (used.count(pair_key(v, u))) continue;
        pool.push_back(u);
      }
      if (static_cast<long long>(pool.size()) < k) {
        ok = false;
        break;
      }
      for (long long pick = 0; pick < k; ++pick) {
        const std::size_t i = pick + rng.below(pool.size() - pick);
        std::swap(pool[pick], pool[i]);
        const int u = pool[pick];
        arcs.push_back({v, u});
        used.insert(pair_key(v, u));
      }
    }
    if (ok) return build_digraph(static_cast<int>(n), arcs);
  }
  std::vector<int> steps;
  for (int s = 1; s <= k; ++s) steps.push_back(s);
  return gen_circulant_digraph(n, steps);
}

// K classes of exactly k edges each, the K*k edges drawn uniformly among
// distinct vertex pairs. Dense requests switch from rejection sampling to a
// partial shuffle of the full pair list; both are deterministic in the seed.
inline ColoredGraph gen_random_colored(long long n, long long K, long long k, std::uint64_t seed) {
  if (n < 2 || K < 0 || k < 1) fail(Err::domain_error, "bad random-colored parameters");
  const long long want = K * k;
  const long long all_pairs = n * (n - 1) / 2;
  if (want > all_pairs) fail(Err::too_dense, std::to_string(want) + " edges exceed the " +
                                                 std::to_string(all_pairs) + " available pairs");
  Rng rng(seed);
  std::vector<std::pair<int, int>> picked;
  picked.reserve(want);
  if (want * 2 <= all_pairs) {
    std::unordered_set<std::uint64_t> used;
    used.reserve(want * 2);
    while (static_cast<long long>(picked.size()) < want) {
      const int u = rng.below_int(static_cast<int>(n));
      const int v = rng.below_int(static_cast<int>(n));
      if (u == v) continue;
      if (!used.insert(pair_key(u, v)).second) continue;
      picked.push_back({u, v});
    }
  } else {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(all_pairs);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    for (long long i = 0; i < want; ++i) {
      const std::size_t j = i + rng.below(pairs.size() - i);
      std::swap(pairs[i], pairs[j]);
      picked.push_back(pairs[i]);
    }
  }
  std::vector<ColoredEdge> edges;
  edges.reserve(want);
  for (long long i = 0; i < want; ++i)
    edges.push_back({picked[i].first, picked[i].second, static_cast<int>(i / k)});
  return build_colored_graph(static_cast<int>(n), edges);
}

// The directed-to-colored inheritance family: each color class is the
// out-star of one vertex.
inline ColoredGraph gen_star_colored(const Digraph& d) { return from_digraph(d); }

inline bool is_digraph_family(const std::string& family) {
  return family == "circulant" || family == "random-digraph";
}

inline Digraph generate_digraph(const GenSpec& s) {
  if (s.family == "circulant") return gen_circulant_digraph(s.n, s.steps);
  if (s.family == "random-digraph") return gen_random_min_outdeg(s.n, s.k, s.seed);
  if (s.family == "star-circulant" || s.family == "star-random")
    fail(Err::config_error, s.family + " generates a colored graph");
  fail(Err::config_error, "unknown family: " + s.family);
}

inline ColoredGraph generate_colored(const GenSpec& s) {
  if (s.family == "random-colored") return gen_random_colored(s.n, s.K, s.k, s.seed);
  if (s.family == "star-circulant") return gen_star_colored(gen_circulant_digraph(s.n, s.steps));
  if (s.family == "star-random") return gen_star_colored(gen_random_min_outdeg(s.n, s.k, s.seed));
  fail(Err::config_error, "family " + s.family + " does not generate a colored graph");
}

}  // namespace rainbow
