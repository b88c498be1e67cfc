#pragma once

// City graph: random grid instances, shortest paths with deterministic
// tie-breaking, and the per-station path tables the cost model consumes.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dispatch/rng.hpp"

namespace dispatch {

using Edge = std::pair<int, int>;  // u < v

struct Graph {
  int d = 0;  // grid side length; nodes are 0..d*d-1, row-major
  int node_count = 0;
  std::vector<Edge> edges;  // sorted, unique

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(node_count);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
};

inline bool is_connected(const std::vector<std::vector<int>>& adj) {
  if (adj.empty()) return true;
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == adj.size();
}

inline bool is_connected(const Graph& g) { return is_connected(g.adjacency()); }

/// d x d lattice thinned by removing edges uniformly at random while the
/// graph stays connected. Removal stops once at least 2d(d-1)*sparseness
/// edges are gone, or after 100 consecutive rejected attempts.
inline Graph generate_grid_graph(int d, double sparseness, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("generate_grid_graph: d must be >= 2");
  if (!(sparseness > 0.0 && sparseness < 1.0))
    throw std::invalid_argument("generate_grid_graph: sparseness must be in (0,1)");

  Graph g;
  g.d = d;
  g.node_count = d * d;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      int u = r * d + c;
      if (c + 1 < d) g.edges.emplace_back(u, u + 1);
      if (r + 1 < d) g.edges.emplace_back(u, u + d);
    }

  const int full = 2 * d * (d - 1);
  const double target = full * sparseness;
  Rng rng(seed);
  auto adj = g.adjacency();
  int removed = 0;
  int failures = 0;
  std::vector<Edge> pool = g.edges;
  while (removed < target && failures < 100 && !pool.empty()) {
    std::size_t k = rng.below(pool.size());
    Edge e = pool[k];
    auto drop = [&](int a, int b) {
      auto& n = adj[a];
      n.erase(std::find(n.begin(), n.end(), b));
    };
    drop(e.first, e.second);
    drop(e.second, e.first);
    if (is_connected(adj)) {
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
      ++removed;
      failures = 0;
    } else {
      adj[e.first].insert(
          std::lower_bound(adj[e.first].begin(), adj[e.first].end(), e.second),
          e.second);
      adj[e.second].insert(
          std::lower_bound(adj[e.second].begin(), adj[e.second].end(), e.first),
          e.first);
      ++failures;
    }
  }
  std::sort(pool.begin(), pool.end());
  g.edges = std::move(pool);
  return g;
}

/// A shortest path as its node sequence; empty path is a single node.
struct Path {
  std::vector<int> nodes;

  int phases() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }

  std::vector<Edge> edge_list() const {
    std::vector<Edge> e;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
      e.emplace_back(std::min(nodes[k], nodes[k + 1]),
                     std::max(nodes[k], nodes[k + 1]));
    return e;
  }
};

enum class TieBreak { lexicographic, seeded_random };

inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj,
                                      int src) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

/// Minimum-hop path from src to dst. Ties resolve to the lexicographically
/// smallest node sequence by default; the seeded_random mode picks uniformly
/// among eligible next hops with a generator derived from (seed, src, dst).
inline Path shortest_path(const Graph& g, int src, int dst,
                          TieBreak tie = TieBreak::lexicographic,
                          std::uint64_t seed = 0) {
  if (src < 0 || src >= g.node_count || dst < 0 || dst >= g.node_count)
    throw std::invalid_argument("shortest_path: node out of range");
  auto adj = g.adjacency();
  auto dist = bfs_distances(adj, dst);
  if (dist[src] < 0)
    throw std::runtime_error("shortest_path: graph is not connected");

  Path p;
  p.nodes.push_back(src);
  Rng rng(derive_seed(seed, (static_cast<std::uint64_t>(src) << 32) ^
                                static_cast<std::uint64_t>(dst)));
  int cur = src;
  while (cur != dst) {
    std::vector<int> next;
    for (int v : adj[cur])
      if (dist[v] == dist[cur] - 1) next.push_back(v);
    int pick = tie == TieBreak::lexicographic
                   ? next.front()  // adjacency is sorted
                   : next[rng.below(next.size())];
    p.nodes.push_back(pick);
    cur = pick;
  }
  return p;
}

/// Hop counts and shared-edge counts between every station and demand
/// location, precomputed once per instance. Pair indexing covers inside
/// station slots only; the outside pseudo-station never shares edges.
struct PathTable {
  int station_count = 0;
  int node_count = 0;
  std::vector<int> phase;    // station_count * node_count
  std::vector<int> shared;   // station pairs (s1<s2) * node_count
  int max_phases = 0;

  int phases(int station, int node) const {
    return phase[static_cast<std::size_t>(station) * node_count + node];
  }
  static int pair_slot(int s1, int s2) {  // s1 < s2
    return s2 * (s2 - 1) / 2 + s1;
  }
  int shared_edges(int s1, int s2, int node) const {
    if (s1 == s2) return phases(s1, node);
    if (s1 > s2) std::swap(s1, s2);
    return shared[static_cast<std::size_t>(pair_slot(s1, s2)) * node_count + node];
  }
};

inline PathTable build_path_table(const Graph& g, const std::vector<int>& stations,
                                  TieBreak tie = TieBreak::lexicographic,
                                  std::uint64_t seed = 0) {
  PathTable t;
  t.station_count = static_cast<int>(stations.size());
  t.node_count = g.node_count;
  t.phase.assign(static_cast<std::size_t>(t.station_count) * g.node_count, 0);

  std::vector<std::vector<std::vector<Edge>>> edge_sets(stations.size());
  for (std::size_t s = 0; s < stations.size(); ++s) {
    edge_sets[s].resize(g.node_count);
    for (int j = 0; j < g.node_count; ++j) {
      Path p = shortest_path(g, stations[s], j, tie, seed);
      t.phase[s * g.node_count + j] = p.phases();
      t.max_phases = std::max(t.max_phases, p.phases());
      auto e = p.edge_list();
      std::sort(e.begin(), e.end());
      edge_sets[s][j] = std::move(e);
    }
  }

  int pairs = t.station_count * (t.station_count - 1) / 2;
  t.shared.assign(static_cast<std::size_t>(pairs) * g.node_count, 0);
  for (int s2 = 1; s2 < t.station_count; ++s2)
    for (int s1 = 0; s1 < s2; ++s1)
      for (int j = 0; j < g.node_count; ++j) {
        const auto& a = edge_sets[s1][j];
        const auto& b = edge_sets[s2][j];
        std::vector<Edge> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        t.shared[static_cast<std::size_t>(PathTable::pair_slot(s1, s2)) *
                     g.node_count + j] = static_cast<int>(common.size());
      }
  return t;
}

}  // namespace dispatch
