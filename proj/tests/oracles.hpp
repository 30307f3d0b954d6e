#pragma once

// Centralized reference implementations the distributed protocols are checked
// against. Kept deliberately naive and structurally different from the library
// code: recursion and frontier sweeps here, queues and message passing there.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "kdag/graph.hpp"

namespace oracle {

// BFS depths via explicit frontier vectors instead of a queue.
inline std::vector<int> bfs_depths(const kdag::ConnectivityGraph& g) {
  std::vector<int> depth(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<kdag::NodeId> frontier{kdag::kBase};
  depth[kdag::kBase] = 0;
  int level = 0;
  while (!frontier.empty()) {
    ++level;
    std::vector<kdag::NodeId> next;
    for (kdag::NodeId v : frontier) {
      for (kdag::NodeId w : g.neighbors(v)) {
        auto wi = static_cast<std::size_t>(w);
        if (depth[wi] < 0) {
          depth[wi] = level;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return depth;
}

struct Naming {
  std::vector<int> id;
  std::vector<int> subtree_size;   // base keeps 0
  std::vector<int> range_min;
  std::vector<int> range_max;
};

// Recursive DFS preorder over the tree, children in ascending node id.
inline Naming dfs_preorder(const kdag::SpanningDag& spt) {
  const auto m = static_cast<std::size_t>(spt.node_count());
  Naming nm;
  nm.id.assign(m, 0);
  nm.subtree_size.assign(m, 0);
  nm.range_min.assign(m, 0);
  nm.range_max.assign(m, 0);
  std::function<int(kdag::NodeId)> count = [&](kdag::NodeId v) {
    int total = 1;
    for (kdag::NodeId c : spt.children[static_cast<std::size_t>(v)]) total += count(c);
    nm.subtree_size[static_cast<std::size_t>(v)] = total;
    return total;
  };
  for (kdag::NodeId c : spt.children[kdag::kBase]) count(c);
  int next = 1;
  std::function<void(kdag::NodeId)> assign = [&](kdag::NodeId v) {
    auto vi = static_cast<std::size_t>(v);
    nm.id[vi] = next++;
    nm.range_min[vi] = nm.id[vi];
    nm.range_max[vi] = nm.id[vi] + nm.subtree_size[vi] - 1;
    for (kdag::NodeId c : spt.children[vi]) assign(c);
  };
  for (kdag::NodeId c : spt.children[kdag::kBase]) assign(c);
  nm.range_max[kdag::kBase] = spt.node_count() - 1;
  return nm;
}

// Memoized top-down recursion: load(v) = 1 + sum over children of their load
// split evenly across their parents.
inline std::vector<double> loads(const kdag::SpanningDag& d) {
  const auto m = static_cast<std::size_t>(d.node_count());
  std::vector<double> memo(m, -1.0);
  std::function<double(kdag::NodeId)> load = [&](kdag::NodeId v) -> double {
    auto vi = static_cast<std::size_t>(v);
    if (memo[vi] >= 0.0) return memo[vi];
    double acc = 1.0;
    for (kdag::NodeId c : d.children[vi])
      acc += load(c) / static_cast<double>(d.parents[static_cast<std::size_t>(c)].size());
    return memo[vi] = acc;
  };
  for (kdag::NodeId v = 1; v < d.node_count(); ++v) load(v);
  memo[kdag::kBase] = 0.0;
  return memo;
}

struct PathStats {
  int shortest = 0;
  int longest = 0;
  long long count = 0;   // number of distinct base paths
};

// Exhaustive enumeration of every base path by walking parent edges.
inline PathStats enumerate_paths(const kdag::SpanningDag& d, kdag::NodeId v) {
  PathStats st;
  st.shortest = d.node_count() + 1;
  std::function<void(kdag::NodeId, int)> walk = [&](kdag::NodeId u, int len) {
    if (u == kdag::kBase) {
      st.shortest = std::min(st.shortest, len);
      st.longest = std::max(st.longest, len);
      ++st.count;
      return;
    }
    for (kdag::NodeId p : d.parents[static_cast<std::size_t>(u)]) walk(p, len + 1);
  };
  walk(v, 0);
  return st;
}

// Tree path between two nodes spliced at the lowest common ancestor.
inline std::vector<kdag::NodeId> tree_route(const kdag::SpanningDag& spt, kdag::NodeId from,
                                            kdag::NodeId to) {
  auto chain_to_base = [&](kdag::NodeId v) {
    std::vector<kdag::NodeId> chain{v};
    while (v != kdag::kBase) {
      v = spt.parents[static_cast<std::size_t>(v)][0];
      chain.push_back(v);
    }
    return chain;   // v, parent(v), ..., base
  };
  std::vector<kdag::NodeId> up = chain_to_base(from);
  std::vector<kdag::NodeId> down = chain_to_base(to);
  while (up.size() >= 2 && down.size() >= 2 && up[up.size() - 2] == down[down.size() - 2]) {
    up.pop_back();
    down.pop_back();
  }
  std::vector<kdag::NodeId> hops(up.begin() + 1, up.end());   // climb, start excluded
  for (auto it = down.rbegin() + 1; it != down.rend(); ++it) hops.push_back(*it);
  return hops;
}

// Two-branch deployment used for the hand-checked build walk-through: a heavy
// western branch (7 nodes) and a light eastern one (2 nodes), with two
// same-depth link opportunities between them.
inline kdag::ConnectivityGraph two_branch_fixture() {
  std::vector<kdag::Vec2> pos{
      {0.0, 0.0},     // 0 base
      {-5.0, 0.0},    // 1 west branch root
      {5.0, 0.0},     // 2 east branch root
      {-5.0, 9.0},    // 3 west, links east to 5
      {-12.0, 6.0},   // 4 west, links to 3
      {3.5, 9.4},     // 5 east
      {-9.0, -6.0},   // 6 west cluster
      {-11.0, -7.0},  // 7 west cluster
      {-6.0, -9.5},   // 8 west cluster
      {-20.0, 10.0},  // 9 below 4
  };
  return kdag::make_graph(std::move(pos), 40.0, 10.0);
}

}  // namespace oracle
