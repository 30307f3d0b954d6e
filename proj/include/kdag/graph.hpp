#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

// Unit-disk connectivity graphs and the spanning structures built on them.
// Node 0 is always the base station; sensors are 1..n.

namespace kdag {

using NodeId = std::int32_t;

inline constexpr NodeId kBase = 0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Thrown when a requested instance cannot be generated connected, or when a
// loaded instance file describes a disconnected deployment.
struct ConnectivityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution so that
// generated instances are identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct ConnectivityGraph {
  int n = 0;            // sensor count; total nodes = n + 1
  double side = 0.0;    // deployment square is [0, side] x [0, side]
  double range = 0.0;   // symmetric radio range
  std::uint64_t seed = 0;
  std::vector<Vec2> pos;                   // pos[0] is the base station
  std::vector<std::vector<NodeId>> adj;    // sorted neighbour lists

  int node_count() const { return n + 1; }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adj[static_cast<std::size_t>(v)]; }

  bool has_edge(NodeId a, NodeId b) const {
    const auto& na = adj[static_cast<std::size_t>(a)];
    return std::binary_search(na.begin(), na.end(), b);
  }
};

namespace detail {

inline std::vector<std::vector<NodeId>> disk_adjacency(const std::vector<Vec2>& pos, double range) {
  const int m = static_cast<int>(pos.size());
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(m));
  const double r2 = range * range;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double dx = pos[static_cast<std::size_t>(a)].x - pos[static_cast<std::size_t>(b)].x;
      const double dy = pos[static_cast<std::size_t>(a)].y - pos[static_cast<std::size_t>(b)].y;
      if (dx * dx + dy * dy <= r2) {  // inclusive: distance == range is an edge
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }
  return adj;
}

inline bool all_reachable(const std::vector<std::vector<NodeId>>& adj) {
  std::vector<char> seen(adj.size(), 0);
  std::queue<NodeId> q;
  q.push(kBase);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop();
    for (NodeId u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        q.push(u);
      }
    }
  }
  return count == adj.size();
}

}  // namespace detail

// Builds a graph from explicit positions; adjacency follows the disk rule.
inline ConnectivityGraph make_graph(std::vector<Vec2> pos, double side, double range,
                                    std::uint64_t seed = 0) {
  if (pos.empty()) throw std::invalid_argument("make_graph: need at least the base station");
  if (side <= 0.0 || range <= 0.0) throw std::invalid_argument("make_graph: side and range must be positive");
  ConnectivityGraph g;
  g.n = static_cast<int>(pos.size()) - 1;
  g.side = side;
  g.range = range;
  g.seed = seed;
  g.pos = std::move(pos);
  g.adj = detail::disk_adjacency(g.pos, range);
  if (!detail::all_reachable(g.adj)) throw ConnectivityFailure("make_graph: deployment is disconnected");
  return g;
}

// Uniform deployment of the base station plus n sensors in [0,side]^2.
// Each attempt draws a fresh position set from a sub-seed derived from
// (seed, attempt); the first connected deployment wins. Pure function of its
// arguments: identical adjacency on every run.
inline ConnectivityGraph generate_instance(int n, double side, double range, std::uint64_t seed,
                                           int max_attempts = 1000) {
  if (n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
  if (side <= 0.0 || range <= 0.0) throw std::invalid_argument("generate_instance: side and range must be positive");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Vec2> pos(static_cast<std::size_t>(n) + 1);
    for (auto& p : pos) {
      p.x = detail::uniform01(rng) * side;
      p.y = detail::uniform01(rng) * side;
    }
    auto adj = detail::disk_adjacency(pos, range);
    if (!detail::all_reachable(adj)) continue;
    ConnectivityGraph g;
    g.n = n;
    g.side = side;
    g.range = range;
    g.seed = seed;
    g.pos = std::move(pos);
    g.adj = std::move(adj);
    return g;
  }
  throw ConnectivityFailure("generate_instance: no connected deployment in " +
                            std::to_string(max_attempts) + " attempts (n=" + std::to_string(n) +
                            ", side=" + std::to_string(side) + ", range=" + std::to_string(range) + ")");
}

// ---------------------------------------------------------------------------
// Spanning DAGs rooted at the base station.

enum class DagKind { Spt, Spd, KDag };

inline const char* to_string(DagKind k) {
  switch (k) {
    case DagKind::Spt: return "spt";
    case DagKind::Spd: return "spd";
    case DagKind::KDag: return "kdag";
  }
  return "?";
}

struct SpanningDag {
  DagKind kind = DagKind::Spd;
  std::vector<std::vector<NodeId>> parents;   // edges point parent -> child
  std::vector<std::vector<NodeId>> children;
  std::vector<int> depth;                     // hop distance from the base

  int node_count() const { return static_cast<int>(depth.size()); }
  bool is_leaf(NodeId v) const { return children[static_cast<std::size_t>(v)].empty(); }
};

inline std::vector<int> bfs_depths(const ConnectivityGraph& g) {
  std::vector<int> depth(static_cast<std::size_t>(g.node_count()), -1);
  std::queue<NodeId> q;
  depth[0] = 0;
  q.push(kBase);
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop();
    for (NodeId u : g.neighbors(v)) {
      if (depth[static_cast<std::size_t>(u)] < 0) {
        depth[static_cast<std::size_t>(u)] = depth[static_cast<std::size_t>(v)] + 1;
        q.push(u);
      }
    }
  }
  return depth;
}

// Hop diameter of the connectivity graph (longest shortest path).
inline int hop_diameter(const ConnectivityGraph& g) {
  const int m = g.node_count();
  int diameter = 0;
  for (NodeId s = 0; s < m; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(m), -1);
    std::queue<NodeId> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      for (NodeId u : g.neighbors(v)) {
        if (dist[static_cast<std::size_t>(u)] < 0) {
          dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
          q.push(u);
        }
      }
    }
    for (int dv : dist) diameter = std::max(diameter, dv);
  }
  return diameter;
}

// Shortest-path DAG: every neighbour one hop closer to the base is a parent,
// so the DAG is edge-maximal over shortest paths.
inline SpanningDag build_spd(const ConnectivityGraph& g) {
  SpanningDag d;
  d.kind = DagKind::Spd;
  d.depth = bfs_depths(g);
  const int m = g.node_count();
  d.parents.assign(static_cast<std::size_t>(m), {});
  d.children.assign(static_cast<std::size_t>(m), {});
  for (NodeId v = 0; v < m; ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (d.depth[static_cast<std::size_t>(u)] == d.depth[static_cast<std::size_t>(v)] - 1) {
        d.parents[static_cast<std::size_t>(v)].push_back(u);
        d.children[static_cast<std::size_t>(u)].push_back(v);
      }
    }
  }
  for (auto& p : d.parents) std::sort(p.begin(), p.end());
  for (auto& c : d.children) std::sort(c.begin(), c.end());
  return d;
}

// Shortest-path tree: keep the smallest-id parent of every node. Idempotent.
inline SpanningDag extract_spt(const SpanningDag& spd) {
  SpanningDag t;
  t.kind = DagKind::Spt;
  t.depth = spd.depth;
  const int m = spd.node_count();
  t.parents.assign(static_cast<std::size_t>(m), {});
  t.children.assign(static_cast<std::size_t>(m), {});
  for (NodeId v = 1; v < m; ++v) {
    const auto& ps = spd.parents[static_cast<std::size_t>(v)];
    const NodeId p = *std::min_element(ps.begin(), ps.end());
    t.parents[static_cast<std::size_t>(v)].push_back(p);
    t.children[static_cast<std::size_t>(p)].push_back(v);
  }
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  return t;
}

// Topological order with the base first; throws if the structure has a cycle.
inline std::vector<NodeId> topo_order(const SpanningDag& d) {
  const int m = d.node_count();
  std::vector<int> missing(static_cast<std::size_t>(m));
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(m));
  std::queue<NodeId> q;
  for (NodeId v = 0; v < m; ++v) {
    missing[static_cast<std::size_t>(v)] = static_cast<int>(d.parents[static_cast<std::size_t>(v)].size());
    if (missing[static_cast<std::size_t>(v)] == 0) q.push(v);
  }
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop();
    order.push_back(v);
    for (NodeId c : d.children[static_cast<std::size_t>(v)]) {
      if (--missing[static_cast<std::size_t>(c)] == 0) q.push(c);
    }
  }
  if (order.size() != static_cast<std::size_t>(m)) throw std::logic_error("topo_order: cycle detected");
  return order;
}

inline bool is_acyclic(const SpanningDag& d) {
  try {
    (void)topo_order(d);
    return true;
  } catch (const std::logic_error&) {
    return false;
  }
}

struct PathRange {
  int shortest = 0;
  int longest = 0;
};

// Min/max root-to-node path lengths over the DAG, all nodes at once.
inline std::vector<PathRange> path_length_ranges(const SpanningDag& d) {
  std::vector<PathRange> r(static_cast<std::size_t>(d.node_count()));
  for (NodeId v : topo_order(d)) {
    if (v == kBase) continue;
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (NodeId p : d.parents[static_cast<std::size_t>(v)]) {
      lo = std::min(lo, r[static_cast<std::size_t>(p)].shortest + 1);
      hi = std::max(hi, r[static_cast<std::size_t>(p)].longest + 1);
    }
    r[static_cast<std::size_t>(v)] = {lo, hi};
  }
  return r;
}

inline PathRange path_length_range(const SpanningDag& d, NodeId v) {
  return path_length_ranges(d)[static_cast<std::size_t>(v)];
}

// ---------------------------------------------------------------------------
// Instance files: {"n", "side", "range", "seed", "positions"} with
// positions[0] the base station. Adjacency is rebuilt from the disk rule, so
// the file round-trips the exact deployment.

inline nlohmann::json to_json(const ConnectivityGraph& g) {
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : g.pos) pos.push_back({p.x, p.y});
  return nlohmann::json{{"n", g.n}, {"side", g.side}, {"range", g.range}, {"seed", g.seed},
                        {"positions", std::move(pos)}};
}

inline ConnectivityGraph graph_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const double side = j.at("side").get<double>();
  const double range = j.at("range").get<double>();
  const auto seed = j.at("seed").get<std::uint64_t>();
  const auto& jp = j.at("positions");
  if (static_cast<int>(jp.size()) != n + 1)
    throw std::invalid_argument("graph_from_json: positions must hold n+1 entries");
  std::vector<Vec2> pos;
  pos.reserve(jp.size());
  for (const auto& e : jp) pos.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  return make_graph(std::move(pos), side, range, seed);
}

}  // namespace kdag
