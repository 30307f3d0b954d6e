#pragma once

#include <limits>
#include <vector>

#include "kdag/graph.hpp"
#include "kdag/kernel.hpp"

// Distributed construction of the shortest-path DAG: asynchronous BFS by
// relaxation. The base announces depth 0; every node that improves its depth
// re-announces, and each node remembers the best depth heard per neighbour.
// On quiescence, a node's parents are exactly the neighbours one hop closer.

namespace kdag {

namespace detail {

class SpdFloodProtocol final : public Protocol {
 public:
  explicit SpdFloodProtocol(const ConnectivityGraph& g)
      : g_(g),
        depth_(static_cast<std::size_t>(g.node_count()), std::numeric_limits<int>::max()),
        heard_(static_cast<std::size_t>(g.node_count())) {
    for (NodeId v = 0; v < g.node_count(); ++v)
      heard_[static_cast<std::size_t>(v)].assign(g.neighbors(v).size(),
                                                 std::numeric_limits<int>::max());
  }

  void on_start(Endpoint& ep) override {
    if (ep.self() != kBase) return;
    depth_[0] = 0;
    for (NodeId u : ep.neighbors()) ep.send(u, DepthAnnounce{0});
  }

  void on_message(Endpoint& ep, const Message& m) override {
    const auto& ann = std::get<DepthAnnounce>(m.body);
    const auto v = static_cast<std::size_t>(ep.self());
    const auto& nbrs = g_.neighbors(ep.self());
    const auto slot = static_cast<std::size_t>(
        std::lower_bound(nbrs.begin(), nbrs.end(), m.src) - nbrs.begin());
    if (ann.depth < heard_[v][slot]) heard_[v][slot] = ann.depth;
    if (ann.depth + 1 < depth_[v]) {
      depth_[v] = ann.depth + 1;
      for (NodeId u : nbrs) ep.send(u, DepthAnnounce{depth_[v]});
    }
  }

  SpanningDag result() const {
    SpanningDag d;
    d.kind = DagKind::Spd;
    d.depth.assign(depth_.begin(), depth_.end());
    const int m = g_.node_count();
    d.parents.assign(static_cast<std::size_t>(m), {});
    d.children.assign(static_cast<std::size_t>(m), {});
    for (NodeId v = 0; v < m; ++v) {
      const auto& nbrs = g_.neighbors(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (heard_[static_cast<std::size_t>(v)][i] == d.depth[static_cast<std::size_t>(v)] - 1) {
          d.parents[static_cast<std::size_t>(v)].push_back(nbrs[i]);
          d.children[static_cast<std::size_t>(nbrs[i])].push_back(v);
        }
      }
    }
    for (auto& c : d.children) std::sort(c.begin(), c.end());
    return d;
  }

 private:
  const ConnectivityGraph& g_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> heard_;   // best depth heard, indexed like neighbors()
};

}  // namespace detail

inline SpanningDag build_spd_distributed(const ConnectivityGraph& g, KernelConfig cfg = {}) {
  detail::SpdFloodProtocol proto(g);
  cfg.record_trace = false;
  try {
    run_protocol(g, proto, std::move(cfg));
  } catch (const EventCapExceeded& e) {
    throw ProtocolStall(std::string("spd flood: ") + e.what());
  }
  return proto.result();
}

}  // namespace kdag
