#pragma once

#include <stdexcept>
#include <vector>

#include "kdag/graph.hpp"
#include "kdag/kernel.hpp"

// Tree naming in three phases: a size request floods down the tree, subtree
// sizes aggregate back up, then the base hands out consecutive id ranges so
// that each node owns [id, id + size - 1] == exactly its subtree's ids. The
// resulting ids are the DFS preorder ranks for ascending-id child visits, and
// they support point-to-point routing with no flooding: forward down to the
// child whose range holds the target, otherwise up to the parent.

namespace kdag {

struct UnknownTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NameTable {
  std::vector<int> id;             // id[base] = 0, sensors 1..n
  std::vector<int> subtree_size;   // base keeps 0: it never counts itself
  std::vector<int> range_min;
  std::vector<int> range_max;      // base covers [0, n]
};

namespace detail {

class NamingProtocol final : public Protocol {
 public:
  explicit NamingProtocol(const SpanningDag& spt) : spt_(spt) {
    const auto m = static_cast<std::size_t>(spt.node_count());
    size_.assign(m, 1);
    size_[0] = 0;
    reported_.assign(m, 0);
    child_size_.resize(m);
    id_.assign(m, 0);
    range_min_.assign(m, 0);
    range_max_.assign(m, 0);
    for (std::size_t v = 0; v < m; ++v) child_size_[v].assign(spt.children[v].size(), 0);
    range_max_[0] = spt.node_count() - 1;
  }

  void on_start(Endpoint& ep) override {
    if (ep.self() != kBase) return;
    for (NodeId c : children(kBase)) ep.send(c, SubtreeSizeRequest{});
  }

  void on_message(Endpoint& ep, const Message& m) override {
    const NodeId v = ep.self();
    if (std::holds_alternative<SubtreeSizeRequest>(m.body)) {
      if (children(v).empty()) {
        ep.send(parent(v), SubtreeSizeReport{1});
        return;
      }
      for (NodeId c : children(v)) ep.send(c, SubtreeSizeRequest{});
    } else if (const auto* rep = std::get_if<SubtreeSizeReport>(&m.body)) {
      child_size_[static_cast<std::size_t>(v)][child_slot(v, m.src)] = rep->size;
      if (v != kBase) size_[static_cast<std::size_t>(v)] += rep->size;
      if (++reported_[static_cast<std::size_t>(v)] < static_cast<int>(children(v).size())) return;
      if (v == kBase) {
        hand_out_ids(ep, v, 1);
      } else {
        ep.send(parent(v), SubtreeSizeReport{size_[static_cast<std::size_t>(v)]});
      }
    } else if (const auto* ids = std::get_if<AssignIdRange>(&m.body)) {
      id_[static_cast<std::size_t>(v)] = ids->min_id;
      range_min_[static_cast<std::size_t>(v)] = ids->min_id;
      range_max_[static_cast<std::size_t>(v)] = ids->max_id;
      hand_out_ids(ep, v, ids->min_id + 1);
    }
  }

  NameTable result() const { return NameTable{id_, size_, range_min_, range_max_}; }

 private:
  const std::vector<NodeId>& children(NodeId v) const {
    return spt_.children[static_cast<std::size_t>(v)];
  }

  NodeId parent(NodeId v) const { return spt_.parents[static_cast<std::size_t>(v)][0]; }

  std::size_t child_slot(NodeId v, NodeId c) const {
    const auto& cs = children(v);
    return static_cast<std::size_t>(std::lower_bound(cs.begin(), cs.end(), c) - cs.begin());
  }

  void hand_out_ids(Endpoint& ep, NodeId v, int next_id) {
    const auto& cs = children(v);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const int sz = child_size_[static_cast<std::size_t>(v)][i];
      ep.send(cs[i], AssignIdRange{next_id, next_id + sz - 1});
      next_id += sz;
    }
  }

  const SpanningDag& spt_;
  std::vector<int> size_;
  std::vector<int> reported_;
  std::vector<std::vector<int>> child_size_;
  std::vector<int> id_;
  std::vector<int> range_min_;
  std::vector<int> range_max_;
};

}  // namespace detail

inline NameTable run_naming(const ConnectivityGraph& g, const SpanningDag& spt,
                            KernelConfig cfg = {}) {
  if (spt.kind != DagKind::Spt) throw std::invalid_argument("run_naming: needs a tree");
  detail::NamingProtocol proto(spt);
  cfg.record_trace = false;
  try {
    run_protocol(g, proto, std::move(cfg));
  } catch (const EventCapExceeded& e) {
    throw ProtocolStall(std::string("naming: ") + e.what());
  }
  return proto.result();
}

// Next hop from `from` toward the node owning target_id; -1 when already there.
inline NodeId route_next_hop(const NameTable& names, const SpanningDag& spt, NodeId from,
                             int target_id) {
  if (target_id < 0 || target_id >= spt.node_count())
    throw UnknownTarget("route: id " + std::to_string(target_id) + " is outside the network");
  const auto v = static_cast<std::size_t>(from);
  if (names.id[v] == target_id) return -1;
  for (NodeId c : spt.children[v]) {
    if (names.range_min[static_cast<std::size_t>(c)] <= target_id &&
        target_id <= names.range_max[static_cast<std::size_t>(c)])
      return c;
  }
  return spt.parents[v][0];   // not below us: only way is up
}

// Full hop sequence from `from` to the owner of target_id, start excluded.
inline std::vector<NodeId> route_to(const NameTable& names, const SpanningDag& spt, NodeId from,
                                    int target_id) {
  std::vector<NodeId> hops;
  NodeId cur = from;
  while (true) {
    const NodeId next = route_next_hop(names, spt, cur, target_id);
    if (next < 0) return hops;
    hops.push_back(next);
    cur = next;
  }
}

}  // namespace kdag
