#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "kdag/graph.hpp"
#include "kdag/kernel.hpp"

// Per-node traffic load over a spanning DAG. Every node originates one unit
// per collection round and splits everything it carries evenly across its
// parents, so load(v) = 1 + sum over children c of load(c) / parent_count(c).
// The base records the share reported on each of its child links; those
// reported shares are what the balance factor is computed over.

namespace kdag {

struct EmptyChildren : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadMap {
  std::vector<double> load;                    // load[base] stays 0
  std::map<NodeId, double> base_child_loads;   // share arriving on each base link
};

// Share carried by each of child's parent edges under the even split.
inline double edge_share(const SpanningDag& d, const LoadMap& lm, NodeId child) {
  return lm.load[static_cast<std::size_t>(child)] /
         static_cast<double>(d.parents[static_cast<std::size_t>(child)].size());
}

// Centralized fixpoint in one reverse-topological sweep.
inline LoadMap compute_load_oracle(const SpanningDag& d) {
  const auto order = topo_order(d);
  LoadMap lm;
  lm.load.assign(static_cast<std::size_t>(d.node_count()), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (v == kBase) continue;
    double acc = 1.0;
    for (NodeId c : d.children[static_cast<std::size_t>(v)])
      acc += lm.load[static_cast<std::size_t>(c)] /
             static_cast<double>(d.parents[static_cast<std::size_t>(c)].size());
    lm.load[static_cast<std::size_t>(v)] = acc;
  }
  for (NodeId c : d.children[0]) lm.base_child_loads[c] = edge_share(d, lm, c);
  return lm;
}

namespace detail {

class LoadProtocol final : public Protocol {
 public:
  explicit LoadProtocol(const SpanningDag& d) : d_(d) {
    const auto m = static_cast<std::size_t>(d.node_count());
    load_.assign(m, 0.0);
    child_share_.resize(m);
    for (std::size_t v = 0; v < m; ++v) child_share_[v].assign(d.children[v].size(), 0.0);
    got_.assign(m, 0);
  }

  void on_start(Endpoint& ep) override {
    const NodeId v = ep.self();
    if (v == kBase || !d_.is_leaf(v)) return;
    load_[static_cast<std::size_t>(v)] = 1.0;
    report(ep, v);
  }

  void on_message(Endpoint& ep, const Message& m) override {
    const NodeId v = ep.self();
    const auto& rep = std::get<LoadReport>(m.body);
    if (v == kBase) {
      base_child_loads_[m.src] = rep.share;
      return;
    }
    const auto i = static_cast<std::size_t>(v);
    const auto& cs = d_.children[i];
    const auto slot =
        static_cast<std::size_t>(std::lower_bound(cs.begin(), cs.end(), m.src) - cs.begin());
    child_share_[i][slot] = rep.share;
    if (++got_[i] < static_cast<int>(cs.size())) return;
    double acc = 1.0;   // summed in child-id order: bit-identical to the oracle
    for (double s : child_share_[i]) acc += s;
    load_[i] = acc;
    report(ep, v);
  }

  LoadMap result() const { return LoadMap{load_, base_child_loads_}; }

 private:
  void report(Endpoint& ep, NodeId v) {
    const auto& ps = d_.parents[static_cast<std::size_t>(v)];
    const double share = load_[static_cast<std::size_t>(v)] / static_cast<double>(ps.size());
    for (NodeId p : ps) ep.send(p, LoadReport{0, share});
  }

  const SpanningDag& d_;
  std::vector<double> load_;
  std::vector<std::vector<double>> child_share_;
  std::vector<int> got_;
  std::map<NodeId, double> base_child_loads_;
};

}  // namespace detail

inline LoadMap run_load_calc(const ConnectivityGraph& g, const SpanningDag& d,
                             KernelConfig cfg = {}) {
  detail::LoadProtocol proto(d);
  cfg.record_trace = false;
  try {
    run_protocol(g, proto, std::move(cfg));
  } catch (const EventCapExceeded& e) {
    throw ProtocolStall(std::string("load calc: ") + e.what());
  }
  return proto.result();
}

// Balance factor over the base children's reported loads: (sum ld)^2 divided
// by (m * sum ld^2). Always in (0, 1]; equals 1 exactly when all loads match.
inline double balance_factor(const std::vector<double>& loads) {
  if (loads.empty()) throw EmptyChildren("balance_factor: no base children");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double ld : loads) {
    if (ld <= 0.0) throw std::invalid_argument("balance_factor: loads must be positive");
    sum += ld;
    sum_sq += ld * ld;
  }
  return (sum * sum) / (static_cast<double>(loads.size()) * sum_sq);
}

inline double balance_factor(const LoadMap& lm) {
  std::vector<double> loads;
  loads.reserve(lm.base_child_loads.size());
  for (const auto& [c, ld] : lm.base_child_loads) loads.push_back(ld);
  return balance_factor(loads);
}

}  // namespace kdag
