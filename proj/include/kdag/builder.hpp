#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "kdag/graph.hpp"
#include "kdag/kernel.hpp"
#include "kdag/load.hpp"
#include "kdag/naming.hpp"

// Turns a shortest-path DAG into a k-DAG: a spanning DAG whose longest and
// shortest base paths differ by at most k at every node. Extra parent links
// ("sibling edges", between nodes at equal BFS depth) divert traffic from the
// heaviest base subtree toward a lighter neighbouring one.
//
// The base station drives rounds:
//   1. pick the heaviest still-promising child v_i and its lightest
//      neighbouring child v_j; the divert goal is (load_i - load_j) / 2
//   2. flood a search over v_i's subtree; each node that could bridge the two
//      subtrees through an equal-depth neighbour reports the load it would
//      divert, if that is below the goal
//   3. after a fixed collection window, the best candidate is told to add its
//      bridge edge; the new child end then extends the chain sideways while
//      budget and the hop bound allow, descends one level otherwise, and
//      finally acknowledges back to the base
//   4. a recalculation flood rebuilds every node's reach set and load
// A child whose round adds no edge is never picked again; the loop ends when
// no child is left. Every accepted edge must keep the DAG acyclic, keep every
// node's path spread within k, and leave the light child's new load below the
// heavy child's old one (checked on a tentative copy with the load oracle).

namespace kdag {

struct NotACandidate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builds with this k never hit the path bound: the result is the saturated
// k-DAG, to which no further sibling edge is admissible.
inline constexpr int kSaturationK = std::numeric_limits<int>::max();

struct SiblingEdge {
  int round = 0;
  NodeId from = -1;   // gains a parent (heavy side)
  NodeId to = -1;     // the new parent, on the path toward the light child
  int level = 0;      // common BFS depth of both ends
  double ldc = 0.0;   // diverted-load estimate when the edge was accepted
};

struct BuilderConfig {
  KernelConfig kernel;
  // Divert estimate denominator: parent count before the add instead of the
  // count the node would have after it.
  bool divert_pre_add_parents = false;
};

struct BuildResult {
  SpanningDag dag;
  std::vector<SiblingEdge> edge_log;
  int rounds = 0;     // search rounds flooded (including ones that added nothing)
  Trace trace;
};

// Reach sets: reach[v] = sorted base children with a DAG path to v.
inline std::vector<std::vector<NodeId>> compute_reach_sets(const SpanningDag& d) {
  std::vector<std::vector<NodeId>> reach(static_cast<std::size_t>(d.node_count()));
  for (NodeId c : d.children[0]) {
    std::vector<char> seen(static_cast<std::size_t>(d.node_count()), 0);
    std::vector<NodeId> stack{c};
    seen[static_cast<std::size_t>(c)] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      reach[static_cast<std::size_t>(v)].push_back(c);
      for (NodeId w : d.children[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return reach;   // per-node lists are ascending: children(base) is sorted
}

namespace detail {

inline bool contains(const std::vector<NodeId>& sorted, NodeId x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace detail

inline double diverted_load(const SpanningDag& d, const std::vector<double>& load, NodeId v,
                            bool pre_add_parents) {
  const auto p = static_cast<double>(d.parents[static_cast<std::size_t>(v)].size());
  return load[static_cast<std::size_t>(v)] / (pre_add_parents ? p : p + 1.0);
}

// True when u could serve as the new parent for v: an equal-depth neighbour
// that the light child reaches, while v sits on the heavy side and outside
// the light child's DAG. u may be reachable from the heavy child too; the
// balance checks at acceptance time decide whether the crossing helps.
inline bool is_bridge_pair(const ConnectivityGraph& g, const SpanningDag& d,
                           const std::vector<std::vector<NodeId>>& reach, NodeId heavy,
                           NodeId light, NodeId v, NodeId u) {
  return d.depth[static_cast<std::size_t>(u)] == d.depth[static_cast<std::size_t>(v)] &&
         g.has_edge(v, u) &&
         detail::contains(reach[static_cast<std::size_t>(v)], heavy) &&
         !detail::contains(reach[static_cast<std::size_t>(v)], light) &&
         detail::contains(reach[static_cast<std::size_t>(u)], light);
}

// Load v would push through a new parent link, provided some equal-depth
// neighbour crosses to the light side. Throws NotACandidate otherwise.
inline double candidate_diverted_load(const ConnectivityGraph& g, const SpanningDag& d,
                                      const std::vector<double>& load,
                                      const std::vector<std::vector<NodeId>>& reach, NodeId heavy,
                                      NodeId light, NodeId v, bool pre_add_parents = false) {
  for (NodeId u : g.neighbors(v)) {
    if (is_bridge_pair(g, d, reach, heavy, light, v, u))
      return diverted_load(d, load, v, pre_add_parents);
  }
  throw NotACandidate("node " + std::to_string(v) + " has no crossing sibling");
}

namespace detail {

class BuilderProtocol final : public Protocol {
 public:
  BuilderProtocol(const ConnectivityGraph& g, const SpanningDag& spd, const SpanningDag& spt,
                  const NameTable& names, int k, bool pre_add, Tick t1)
      : g_(g), spt_(spt), names_(names), dag_(spd), k_(k), pre_add_(pre_add), t1_(t1) {
    dag_.kind = DagKind::KDag;
    const auto m = static_cast<std::size_t>(g.node_count());
    load_.assign(m, 0.0);
    reach_.assign(m, {});
    energy_.assign(m, 1.0);   // all equal until deployment: tie-break falls to node id
    eligible_.assign(m, 1);
    wave_seen_.assign(m, -1);
    wave_parents_heard_.assign(m, 0);
    wave_reach_tmp_.assign(m, {});
    wave_child_share_.assign(m, {});
    wave_child_got_.assign(m, 0);
    sf_seen_.assign(m, -1);
    chain_stamp_.assign(m, -1);
    scratch_.assign(m, 0);
  }

  void on_start(Endpoint& ep) override {
    if (ep.self() != kBase) return;
    start_wave(ep);   // wave 0 seeds the reach sets and loads
  }

  void on_message(Endpoint& ep, const Message& m) override {
    if (std::holds_alternative<RecalcLoads>(m.body)) handle_recalc(ep, m);
    else if (std::holds_alternative<LoadReport>(m.body)) handle_load_report(ep, m);
    else if (std::holds_alternative<SiblingSearch>(m.body)) handle_search(ep, m);
    else if (std::holds_alternative<SiblingCandidate>(m.body)) handle_candidate(m);
    else if (std::holds_alternative<SiblingSelect>(m.body)) handle_select(ep, m);
    else if (std::holds_alternative<AddSibling>(m.body)) handle_add_sibling(ep, m);
    else if (std::holds_alternative<SearchAck>(m.body)) handle_ack(ep, m);
  }

  void on_timer(Endpoint& ep, const TimerHandle& h) override {
    if (!collecting_ || h.tag != round_) return;
    collecting_ = false;
    if (candidates_.empty()) {
      round_failed(ep);
      return;
    }
    const SiblingCandidate* best = &candidates_.front();
    for (const auto& c : candidates_) {
      const auto be = energy_[static_cast<std::size_t>(best->candidate)];
      const auto ce = energy_[static_cast<std::size_t>(c.candidate)];
      if (c.divert_load > best->divert_load ||
          (c.divert_load == best->divert_load &&
           (ce > be || (ce == be && c.candidate < best->candidate))))
        best = &c;
    }
    const int target = names_.id[static_cast<std::size_t>(best->candidate)];
    ep.send(route_next_hop(names_, spt_, kBase, target),
            SiblingSelect{round_, best->candidate, target, divert_goal_, 0});
  }

  BuildResult take_result() {
    return BuildResult{std::move(dag_), std::move(log_), round_, {}};
  }

 private:
  // ---- recalc wave: reach sets down, loads up -----------------------------

  void start_wave(Endpoint& ep) {
    wave_ = round_;
    wave_base_loads_.clear();
    wave_base_got_ = 0;
    for (NodeId c : dag_.children[0]) ep.send(c, RecalcLoads{wave_, {}});
  }

  void wave_reset(NodeId v, int wave) {
    const auto i = static_cast<std::size_t>(v);
    if (wave_seen_[i] == wave) return;
    wave_seen_[i] = wave;
    wave_parents_heard_[i] = 0;
    wave_reach_tmp_[i].clear();
    wave_child_share_[i].assign(dag_.children[i].size(), 0.0);
    wave_child_got_[i] = 0;
  }

  void handle_recalc(Endpoint& ep, const Message& m) {
    const auto& rc = std::get<RecalcLoads>(m.body);
    const NodeId v = ep.self();
    const auto i = static_cast<std::size_t>(v);
    wave_reset(v, rc.wave);
    merge_into(wave_reach_tmp_[i], rc.reach);
    if (++wave_parents_heard_[i] < static_cast<int>(dag_.parents[i].size())) return;
    if (contains(dag_.parents[i], kBase)) merge_into(wave_reach_tmp_[i], {v});
    reach_[i] = wave_reach_tmp_[i];
    for (NodeId c : dag_.children[i]) ep.send(c, RecalcLoads{rc.wave, reach_[i]});
    if (dag_.children[i].empty()) {
      load_[i] = 1.0;
      report_load(ep, v, rc.wave);
    }
  }

  void handle_load_report(Endpoint& ep, const Message& m) {
    const auto& lr = std::get<LoadReport>(m.body);
    const NodeId v = ep.self();
    if (v == kBase) {
      wave_base_loads_[m.src] = lr.share;
      if (++wave_base_got_ == static_cast<int>(dag_.children[0].size())) {
        base_child_loads_ = wave_base_loads_;
        lights_tried_.clear();
        tried_for_ = -1;
        start_round(ep);
      }
      return;
    }
    const auto i = static_cast<std::size_t>(v);
    const auto& cs = dag_.children[i];
    const auto slot = static_cast<std::size_t>(
        std::lower_bound(cs.begin(), cs.end(), m.src) - cs.begin());
    wave_child_share_[i][slot] = lr.share;
    if (++wave_child_got_[i] < static_cast<int>(cs.size())) return;
    double acc = 1.0;   // summed in child-id order: bit-identical to the oracle
    for (double s : wave_child_share_[i]) acc += s;
    load_[i] = acc;
    report_load(ep, v, lr.wave);
  }

  void report_load(Endpoint& ep, NodeId v, int wave) {
    const auto& ps = dag_.parents[static_cast<std::size_t>(v)];
    const double share = load_[static_cast<std::size_t>(v)] / static_cast<double>(ps.size());
    for (NodeId p : ps) ep.send(p, LoadReport{wave, share});
  }

  // ---- round control at the base ------------------------------------------

  // A failed pairing does not write the heavy child off: the next-lightest
  // neighbouring child is tried, and only when every neighbour failed is the
  // heavy child retired. Any successful round resets the ladder, because all
  // loads move.
  void start_round(Endpoint& ep) {
    NodeId heavy = -1;
    NodeId light = -1;
    while (true) {
      heavy = pick_heavy();
      if (heavy < 0) return;   // nothing left to try: the builder quiesces
      if (tried_for_ != heavy) {
        lights_tried_.clear();
        tried_for_ = heavy;
      }
      light = pick_light(heavy);
      if (light >= 0) break;
      eligible_[static_cast<std::size_t>(heavy)] = 0;
      tried_for_ = -1;
    }
    ++round_;
    heavy_ = heavy;
    light_ = light;
    divert_goal_ = (base_child_loads_.at(heavy) - base_child_loads_.at(light)) / 2.0;
    candidates_.clear();
    collecting_ = true;
    ep.send(heavy, SiblingSearch{round_, heavy, light, divert_goal_});
    ep.set_timer(t1_, round_);
  }

  void round_failed(Endpoint& ep) {
    lights_tried_.push_back(light_);
    start_round(ep);
  }

  NodeId pick_heavy() const {
    NodeId best = -1;
    for (const auto& [c, ld] : base_child_loads_) {
      if (!eligible_[static_cast<std::size_t>(c)]) continue;
      if (best < 0 || ld > base_child_loads_.at(best)) best = c;
    }
    return best;
  }

  NodeId pick_light(NodeId heavy) const {
    NodeId best = -1;
    for (const auto& [c, ld] : base_child_loads_) {
      if (c == heavy || !g_.has_edge(heavy, c)) continue;
      if (std::find(lights_tried_.begin(), lights_tried_.end(), c) != lights_tried_.end())
        continue;
      if (best < 0 || ld < base_child_loads_.at(best)) best = c;
    }
    return best;
  }

  // ---- search flood over the heavy subtree ---------------------------------

  void handle_search(Endpoint& ep, const Message& m) {
    const auto& sf = std::get<SiblingSearch>(m.body);
    const NodeId v = ep.self();
    const auto i = static_cast<std::size_t>(v);
    if (sf_seen_[i] == sf.round) return;
    sf_seen_[i] = sf.round;
    for (NodeId c : dag_.children[i]) ep.send(c, m.body);
    if (!contains(reach_[i], sf.heavy) || contains(reach_[i], sf.light)) return;
    bool crossing = false;
    for (NodeId u : g_.neighbors(v)) {
      if (is_bridge_pair(g_, dag_, reach_, sf.heavy, sf.light, v, u)) {
        crossing = true;
        break;
      }
    }
    if (!crossing) return;
    const double ldc = diverted_load(dag_, load_, v, pre_add_);
    if (ldc < sf.divert_goal) ep.send_to_base(SiblingCandidate{sf.round, v, ldc});
  }

  void handle_candidate(const Message& m) {
    const auto& c = std::get<SiblingCandidate>(m.body);
    if (collecting_ && c.round == round_) candidates_.push_back(c);
  }

  // ---- cascade -------------------------------------------------------------

  void handle_select(Endpoint& ep, const Message& m) {
    const auto& sel = std::get<SiblingSelect>(m.body);
    const NodeId v = ep.self();
    if (v != sel.selected) {
      ep.send(route_next_hop(names_, spt_, v, sel.target_id), m.body);
      return;
    }
    // First edge of the cascade: among the crossing neighbours that pass
    // every acceptance check, the one leaving the base children closest to
    // even becomes the new parent (ties fall to the smallest id).
    NodeId target = -1;
    double best = std::numeric_limits<double>::infinity();
    for (NodeId u : g_.neighbors(v)) {
      if (!is_bridge_pair(g_, dag_, reach_, heavy_, light_, v, u)) continue;
      const double score = edge_score(u, v);
      if (score < best) {
        best = score;
        target = u;
      }
    }
    if (target < 0) {
      ep.send_to_base(SearchAck{sel.round, v, sel.divert_left, 0});
      return;
    }
    const double ldc = diverted_load(dag_, load_, v, pre_add_);
    chain_stamp_[static_cast<std::size_t>(v)] = sel.round;
    accept_edge(target, v, sel.round, ldc);
    continue_chain(ep, v, sel.round, sel.divert_left - ldc, sel.chain_len + 1);
  }

  void handle_add_sibling(Endpoint& ep, const Message& m) {
    const auto& as = std::get<AddSibling>(m.body);
    const NodeId v = ep.self();
    if (dag_.depth[static_cast<std::size_t>(m.src)] == dag_.depth[static_cast<std::size_t>(v)]) {
      // Extension offer from a chain sibling (validated by the sender): the
      // sender becomes this node's parent and the chain moves here.
      const double ldc = diverted_load(dag_, load_, v, pre_add_);
      chain_stamp_[static_cast<std::size_t>(v)] = as.round;
      accept_edge(m.src, v, as.round, ldc);
      continue_chain(ep, v, as.round, as.divert_left - ldc, as.chain_len + 1);
    } else {
      // Descent token from a parent: no edge here, look for bridges below.
      continue_chain(ep, v, as.round, as.divert_left, as.chain_len);
    }
  }

  void continue_chain(Endpoint& ep, NodeId v, int round, double left, int len) {
    const auto i = static_cast<std::size_t>(v);
    if (len < k_) {
      // Sideways first: heavy-side equal-depth neighbours whose diverted load
      // fits the remaining budget, best fit first.
      std::vector<std::pair<double, NodeId>> order;
      for (NodeId u : g_.neighbors(v)) {
        const auto j = static_cast<std::size_t>(u);
        if (dag_.depth[j] != dag_.depth[i] || chain_stamp_[j] == round) continue;
        if (!contains(reach_[j], heavy_) || contains(reach_[j], light_)) continue;
        const double ldc = diverted_load(dag_, load_, u, pre_add_);
        if (ldc <= left) order.emplace_back(-ldc, u);
      }
      std::sort(order.begin(), order.end());
      for (const auto& [neg_ldc, u] : order) {
        if (validate_edge(v, u)) {
          ep.send(u, AddSibling{round, left, len});
          return;
        }
      }
      // Downward: hand the token to the heaviest child.
      NodeId child = -1;
      for (NodeId c : dag_.children[i]) {
        if (child < 0 || load_[static_cast<std::size_t>(c)] > load_[static_cast<std::size_t>(child)])
          child = c;
      }
      if (child >= 0) {
        ep.send(child, AddSibling{round, left, len});
        return;
      }
    }
    ep.send_to_base(SearchAck{round, v, left, len});
  }

  void handle_ack(Endpoint& ep, const Message& m) {
    const auto& ack = std::get<SearchAck>(m.body);
    if (ack.round != round_) return;
    if (ack.chain_len > 0) {
      start_wave(ep);   // loads and reach sets are stale now
    } else {
      round_failed(ep);
    }
  }

  // ---- edge acceptance ------------------------------------------------------

  // All checks for a tentative edge parent -> child: not a duplicate, keeps
  // the DAG acyclic, keeps every node's path spread within k, the light child
  // ends up strictly below the heavy child's previous load, and the spread of
  // the base children's loads strictly tightens. The last check is what makes
  // the balance factor monotone: an edge can leak load onto third subtrees
  // through shared descendants, and such an edge may pass the two-party test
  // while making the overall balance worse.
  bool validate_edge(NodeId parent, NodeId child) {
    return edge_score(parent, child) < std::numeric_limits<double>::infinity();
  }

  // Post-add square sum of the base-child shares when every acceptance check
  // passes, infinity otherwise: lower scores mean better overall balance.
  double edge_score(NodeId parent, NodeId child) {
    const double inf = std::numeric_limits<double>::infinity();
    const auto ci = static_cast<std::size_t>(child);
    if (contains(dag_.parents[ci], parent)) return inf;
    if (reaches(child, parent)) return inf;
    const LoadMap before = compute_load_oracle(dag_);
    add_edge_raw(parent, child);
    double score = inf;
    bool ok = true;
    if (k_ != kSaturationK) {
      const auto ranges = path_length_ranges(dag_);
      for (const auto& r : ranges) {
        if (r.longest - r.shortest > k_) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      const LoadMap after = compute_load_oracle(dag_);
      if (after.load[static_cast<std::size_t>(light_)] <
          before.load[static_cast<std::size_t>(heavy_)]) {
        const double s = sq_sum(after);
        if (s < sq_sum(before)) score = s;
      }
    }
    remove_edge_raw(parent, child);
    return score;
  }

  // Sum of squared base-child shares; their total is fixed at n, so a smaller
  // square sum is exactly a larger balance factor.
  static double sq_sum(const LoadMap& lm) {
    double s = 0.0;
    for (const auto& [c, ld] : lm.base_child_loads) s += ld * ld;
    return s;
  }

  bool reaches(NodeId from, NodeId to) {
    std::fill(scratch_.begin(), scratch_.end(), 0);
    std::vector<NodeId> stack{from};
    scratch_[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (NodeId c : dag_.children[static_cast<std::size_t>(v)]) {
        if (!scratch_[static_cast<std::size_t>(c)]) {
          scratch_[static_cast<std::size_t>(c)] = 1;
          stack.push_back(c);
        }
      }
    }
    return false;
  }

  void add_edge_raw(NodeId parent, NodeId child) {
    auto& ps = dag_.parents[static_cast<std::size_t>(child)];
    ps.insert(std::lower_bound(ps.begin(), ps.end(), parent), parent);
    auto& cs = dag_.children[static_cast<std::size_t>(parent)];
    cs.insert(std::lower_bound(cs.begin(), cs.end(), child), child);
  }

  void remove_edge_raw(NodeId parent, NodeId child) {
    auto& ps = dag_.parents[static_cast<std::size_t>(child)];
    ps.erase(std::lower_bound(ps.begin(), ps.end(), parent));
    auto& cs = dag_.children[static_cast<std::size_t>(parent)];
    cs.erase(std::lower_bound(cs.begin(), cs.end(), child));
  }

  void accept_edge(NodeId parent, NodeId child, int round, double ldc) {
    add_edge_raw(parent, child);
    log_.push_back(SiblingEdge{round, child, parent,
                               dag_.depth[static_cast<std::size_t>(child)], ldc});
  }

  static void merge_into(std::vector<NodeId>& dst, const std::vector<NodeId>& src) {
    for (NodeId x : src) {
      auto it = std::lower_bound(dst.begin(), dst.end(), x);
      if (it == dst.end() || *it != x) dst.insert(it, x);
    }
  }

  const ConnectivityGraph& g_;
  const SpanningDag& spt_;
  const NameTable& names_;
  SpanningDag dag_;
  int k_;
  bool pre_add_;
  Tick t1_;

  std::vector<double> load_;
  std::map<NodeId, double> base_child_loads_;
  std::vector<std::vector<NodeId>> reach_;
  std::vector<double> energy_;
  std::vector<char> eligible_;

  int round_ = 0;
  NodeId heavy_ = -1;
  NodeId light_ = -1;
  double divert_goal_ = 0.0;
  bool collecting_ = false;
  std::vector<SiblingCandidate> candidates_;
  std::vector<NodeId> lights_tried_;
  NodeId tried_for_ = -1;

  int wave_ = -1;
  std::vector<int> wave_seen_;
  std::vector<int> wave_parents_heard_;
  std::vector<std::vector<NodeId>> wave_reach_tmp_;
  std::vector<std::vector<double>> wave_child_share_;
  std::vector<int> wave_child_got_;
  std::map<NodeId, double> wave_base_loads_;
  int wave_base_got_ = 0;

  std::vector<int> sf_seen_;
  std::vector<int> chain_stamp_;
  std::vector<char> scratch_;

  std::vector<SiblingEdge> log_;
};

}  // namespace detail

inline BuildResult build_kdag(const ConnectivityGraph& g, const SpanningDag& spd, int k,
                              BuilderConfig cfg = {}) {
  if (spd.kind != DagKind::Spd) throw std::invalid_argument("build_kdag: needs the shortest-path DAG");
  if (k < 0) throw std::invalid_argument("build_kdag: k must be >= 0");
  const SpanningDag spt = extract_spt(spd);

  KernelConfig name_cfg = cfg.kernel;
  name_cfg.seed = detail::mix_seed(cfg.kernel.seed, 0x6e616d65);
  name_cfg.record_trace = false;
  const NameTable names = run_naming(g, spt, name_cfg);

  const int diameter = hop_diameter(g);

  KernelConfig run_cfg = cfg.kernel;
  run_cfg.seed = detail::mix_seed(cfg.kernel.seed, 0x6b646167);
  run_cfg.route_parent.assign(static_cast<std::size_t>(g.node_count()), -1);
  for (NodeId v = 1; v < g.node_count(); ++v)
    run_cfg.route_parent[static_cast<std::size_t>(v)] = spt.parents[static_cast<std::size_t>(v)][0];

  const Tick t1 = Tick(2) * run_cfg.max_delay * diameter;
  detail::BuilderProtocol proto(g, spd, spt, names, k, cfg.divert_pre_add_parents, t1);
  RunResult rr;
  try {
    rr = run_protocol(g, proto, run_cfg);
  } catch (const EventCapExceeded& e) {
    throw ProtocolStall(std::string("builder: ") + e.what());
  }
  BuildResult res = proto.take_result();
  res.trace = std::move(rr.trace);
  return res;
}

inline nlohmann::json edge_log_json(const std::vector<SiblingEdge>& log) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : log)
    arr.push_back({{"round", e.round}, {"from", e.from}, {"to", e.to}, {"level", e.level},
                   {"ldc", e.ldc}});
  return arr;
}

}  // namespace kdag
