#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "json.hpp"
#include "kdag/graph.hpp"

// Deterministic discrete-event simulation of per-node protocol handlers.
// Every send draws a link delay in [1, max_delay] from the run's seeded RNG;
// each directed link delivers in FIFO order; simultaneous deliveries are
// ordered by global send sequence, and timers fire after same-tick messages.
// A run is therefore a pure function of (graph, protocol, config).

namespace kdag {

using Tick = std::int64_t;

struct EventCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a single-hop send targets a non-neighbour, or a routed hop has
// no usable parent link.
struct UndeliverableMessage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wrapper used by protocol drivers when a run dies on the event cap.
struct ProtocolStall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --------------------------------------------------------------------------
// Message bodies, one struct per protocol message.

struct SubtreeSizeRequest {};                   // tree flood asking for subtree sizes

struct SubtreeSizeReport {                      // child -> parent, bottom-up
  int size = 0;
};

struct AssignIdRange {                          // parent -> child, top-down id handout
  int min_id = 0;
  int max_id = 0;
};

struct LoadReport {                             // child -> parent: this edge's load share
  int wave = 0;
  double share = 0.0;
};

struct SiblingSearch {                          // flood over the heavy child's subtree
  int round = 0;
  NodeId heavy = -1;
  NodeId light = -1;
  double divert_goal = 0.0;
};

struct SiblingCandidate {                       // candidate -> base (routed via tree)
  int round = 0;
  NodeId candidate = -1;
  double divert_load = 0.0;
};

struct SiblingSelect {                          // base -> winner, forwarded by id range
  int round = 0;
  NodeId selected = -1;
  int target_id = 0;
  double divert_left = 0.0;
  int chain_len = 0;
};

struct AddSibling {                             // chain extension / descent token
  int round = 0;
  double divert_left = 0.0;
  int chain_len = 0;
};

struct SearchAck {                              // chain end -> base (routed via tree)
  int round = 0;
  NodeId terminator = -1;
  double divert_left = 0.0;
  int chain_len = 0;
};

struct RecalcLoads {                            // base flood: rebuild reach sets + loads
  int wave = 0;
  std::vector<NodeId> reach;                    // base children that reach the sender
};

struct DepthAnnounce {                          // async BFS relaxation
  int depth = 0;
};

using MessageBody =
    std::variant<SubtreeSizeRequest, SubtreeSizeReport, AssignIdRange, LoadReport, SiblingSearch,
                 SiblingCandidate, SiblingSelect, AddSibling, SearchAck, RecalcLoads, DepthAnnounce>;

enum class MessageKind {
  SubtreeSizeRequest,
  SubtreeSizeReport,
  AssignIdRange,
  LoadReport,
  SiblingSearch,
  SiblingCandidate,
  SiblingSelect,
  AddSibling,
  SearchAck,
  RecalcLoads,
  DepthAnnounce,
};

inline const char* to_string(MessageKind k) {
  switch (k) {
    case MessageKind::SubtreeSizeRequest: return "subtree-size-request";
    case MessageKind::SubtreeSizeReport: return "subtree-size-report";
    case MessageKind::AssignIdRange: return "assign-id-range";
    case MessageKind::LoadReport: return "load-report";
    case MessageKind::SiblingSearch: return "sibling-search";
    case MessageKind::SiblingCandidate: return "sibling-candidate";
    case MessageKind::SiblingSelect: return "sibling-select";
    case MessageKind::AddSibling: return "add-sibling";
    case MessageKind::SearchAck: return "search-ack";
    case MessageKind::RecalcLoads: return "recalc-loads";
    case MessageKind::DepthAnnounce: return "depth-announce";
  }
  return "?";
}

struct Message {
  NodeId src = -1;   // original sender
  NodeId dst = -1;   // final destination
  MessageBody body;

  MessageKind kind() const { return static_cast<MessageKind>(body.index()); }
};

// Only these kinds may travel multi-hop (toward the base, over tree parent
// links); everything else must be sent to a direct neighbour.
inline bool is_routed_kind(MessageKind k) {
  return k == MessageKind::SiblingCandidate || k == MessageKind::SearchAck;
}

inline nlohmann::json payload_json(const MessageBody& body) {
  using nlohmann::json;
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SubtreeSizeRequest>) return json::object();
        else if constexpr (std::is_same_v<T, SubtreeSizeReport>) return json{{"size", b.size}};
        else if constexpr (std::is_same_v<T, AssignIdRange>)
          return json{{"min_id", b.min_id}, {"max_id", b.max_id}};
        else if constexpr (std::is_same_v<T, LoadReport>)
          return json{{"wave", b.wave}, {"share", b.share}};
        else if constexpr (std::is_same_v<T, SiblingSearch>)
          return json{{"round", b.round}, {"heavy", b.heavy}, {"light", b.light},
                      {"divert_goal", b.divert_goal}};
        else if constexpr (std::is_same_v<T, SiblingCandidate>)
          return json{{"round", b.round}, {"candidate", b.candidate}, {"divert_load", b.divert_load}};
        else if constexpr (std::is_same_v<T, SiblingSelect>)
          return json{{"round", b.round}, {"selected", b.selected}, {"target_id", b.target_id},
                      {"divert_left", b.divert_left}, {"chain_len", b.chain_len}};
        else if constexpr (std::is_same_v<T, AddSibling>)
          return json{{"round", b.round}, {"divert_left", b.divert_left}, {"chain_len", b.chain_len}};
        else if constexpr (std::is_same_v<T, SearchAck>)
          return json{{"round", b.round}, {"terminator", b.terminator},
                      {"divert_left", b.divert_left}, {"chain_len", b.chain_len}};
        else if constexpr (std::is_same_v<T, RecalcLoads>)
          return json{{"wave", b.wave}, {"reach", b.reach}};
        else
          return json{{"depth", b.depth}};
      },
      body);
}

struct TimerHandle {
  std::uint64_t id = 0;
  NodeId owner = -1;
  Tick expiry = 0;
  int tag = 0;
};

struct TraceEvent {
  Tick tick = 0;
  Message msg;
};

using Trace = std::vector<TraceEvent>;

inline nlohmann::json to_json(const TraceEvent& e) {
  return nlohmann::json{{"tick", e.tick}, {"kind", to_string(e.msg.kind())}, {"src", e.msg.src},
                        {"dst", e.msg.dst}, {"payload", payload_json(e.msg.body)}};
}

struct KernelConfig {
  std::uint64_t seed = 1;
  int max_delay = 5;                    // per-hop delay upper bound, ticks
  std::uint64_t event_cap = 50'000'000; // deliveries + timer fires before giving up
  bool record_trace = true;
  std::vector<NodeId> route_parent;     // tree parent per node; empty disables routing
};

struct RunResult {
  Tick end_tick = 0;
  std::uint64_t delivered = 0;          // handler deliveries (relay hops excluded)
  Trace trace;
};

class Endpoint;

struct Protocol {
  virtual ~Protocol() = default;
  virtual void on_start(Endpoint&) {}
  virtual void on_message(Endpoint&, const Message&) = 0;
  virtual void on_timer(Endpoint&, const TimerHandle&) {}
};

class Kernel {
 public:
  Kernel(const ConnectivityGraph& g, Protocol& proto, KernelConfig cfg)
      : g_(g), proto_(proto), cfg_(std::move(cfg)), rng_(cfg_.seed) {
    if (cfg_.max_delay < 1) throw std::invalid_argument("Kernel: max_delay must be >= 1");
  }

  RunResult run();

 private:
  friend class Endpoint;

  struct MsgEvent {
    Message msg;
    NodeId hop_dst = -1;   // where this hop lands; == msg.dst on the final hop
  };

  struct QEntry {
    Tick at = 0;
    int phase = 0;         // 0 = message, 1 = timer: timers fire after same-tick messages
    std::uint64_t seq = 0;
    std::uint64_t idx = 0;

    bool operator>(const QEntry& o) const {
      if (at != o.at) return at > o.at;
      if (phase != o.phase) return phase > o.phase;
      return seq > o.seq;
    }
  };

  void send(NodeId from, NodeId to, MessageBody body);
  void send_to_base(NodeId from, MessageBody body);
  TimerHandle set_timer(NodeId owner, Tick delay, int tag);
  void cancel_timer(const TimerHandle& h);
  void schedule_hop(NodeId hop_src, NodeId hop_dst, Message msg);
  void deliver(const MsgEvent& ev);

  static std::uint64_t link_key(NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  const ConnectivityGraph& g_;
  Protocol& proto_;
  KernelConfig cfg_;
  std::mt19937_64 rng_;
  Tick now_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t delivered_ = 0;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue_;
  std::vector<MsgEvent> msg_events_;
  std::vector<TimerHandle> timers_;
  std::vector<char> timer_cancelled_;
  std::unordered_map<std::uint64_t, Tick> link_busy_until_;
  Trace trace_;
};

// Per-node view handed to protocol handlers.
class Endpoint {
 public:
  Endpoint(Kernel& k, NodeId self) : k_(k), self_(self) {}

  NodeId self() const { return self_; }
  Tick now() const { return k_.now_; }
  int node_count() const { return k_.g_.node_count(); }
  const std::vector<NodeId>& neighbors() const { return k_.g_.neighbors(self_); }

  void send(NodeId dst, MessageBody body) { k_.send(self_, dst, std::move(body)); }
  // Multi-hop unicast toward the base over tree parent links.
  void send_to_base(MessageBody body) { k_.send_to_base(self_, std::move(body)); }
  TimerHandle set_timer(Tick delay, int tag) { return k_.set_timer(self_, delay, tag); }
  void cancel_timer(const TimerHandle& h) { k_.cancel_timer(h); }

 private:
  Kernel& k_;
  NodeId self_;
};

inline void Kernel::send(NodeId from, NodeId to, MessageBody body) {
  if (to < 0 || to >= g_.node_count() || to == from || !g_.has_edge(from, to))
    throw UndeliverableMessage("send: node " + std::to_string(from) + " has no link to " +
                               std::to_string(to));
  schedule_hop(from, to, Message{from, to, std::move(body)});
}

inline void Kernel::send_to_base(NodeId from, MessageBody body) {
  Message msg{from, kBase, std::move(body)};
  if (!is_routed_kind(msg.kind()))
    throw UndeliverableMessage("send_to_base: kind is single-hop only");
  if (cfg_.route_parent.empty())
    throw UndeliverableMessage("send_to_base: no route table configured");
  const NodeId next = cfg_.route_parent[static_cast<std::size_t>(from)];
  if (next < 0 || !g_.has_edge(from, next))
    throw UndeliverableMessage("send_to_base: node " + std::to_string(from) + " has no parent link");
  schedule_hop(from, next, std::move(msg));
}

inline void Kernel::schedule_hop(NodeId hop_src, NodeId hop_dst, Message msg) {
  const Tick delay = 1 + static_cast<Tick>(rng_() % static_cast<std::uint64_t>(cfg_.max_delay));
  Tick at = now_ + delay;
  auto& busy = link_busy_until_[link_key(hop_src, hop_dst)];
  if (at < busy) at = busy;   // FIFO per directed link
  busy = at;
  msg_events_.push_back(MsgEvent{std::move(msg), hop_dst});
  queue_.push(QEntry{at, 0, seq_++, msg_events_.size() - 1});
}

inline TimerHandle Kernel::set_timer(NodeId owner, Tick delay, int tag) {
  TimerHandle h{timers_.size(), owner, now_ + delay, tag};
  timers_.push_back(h);
  timer_cancelled_.push_back(0);
  queue_.push(QEntry{h.expiry, 1, seq_++, h.id});
  return h;
}

inline void Kernel::cancel_timer(const TimerHandle& h) {
  if (h.id < timers_.size()) timer_cancelled_[h.id] = 1;
}

inline void Kernel::deliver(const MsgEvent& ev) {
  if (ev.hop_dst != ev.msg.dst) {
    // Relay: forward one more hop toward the base without waking the handler.
    const NodeId next = cfg_.route_parent[static_cast<std::size_t>(ev.hop_dst)];
    if (next < 0 || !g_.has_edge(ev.hop_dst, next))
      throw UndeliverableMessage("relay: node " + std::to_string(ev.hop_dst) + " has no parent link");
    schedule_hop(ev.hop_dst, next, ev.msg);
    return;
  }
  ++delivered_;
  if (cfg_.record_trace) trace_.push_back(TraceEvent{now_, ev.msg});
  Endpoint ep(*this, ev.msg.dst);
  proto_.on_message(ep, ev.msg);
}

inline RunResult Kernel::run() {
  for (NodeId v = 0; v < g_.node_count(); ++v) {
    Endpoint ep(*this, v);
    proto_.on_start(ep);
  }
  while (!queue_.empty()) {
    const QEntry e = queue_.top();
    queue_.pop();
    now_ = e.at;
    if (++processed_ > cfg_.event_cap)
      throw EventCapExceeded("kernel: event cap of " + std::to_string(cfg_.event_cap) + " exceeded");
    if (e.phase == 0) {
      // Copy: handlers may grow msg_events_ and invalidate references.
      const MsgEvent ev = msg_events_[e.idx];
      deliver(ev);
    } else {
      if (timer_cancelled_[e.idx]) continue;
      const TimerHandle h = timers_[e.idx];
      Endpoint ep(*this, h.owner);
      proto_.on_timer(ep, h);
    }
  }
  return RunResult{now_, delivered_, std::move(trace_)};
}

inline RunResult run_protocol(const ConnectivityGraph& g, Protocol& proto, KernelConfig cfg = {}) {
  return Kernel(g, proto, std::move(cfg)).run();
}

}  // namespace kdag
