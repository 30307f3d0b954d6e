#include <catch2/catch_amalgamated.hpp>

#include <variant>
#include <vector>

#include "kdag/graph.hpp"
#include "kdag/kernel.hpp"

using namespace kdag;

namespace {

ConnectivityGraph pair_graph() {
  std::vector<Vec2> pos{{0.0, 0.0}, {3.0, 0.0}};
  return make_graph(std::move(pos), 10.0, 5.0);
}

ConnectivityGraph line_graph(int hops) {
  std::vector<Vec2> pos;
  for (int i = 0; i <= hops; ++i) pos.push_back({4.0 * i, 0.0});
  return make_graph(std::move(pos), 4.0 * hops + 1.0, 5.0);
}

// Sends a burst of numbered messages from the base and records arrivals.
struct BurstProtocol : Protocol {
  int burst;
  std::vector<int> seen;
  explicit BurstProtocol(int b) : burst(b) {}
  void on_start(Endpoint& ep) override {
    if (ep.self() != kBase) return;
    for (int i = 1; i <= burst; ++i) ep.send(1, DepthAnnounce{i});
  }
  void on_message(Endpoint&, const Message& m) override {
    seen.push_back(std::get<DepthAnnounce>(m.body).depth);
  }
};

// One message and one timer armed to collide on the same tick.
struct PhaseProtocol : Protocol {
  std::vector<std::string> order;
  void on_start(Endpoint& ep) override {
    if (ep.self() != kBase) return;
    ep.send(1, DepthAnnounce{42});
    ep.set_timer(1, 7);
  }
  void on_message(Endpoint&, const Message&) override { order.push_back("message"); }
  void on_timer(Endpoint&, const TimerHandle& h) override {
    order.push_back("timer:" + std::to_string(h.tag));
  }
};

// Arms two timers for the same expiry, cancels a third.
struct TimerProtocol : Protocol {
  std::vector<int> fired;
  void on_start(Endpoint& ep) override {
    if (ep.self() != kBase) return;
    ep.set_timer(3, 1);
    ep.set_timer(3, 2);
    const TimerHandle doomed = ep.set_timer(5, 3);
    ep.cancel_timer(doomed);
  }
  void on_message(Endpoint&, const Message&) override {}
  void on_timer(Endpoint&, const TimerHandle& h) override { fired.push_back(h.tag); }
};

// Ping-pong forever; only the event cap can stop it.
struct StormProtocol : Protocol {
  void on_start(Endpoint& ep) override {
    if (ep.self() == kBase) ep.send(1, DepthAnnounce{0});
  }
  void on_message(Endpoint& ep, const Message& m) override {
    ep.send(m.src, DepthAnnounce{std::get<DepthAnnounce>(m.body).depth + 1});
  }
};

struct BadSendProtocol : Protocol {
  void on_start(Endpoint& ep) override {
    if (ep.self() == kBase) ep.send(3, DepthAnnounce{1});   // three hops away
  }
  void on_message(Endpoint&, const Message&) override {}
};

// Sends a routed report from the line's far end toward the base.
struct RoutedProtocol : Protocol {
  NodeId far;
  std::vector<Message> at_base;
  explicit RoutedProtocol(NodeId f) : far(f) {}
  void on_start(Endpoint& ep) override {
    if (ep.self() == far) ep.send_to_base(SiblingCandidate{4, far, 2.5});
  }
  void on_message(Endpoint& ep, const Message& m) override {
    if (ep.self() == kBase) at_base.push_back(m);
  }
};

// Floods from the base so runs have enough events to compare traces.
struct FloodProtocol : Protocol {
  void on_start(Endpoint& ep) override {
    if (ep.self() == kBase)
      for (NodeId nb : ep.neighbors()) ep.send(nb, DepthAnnounce{1});
  }
  void on_message(Endpoint& ep, const Message& m) override {
    const int d = std::get<DepthAnnounce>(m.body).depth;
    if (d < 3)
      for (NodeId nb : ep.neighbors()) ep.send(nb, DepthAnnounce{d + 1});
  }
};

}  // namespace

TEST_CASE("messages on one link arrive in send order") {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const ConnectivityGraph g = pair_graph();
    BurstProtocol proto(5);
    KernelConfig cfg;
    cfg.seed = seed;
    run_protocol(g, proto, cfg);
    REQUIRE(proto.seen == std::vector<int>{1, 2, 3, 4, 5});
  }
}

TEST_CASE("same-tick timers fire after messages and in creation order") {
  const ConnectivityGraph g = pair_graph();
  PhaseProtocol proto;
  KernelConfig cfg;
  cfg.max_delay = 1;   // every hop takes exactly one tick
  run_protocol(g, proto, cfg);
  REQUIRE(proto.order == std::vector<std::string>{"message", "timer:7"});

  TimerProtocol timers;
  run_protocol(g, timers, cfg);
  REQUIRE(timers.fired == std::vector<int>{1, 2});
}

TEST_CASE("event cap stops a runaway protocol") {
  const ConnectivityGraph g = pair_graph();
  StormProtocol proto;
  KernelConfig cfg;
  cfg.event_cap = 500;
  REQUIRE_THROWS_AS(run_protocol(g, proto, cfg), EventCapExceeded);
}

TEST_CASE("sends outside the neighborhood are rejected") {
  const ConnectivityGraph g = line_graph(3);
  BadSendProtocol proto;
  REQUIRE_THROWS_AS(run_protocol(g, proto, {}), UndeliverableMessage);

  RoutedProtocol unrouted(3);
  REQUIRE_THROWS_AS(run_protocol(g, unrouted, {}), UndeliverableMessage);
}

TEST_CASE("routed reports reach the base and only the final hop is traced") {
  const ConnectivityGraph g = line_graph(3);
  RoutedProtocol proto(3);
  KernelConfig cfg;
  cfg.route_parent = {0, 0, 1, 2};
  const RunResult res = run_protocol(g, proto, cfg);
  REQUIRE(proto.at_base.size() == 1);
  const auto& msg = proto.at_base[0];
  REQUIRE(msg.src == 3);
  REQUIRE(msg.dst == kBase);
  const auto& c = std::get<SiblingCandidate>(msg.body);
  REQUIRE(c.round == 4);
  REQUIRE(c.candidate == 3);
  REQUIRE(c.divert_load == 2.5);
  int routed_events = 0;
  for (const auto& ev : res.trace)
    if (ev.msg.kind() == MessageKind::SiblingCandidate) ++routed_events;
  REQUIRE(routed_events == 1);
}

TEST_CASE("identical seeds replay identical traces") {
  const ConnectivityGraph g = generate_instance(12, 80.0, 40.0, 17);
  auto run_once = [&](std::uint64_t seed) {
    FloodProtocol proto;
    KernelConfig cfg;
    cfg.seed = seed;
    return run_protocol(g, proto, cfg);
  };
  const RunResult a = run_once(5);
  const RunResult b = run_once(5);
  REQUIRE(a.delivered == b.delivered);
  REQUIRE(a.end_tick == b.end_tick);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    REQUIRE(a.trace[i].tick == b.trace[i].tick);
    REQUIRE(a.trace[i].msg.src == b.trace[i].msg.src);
    REQUIRE(a.trace[i].msg.dst == b.trace[i].msg.dst);
  }
}
