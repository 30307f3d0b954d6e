#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kdag/builder.hpp"
#include "kdag/load.hpp"
#include "oracles.hpp"

using namespace kdag;

namespace {

// Base with two relays; node 4 reports to both relays, node 3 to one.
SpanningDag shared_leaf_dag() {
  SpanningDag d;
  d.kind = DagKind::KDag;
  d.depth = {0, 1, 1, 2, 2};
  d.parents = {{}, {0}, {0}, {1}, {1, 2}};
  d.children = {{1, 2}, {3, 4}, {4}, {}, {}};
  return d;
}

}  // namespace

TEST_CASE("loads split evenly across parents and add up through relays") {
  const SpanningDag d = shared_leaf_dag();
  const LoadMap lm = compute_load_oracle(d);
  REQUIRE(lm.load[3] == 1.0);
  REQUIRE(lm.load[4] == 1.0);
  REQUIRE(lm.load[1] == 2.5);   // own 1 + leaf 1 + half of the shared leaf
  REQUIRE(lm.load[2] == 1.5);
  REQUIRE(edge_share(d, lm, 4) == 0.5);
  REQUIRE(edge_share(d, lm, 1) == 2.5);
  REQUIRE(lm.base_child_loads.at(1) == 2.5);
  REQUIRE(lm.base_child_loads.at(2) == 1.5);
}

TEST_CASE("base-child loads conserve the node count") {
  for (std::uint64_t seed : {3ULL, 14ULL, 159ULL}) {
    const ConnectivityGraph g = generate_instance(45, 220.0, 50.0, seed);
    const SpanningDag spd = build_spd(g);
    const LoadMap lm = compute_load_oracle(spd);
    double total = 0.0;
    for (const auto& [child, ld] : lm.base_child_loads) total += ld;
    REQUIRE(total == Catch::Approx(static_cast<double>(g.n)).margin(1e-9));
  }
}

TEST_CASE("distributed load calculation matches the recursive oracle exactly") {
  for (std::uint64_t seed : {2ULL, 9ULL}) {
    const ConnectivityGraph g = generate_instance(35, 180.0, 50.0, seed);
    const SpanningDag spd = build_spd(g);
    const std::vector<double> expect = oracle::loads(spd);
    for (std::uint64_t kernel_seed : {1ULL, 31ULL, 777ULL}) {
      KernelConfig cfg;
      cfg.seed = kernel_seed;
      const LoadMap lm = run_load_calc(g, spd, cfg);
      for (NodeId v = 1; v < g.node_count(); ++v)
        REQUIRE(lm.load[static_cast<std::size_t>(v)] == expect[static_cast<std::size_t>(v)]);
      const LoadMap oracle_lm = compute_load_oracle(spd);
      REQUIRE(lm.base_child_loads == oracle_lm.base_child_loads);
    }
  }
}

TEST_CASE("distributed load calculation agrees on a multi-parent topology") {
  const ConnectivityGraph g = generate_instance(30, 150.0, 50.0, 4);
  const SpanningDag spd = build_spd(g);
  const BuildResult built = build_kdag(g, spd, kSaturationK);
  const LoadMap expect = compute_load_oracle(built.dag);
  const LoadMap lm = run_load_calc(g, built.dag);
  for (NodeId v = 1; v < g.node_count(); ++v)
    REQUIRE(lm.load[static_cast<std::size_t>(v)] == expect.load[static_cast<std::size_t>(v)]);
}

TEST_CASE("balance factor rewards even loads and ignores scale") {
  REQUIRE(balance_factor({3.0, 1.0}) == Catch::Approx(0.8).margin(1e-15));
  REQUIRE(balance_factor({5.0, 5.0, 5.0}) == Catch::Approx(1.0).margin(1e-15));
  const std::vector<double> loads{4.0, 2.0, 7.0};
  const std::vector<double> scaled{8.0, 4.0, 14.0};
  REQUIRE(balance_factor(loads) == Catch::Approx(balance_factor(scaled)).margin(1e-15));
  REQUIRE(balance_factor(loads) > 0.0);
  REQUIRE(balance_factor(loads) <= 1.0);
  REQUIRE_THROWS_AS(balance_factor(std::vector<double>{}), EmptyChildren);

  const LoadMap lm = compute_load_oracle(shared_leaf_dag());
  REQUIRE(balance_factor(lm) == Catch::Approx(16.0 / 17.0).margin(1e-15));
}
