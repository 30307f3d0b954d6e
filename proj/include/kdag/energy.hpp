#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdag/graph.hpp"
#include "kdag/load.hpp"

// Battery-driven lifetime simulation. Every sensor generates `rate` bits per
// one-hour round and forwards everything it carries to its parents under a
// routing policy; receiving and transmitting cost energy, the base pays
// nothing. Lifetime is the number of fully completed rounds before the first
// node cannot afford its round.

namespace kdag {

struct EnergyModel {
  double e_rx = 50e-9;    // J per received bit
  double e_tx = 250e-9;   // J per transmitted bit
  double rate = 40.0;     // bits generated per node per round (one hour)
  double e_init = 0.05;   // J per battery
};

// EVEN_SPLIT: equal share to every parent.
// PE: shares proportional to the parents' residual energy (the base counts as
//     infinite, so any node adjacent to the base sends everything there).
// MPE: all bits to the single parent with the best bottleneck residual along
//      its own best chain toward the base.
enum class RoutingPolicy { EVEN_SPLIT, PE, MPE };

inline const char* to_string(RoutingPolicy p) {
  switch (p) {
    case RoutingPolicy::EVEN_SPLIT: return "even";
    case RoutingPolicy::PE: return "pe";
    case RoutingPolicy::MPE: return "mpe";
  }
  return "?";
}

inline RoutingPolicy policy_from_string(const std::string& s) {
  if (s == "even" || s == "even_split") return RoutingPolicy::EVEN_SPLIT;
  if (s == "pe") return RoutingPolicy::PE;
  if (s == "mpe") return RoutingPolicy::MPE;
  throw std::invalid_argument("unknown policy: " + s);
}

struct SimConfig {
  RoutingPolicy policy = RoutingPolicy::MPE;
  EnergyModel model;
  int mpe_recompute_period = 1;   // rounds between MPE parent re-selections
  std::uint64_t seed = 0;         // unused by the deterministic policies; kept for the CLI
};

struct SimResult {
  long long rounds = 0;           // completed rounds == lifetime in hours
  NodeId bottleneck = -1;         // first node that could not finish a round
  std::vector<double> residual;   // J left when the network died
};

// Bottleneck residual toward the base: the best chain a node can pick is the
// one maximizing the minimum residual along it, and the base is unlimited.
inline std::vector<double> mpe_bottleneck(const SpanningDag& d,
                                          const std::vector<double>& residual) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> b(static_cast<std::size_t>(d.node_count()),
                        -std::numeric_limits<double>::infinity());
  for (NodeId v : topo_order(d)) {   // parents come first
    const auto i = static_cast<std::size_t>(v);
    if (v == kBase) {
      b[i] = inf;
      continue;
    }
    double up = -inf;
    for (NodeId p : d.parents[i]) up = std::max(up, b[static_cast<std::size_t>(p)]);
    b[i] = std::min(residual[i], up);
  }
  return b;
}

// Per-parent forwarding weights for one round, aligned with d.parents[v].
inline std::vector<std::vector<double>> policy_weights(const SpanningDag& d, RoutingPolicy pol,
                                                       const std::vector<double>& residual) {
  const auto m = static_cast<std::size_t>(d.node_count());
  std::vector<std::vector<double>> w(m);
  std::vector<double> bottleneck;
  if (pol == RoutingPolicy::MPE) bottleneck = mpe_bottleneck(d, residual);
  for (std::size_t v = 1; v < m; ++v) {
    const auto& ps = d.parents[v];
    auto& wv = w[v];
    wv.assign(ps.size(), 0.0);
    switch (pol) {
      case RoutingPolicy::EVEN_SPLIT: {
        for (auto& x : wv) x = 1.0 / static_cast<double>(ps.size());
        break;
      }
      case RoutingPolicy::PE: {
        double sum = 0.0;
        bool base_parent = false;
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (ps[j] == kBase) base_parent = true;
          sum += residual[static_cast<std::size_t>(ps[j])];
        }
        if (base_parent) {
          for (std::size_t j = 0; j < ps.size(); ++j)
            if (ps[j] == kBase) wv[j] = 1.0;
        } else if (sum > 0.0) {
          for (std::size_t j = 0; j < ps.size(); ++j)
            wv[j] = residual[static_cast<std::size_t>(ps[j])] / sum;
        } else {
          for (auto& x : wv) x = 1.0 / static_cast<double>(ps.size());
        }
        break;
      }
      case RoutingPolicy::MPE: {
        std::size_t best = 0;   // ties fall to the smallest parent id
        for (std::size_t j = 1; j < ps.size(); ++j) {
          if (bottleneck[static_cast<std::size_t>(ps[j])] >
              bottleneck[static_cast<std::size_t>(ps[best])])
            best = j;
        }
        wv[best] = 1.0;
        break;
      }
    }
  }
  return w;
}

namespace detail {

// Bits each node receives and sends in one round under the given weights.
inline void round_flow(const SpanningDag& d, const std::vector<NodeId>& rev_topo,
                       const std::vector<std::vector<double>>& w, double rate,
                       std::vector<double>& in, std::vector<double>& out) {
  std::fill(in.begin(), in.end(), 0.0);
  std::fill(out.begin(), out.end(), 0.0);
  for (NodeId v : rev_topo) {   // children before parents
    if (v == kBase) continue;
    const auto i = static_cast<std::size_t>(v);
    out[i] = rate + in[i];
    const auto& ps = d.parents[i];
    for (std::size_t j = 0; j < ps.size(); ++j)
      in[static_cast<std::size_t>(ps[j])] += out[i] * w[i][j];
  }
}

}  // namespace detail

// Feasibility tolerance: a round completes when every node can pay its cost
// up to this slack, which absorbs the drift of a few thousand subtractions.
inline constexpr double kRoundEnergyTol = 1e-12;

inline SimResult simulate_lifetime(const SpanningDag& d, SimConfig cfg = {}) {
  const auto& em = cfg.model;
  if (em.e_rx <= 0 || em.e_tx <= 0 || em.rate <= 0 || em.e_init <= 0)
    throw std::invalid_argument("simulate_lifetime: model constants must be positive");
  if (cfg.mpe_recompute_period < 1)
    throw std::invalid_argument("simulate_lifetime: recompute period must be >= 1");
  const auto m = static_cast<std::size_t>(d.node_count());
  const auto topo = topo_order(d);
  std::vector<NodeId> rev_topo(topo.rbegin(), topo.rend());

  SimResult res;
  res.residual.assign(m, em.e_init);
  res.residual[0] = std::numeric_limits<double>::infinity();
  std::vector<double> in(m, 0.0);
  std::vector<double> out(m, 0.0);
  std::vector<std::vector<double>> w;

  for (long long round = 1;; ++round) {
    bool recompute = w.empty();
    if (cfg.policy == RoutingPolicy::PE) recompute = true;
    if (cfg.policy == RoutingPolicy::MPE) recompute = (round - 1) % cfg.mpe_recompute_period == 0;
    if (recompute) w = policy_weights(d, cfg.policy, res.residual);
    detail::round_flow(d, rev_topo, w, em.rate, in, out);
    NodeId dead = -1;
    for (std::size_t v = 1; v < m; ++v) {
      const double cost = em.e_rx * in[v] + em.e_tx * out[v];
      if (res.residual[v] + kRoundEnergyTol < cost) {
        dead = static_cast<NodeId>(v);
        break;
      }
    }
    if (dead >= 0) {
      res.bottleneck = dead;
      res.rounds = round - 1;
      res.residual[0] = 0.0;
      return res;
    }
    for (std::size_t v = 1; v < m; ++v)
      res.residual[v] -= em.e_rx * in[v] + em.e_tx * out[v];
  }
}

// Continuous-flow bound under the even split: every node drains at the fixed
// power rate * (e_rx * (load - 1) + e_tx * load); the first battery to empty
// ends the network.
inline double flow_lifetime(const SpanningDag& d, const EnergyModel& em = {}) {
  const LoadMap lm = compute_load_oracle(d);
  double best = std::numeric_limits<double>::infinity();
  for (NodeId v = 1; v < d.node_count(); ++v) {
    const double ld = lm.load[static_cast<std::size_t>(v)];
    const double power = em.rate * (em.e_rx * (ld - 1.0) + em.e_tx * ld);
    best = std::min(best, em.e_init / power);
  }
  return best;
}

// Completed whole rounds the continuous bound allows.
inline long long flow_lifetime_rounds(const SpanningDag& d, const EnergyModel& em = {}) {
  return static_cast<long long>(std::floor(flow_lifetime(d, em) + 1e-6));
}

}  // namespace kdag
