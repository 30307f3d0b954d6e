#pragma once

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "kdag/builder.hpp"
#include "kdag/energy.hpp"
#include "kdag/graph.hpp"
#include "kdag/load.hpp"

// Experiment campaigns: a grid of (size, side) deployments compared between
// the plain shortest-path DAG and the k-DAG, and a sweep of k for one
// deployment. Rows are assembled by index, so the output is identical no
// matter how many workers run.

namespace kdag {

struct ScenarioGrid {
  std::vector<int> sizes{50, 60, 70, 80, 90, 100};
  std::vector<double> sides{100, 150, 200, 250, 300, 350};   // paired with sizes
  double range = 50.0;
  int instances = 10;             // deployments per (size, side) pair
  std::uint64_t base_seed = 3550;   // stock campaign seed, pinned by the acceptance checks
  int k = kSaturationK;
  RoutingPolicy policy = RoutingPolicy::MPE;
  int mpe_recompute_period = 1;
  int workers = 0;                // 0 = hardware concurrency
};

struct GridRow {
  int n = 0;
  double side = 0;
  std::uint64_t seed = 0;         // seed that actually produced the deployment
  int k = 0;
  RoutingPolicy policy = RoutingPolicy::MPE;
  double theta_spd = 0;
  double theta_kdag = 0;
  long long life_spd = 0;
  long long life_kdag = 0;
  int edges_added = 0;
  int max_p = 0;                  // longest base path in the k-DAG
};

struct GridAggregate {
  int rows = 0;
  double frac_theta_improved = 0;   // theta_kdag >= theta_spd - 1e-12
  double frac_life_improved = 0;    // life_kdag >= life_spd
  double frac_life_strict = 0;      // life_kdag > life_spd
  double mean_theta_spd = 0;
  double mean_theta_kdag = 0;
  double mean_life_ratio = 0;       // life_kdag / life_spd
  double mean_edges = 0;
};

struct GridResult {
  std::vector<GridRow> rows;
  GridAggregate aggregate;
};

inline std::string k_label(int k) {
  return k == kSaturationK ? std::string("max") : std::to_string(k);
}

// One deployment, both topologies. Disconnected draws are replaced by a
// derived seed (logged to stderr) so a campaign never dies on bad luck.
inline GridRow run_grid_instance(int n, double side, double range, std::uint64_t seed, int k,
                                 RoutingPolicy policy, int mpe_period = 1) {
  ConnectivityGraph g;
  std::uint64_t s = seed;
  for (int sub = 0;; ++sub) {
    try {
      g = generate_instance(n, side, range, s);
      break;
    } catch (const ConnectivityFailure&) {
      if (sub >= 9) throw;
      const std::uint64_t next = detail::mix_seed(s, 0xd15c0 + static_cast<std::uint64_t>(sub));
      static std::mutex log_mu;
      const std::lock_guard<std::mutex> lock(log_mu);
      std::fprintf(stderr,
                   "grid: n=%d side=%g seed=%llu stayed disconnected, substituting seed %llu\n",
                   n, side, static_cast<unsigned long long>(s),
                   static_cast<unsigned long long>(next));
      s = next;
    }
  }

  const SpanningDag spd = build_spd(g);
  BuilderConfig bc;
  bc.kernel.seed = s;
  bc.kernel.record_trace = false;
  const BuildResult built = build_kdag(g, spd, k, bc);

  SimConfig sim;
  sim.policy = policy;
  sim.mpe_recompute_period = mpe_period;

  GridRow row;
  row.n = n;
  row.side = side;
  row.seed = s;
  row.k = k;
  row.policy = policy;
  row.theta_spd = balance_factor(compute_load_oracle(spd));
  row.theta_kdag = balance_factor(compute_load_oracle(built.dag));
  row.life_spd = simulate_lifetime(spd, sim).rounds;
  row.life_kdag = simulate_lifetime(built.dag, sim).rounds;
  row.edges_added = static_cast<int>(built.edge_log.size());
  for (const auto& r : path_length_ranges(built.dag)) row.max_p = std::max(row.max_p, r.longest);
  return row;
}

inline GridAggregate aggregate_rows(const std::vector<GridRow>& rows) {
  GridAggregate a;
  a.rows = static_cast<int>(rows.size());
  if (rows.empty()) return a;
  for (const auto& r : rows) {
    a.frac_theta_improved += r.theta_kdag >= r.theta_spd - 1e-12 ? 1.0 : 0.0;
    a.frac_life_improved += r.life_kdag >= r.life_spd ? 1.0 : 0.0;
    a.frac_life_strict += r.life_kdag > r.life_spd ? 1.0 : 0.0;
    a.mean_theta_spd += r.theta_spd;
    a.mean_theta_kdag += r.theta_kdag;
    a.mean_life_ratio += static_cast<double>(r.life_kdag) / static_cast<double>(r.life_spd);
    a.mean_edges += r.edges_added;
  }
  const auto m = static_cast<double>(rows.size());
  a.frac_theta_improved /= m;
  a.frac_life_improved /= m;
  a.frac_life_strict /= m;
  a.mean_theta_spd /= m;
  a.mean_theta_kdag /= m;
  a.mean_life_ratio /= m;
  a.mean_edges /= m;
  return a;
}

inline GridResult run_grid(const ScenarioGrid& sc) {
  if (sc.sizes.size() != sc.sides.size())
    throw std::invalid_argument("run_grid: sizes and sides must pair up");
  if (sc.sizes.empty() || sc.instances < 1)
    throw std::invalid_argument("run_grid: nothing to run");

  struct Job {
    int n;
    double side;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < sc.sizes.size(); ++p) {
    for (int r = 0; r < sc.instances; ++r) {
      const auto idx = static_cast<std::uint64_t>(jobs.size());
      jobs.push_back(Job{sc.sizes[p], sc.sides[p], detail::mix_seed(sc.base_seed, idx)});
    }
  }

  GridResult out;
  out.rows.resize(jobs.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nw =
      std::min<std::size_t>(sc.workers > 0 ? static_cast<unsigned>(sc.workers) : hw, jobs.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        out.rows[i] = run_grid_instance(jobs[i].n, jobs[i].side, sc.range, jobs[i].seed, sc.k,
                                        sc.policy, sc.mpe_recompute_period);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (nw <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  out.aggregate = aggregate_rows(out.rows);
  return out;
}

inline std::string grid_csv(const std::vector<GridRow>& rows) {
  std::string s = "n,side,seed,k,policy,theta_spd,theta_kdag,life_spd,life_kdag,edges_added,max_p\n";
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%g,%llu,%s,%s,%.12g,%.12g,%lld,%lld,%d,%d\n", r.n, r.side,
                  static_cast<unsigned long long>(r.seed), k_label(r.k).c_str(),
                  to_string(r.policy), r.theta_spd, r.theta_kdag, r.life_spd, r.life_kdag,
                  r.edges_added, r.max_p);
    s += buf;
  }
  return s;
}

inline nlohmann::json to_json(const GridRow& r) {
  return {{"n", r.n},
          {"side", r.side},
          {"seed", r.seed},
          {"k", k_label(r.k)},
          {"policy", to_string(r.policy)},
          {"theta_spd", r.theta_spd},
          {"theta_kdag", r.theta_kdag},
          {"life_spd", r.life_spd},
          {"life_kdag", r.life_kdag},
          {"edges_added", r.edges_added},
          {"max_p", r.max_p}};
}

inline nlohmann::json to_json(const GridResult& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : g.rows) rows.push_back(to_json(r));
  const auto& a = g.aggregate;
  return {{"rows", rows},
          {"aggregate",
           {{"rows", a.rows},
            {"frac_theta_improved", a.frac_theta_improved},
            {"frac_life_improved", a.frac_life_improved},
            {"frac_life_strict", a.frac_life_strict},
            {"mean_theta_spd", a.mean_theta_spd},
            {"mean_theta_kdag", a.mean_theta_kdag},
            {"mean_life_ratio", a.mean_life_ratio},
            {"mean_edges", a.mean_edges}}}};
}

// ---- sweep of the path-spread bound for one deployment ----------------------

struct SweepPoint {
  int k = 0;
  int edges_added = 0;
  double theta = 0;
  long long life = 0;
  double ratio = 0;   // life(k) / life at saturation
};

inline std::vector<SweepPoint> k_sweep(const ConnectivityGraph& g,
                                       RoutingPolicy policy = RoutingPolicy::MPE,
                                       std::uint64_t kernel_seed = 1, int mpe_period = 1) {
  const SpanningDag spd = build_spd(g);
  BuilderConfig bc;
  bc.kernel.seed = kernel_seed;
  bc.kernel.record_trace = false;
  SimConfig sim;
  sim.policy = policy;
  sim.mpe_recompute_period = mpe_period;

  const BuildResult sat = build_kdag(g, spd, kSaturationK, bc);
  int k_sat = 0;
  for (const auto& r : path_length_ranges(sat.dag))
    k_sat = std::max(k_sat, r.longest - r.shortest);
  const long long life_sat = simulate_lifetime(sat.dag, sim).rounds;

  std::vector<SweepPoint> points;
  for (int k = 0; k <= k_sat; ++k) {
    const BuildResult built = build_kdag(g, spd, k, bc);
    SweepPoint pt;
    pt.k = k;
    pt.edges_added = static_cast<int>(built.edge_log.size());
    pt.theta = balance_factor(compute_load_oracle(built.dag));
    pt.life = simulate_lifetime(built.dag, sim).rounds;
    pt.ratio = static_cast<double>(pt.life) / static_cast<double>(life_sat);
    points.push_back(pt);
  }
  return points;
}

inline std::string sweep_csv(const std::vector<SweepPoint>& pts) {
  std::string s = "k,edges_added,theta,life,ratio\n";
  char buf[160];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%lld,%.12g\n", p.k, p.edges_added, p.theta, p.life,
                  p.ratio);
    s += buf;
  }
  return s;
}

inline nlohmann::json to_json(const std::vector<SweepPoint>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pts)
    arr.push_back({{"k", p.k},
                   {"edges_added", p.edges_added},
                   {"theta", p.theta},
                   {"life", p.life},
                   {"ratio", p.ratio}});
  return arr;
}

}  // namespace kdag
