// kdag-sim: generate deployments, build k-DAG topologies, and measure them.
//
//   gen       write a random connected deployment as JSON
//   build     run the distributed builder, print the sibling-edge log
//   simulate  battery simulation on the shortest-path DAG or the k-DAG
//   grid      the full comparison campaign (CSV or JSON)
//   sweep     lifetime as a function of k for one deployment

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kdag/builder.hpp"
#include "kdag/energy.hpp"
#include "kdag/experiments.hpp"
#include "kdag/graph.hpp"

namespace {

struct GenArgs {
  int nodes = 50;
  double side = 250.0;
  double range = 50.0;
  std::uint64_t seed = 1;
  std::string in;   // when set, read the deployment instead of generating one
};

void add_gen_options(CLI::App* cmd, GenArgs& a, bool with_in) {
  cmd->add_option("-n,--nodes", a.nodes, "sensor count (base excluded)");
  cmd->add_option("--side", a.side, "deployment square side, meters");
  cmd->add_option("--range", a.range, "radio range, meters");
  cmd->add_option("--seed", a.seed, "placement seed");
  if (with_in) cmd->add_option("-i,--in", a.in, "deployment JSON instead of generating");
}

kdag::ConnectivityGraph load_graph(const GenArgs& a) {
  if (!a.in.empty()) {
    std::ifstream f(a.in);
    if (!f) throw std::runtime_error("cannot open " + a.in);
    nlohmann::json j;
    f >> j;
    return kdag::graph_from_json(j);
  }
  return kdag::generate_instance(a.nodes, a.side, a.range, a.seed);
}

int parse_k(const std::string& s) {
  if (s == "max") return kdag::kSaturationK;
  const int k = std::stoi(s);
  if (k < 0) throw CLI::ValidationError("--k", "must be >= 0 or 'max'");
  return k;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

nlohmann::json dag_json(const kdag::SpanningDag& d) {
  return {{"kind", kdag::to_string(d.kind)}, {"depth", d.depth}, {"parents", d.parents}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-DAG topology builder and lifetime simulator"};
  app.require_subcommand(1);

  GenArgs gen_a;
  std::string gen_out = "-";
  auto* gen = app.add_subcommand("gen", "generate a connected deployment");
  add_gen_options(gen, gen_a, false);
  gen->add_option("-o,--out", gen_out, "output path ('-' = stdout)");

  GenArgs build_a;
  std::string build_k = "max";
  std::uint64_t build_kseed = 1;
  std::string build_out = "-";
  std::string build_dag_out;
  std::string build_trace;
  auto* build = app.add_subcommand("build", "build the k-DAG, print the edge log");
  add_gen_options(build, build_a, true);
  build->add_option("-k,--k", build_k, "path-spread bound, integer or 'max'");
  build->add_option("--kernel-seed", build_kseed, "message-delay seed");
  build->add_option("-o,--out", build_out, "edge-log JSON path ('-' = stdout)");
  build->add_option("--dag-out", build_dag_out, "also write the full DAG as JSON");
  build->add_option("--trace", build_trace, "write the delivered-message trace as NDJSON");

  GenArgs sim_a;
  std::string sim_topology = "kdag";
  std::string sim_k = "max";
  std::string sim_policy = "mpe";
  int sim_period = 1;
  std::uint64_t sim_kseed = 1;
  std::string sim_out = "-";
  auto* sim = app.add_subcommand("simulate", "simulate battery lifetime");
  add_gen_options(sim, sim_a, true);
  sim->add_option("--topology", sim_topology, "spd or kdag")
      ->check(CLI::IsMember({"spd", "kdag"}));
  sim->add_option("-k,--k", sim_k, "path-spread bound for the k-DAG");
  sim->add_option("--policy", sim_policy, "even, pe, or mpe")
      ->check(CLI::IsMember({"even", "pe", "mpe"}));
  sim->add_option("--period", sim_period, "rounds between mpe parent re-selections");
  sim->add_option("--kernel-seed", sim_kseed, "message-delay seed");
  sim->add_option("-o,--out", sim_out, "output path ('-' = stdout)");

  kdag::ScenarioGrid grid_sc;
  std::string grid_k = "max";
  std::string grid_policy = "mpe";
  std::string grid_format = "csv";
  std::string grid_out = "-";
  auto* grid = app.add_subcommand("grid", "run the comparison campaign");
  grid->add_option("--sizes", grid_sc.sizes, "sensor counts")->delimiter(',');
  grid->add_option("--sides", grid_sc.sides, "square sides, paired with sizes")->delimiter(',');
  grid->add_option("--range", grid_sc.range, "radio range");
  grid->add_option("--instances", grid_sc.instances, "deployments per pair");
  grid->add_option("--seed", grid_sc.base_seed, "campaign seed");
  grid->add_option("-k,--k", grid_k, "path-spread bound, integer or 'max'");
  grid->add_option("--policy", grid_policy, "even, pe, or mpe")
      ->check(CLI::IsMember({"even", "pe", "mpe"}));
  grid->add_option("--workers", grid_sc.workers, "worker threads (0 = hardware)");
  grid->add_option("--format", grid_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  grid->add_option("-o,--out", grid_out, "output path ('-' = stdout)");

  GenArgs sweep_a;
  std::string sweep_policy = "mpe";
  std::uint64_t sweep_kseed = 1;
  std::string sweep_format = "csv";
  std::string sweep_out = "-";
  auto* sweep = app.add_subcommand("sweep", "lifetime vs k for one deployment");
  add_gen_options(sweep, sweep_a, true);
  sweep->add_option("--policy", sweep_policy, "even, pe, or mpe")
      ->check(CLI::IsMember({"even", "pe", "mpe"}));
  sweep->add_option("--kernel-seed", sweep_kseed, "message-delay seed");
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("-o,--out", sweep_out, "output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto g = kdag::generate_instance(gen_a.nodes, gen_a.side, gen_a.range, gen_a.seed);
      write_out(gen_out, kdag::to_json(g).dump(2) + "\n");
      return 0;
    }

    if (build->parsed()) {
      const auto g = load_graph(build_a);
      const auto spd = kdag::build_spd(g);
      kdag::BuilderConfig bc;
      bc.kernel.seed = build_kseed;
      bc.kernel.record_trace = !build_trace.empty();
      const auto res = kdag::build_kdag(g, spd, parse_k(build_k), bc);
      write_out(build_out, kdag::edge_log_json(res.edge_log).dump(2) + "\n");
      if (!build_dag_out.empty()) {
        nlohmann::json j = dag_json(res.dag);
        j["rounds"] = res.rounds;
        j["k"] = kdag::k_label(parse_k(build_k));
        j["edge_log"] = kdag::edge_log_json(res.edge_log);
        write_out(build_dag_out, j.dump(2) + "\n");
      }
      if (!build_trace.empty()) {
        std::ostringstream nd;
        for (const auto& ev : res.trace) nd << kdag::to_json(ev).dump() << "\n";
        write_out(build_trace, nd.str());
      }
      return 0;
    }

    if (sim->parsed()) {
      const auto g = load_graph(sim_a);
      const auto spd = kdag::build_spd(g);
      kdag::SpanningDag dag = spd;
      if (sim_topology == "kdag") {
        kdag::BuilderConfig bc;
        bc.kernel.seed = sim_kseed;
        bc.kernel.record_trace = false;
        dag = kdag::build_kdag(g, spd, parse_k(sim_k), bc).dag;
      }
      kdag::SimConfig sc;
      sc.policy = kdag::policy_from_string(sim_policy);
      sc.mpe_recompute_period = sim_period;
      const auto res = kdag::simulate_lifetime(dag, sc);
      const nlohmann::json j = {{"lifetime_hours", res.rounds},
                                {"lifetime_flow", kdag::flow_lifetime(dag)},
                                {"bottleneck_node", res.bottleneck},
                                {"policy", sim_policy},
                                {"dag_kind", kdag::to_string(dag.kind)},
                                {"theta", kdag::balance_factor(kdag::compute_load_oracle(dag))}};
      write_out(sim_out, j.dump(2) + "\n");
      return 0;
    }

    if (grid->parsed()) {
      grid_sc.k = parse_k(grid_k);
      grid_sc.policy = kdag::policy_from_string(grid_policy);
      const auto res = kdag::run_grid(grid_sc);
      if (grid_format == "csv")
        write_out(grid_out, kdag::grid_csv(res.rows));
      else
        write_out(grid_out, kdag::to_json(res).dump(2) + "\n");
      return 0;
    }

    if (sweep->parsed()) {
      const auto g = load_graph(sweep_a);
      const auto pts = kdag::k_sweep(g, kdag::policy_from_string(sweep_policy), sweep_kseed);
      if (sweep_format == "csv")
        write_out(sweep_out, kdag::sweep_csv(pts));
      else
        write_out(sweep_out, kdag::to_json(pts).dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
