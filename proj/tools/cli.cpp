#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gridqos/consumer_model.hpp"
#include "gridqos/market_model.hpp"
#include "gridqos/parallel.hpp"
#include "gridqos/qos_derivation.hpp"
#include "gridqos/qos_graph.hpp"
#include "gridqos/qos_routing.hpp"
#include "gridqos/scenario_bench.hpp"
#include "gridqos/text_format.hpp"

namespace gridqos::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  file << text;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto value = parse_double(token);
    if (!value) throw std::invalid_argument(fmt::format("'{}' is not a number", token));
    values.push_back(*value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// Shared by route and decide.
struct GraphQuery {
  std::string graph;
  NodeId source = 0;
  NodeId target = 0;
  std::string constraints;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--graph", graph, "Network file (\"n m K\" header, then \"u v w1 ... wK\")")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--source", source, "Source node id")->required();
    cmd->add_option("--target", target, "Target node id")->required();
    cmd->add_option("--constraints", constraints, "Bounds W1,...,WK")->required();
  }

  WeightedNetwork load_network() const { return parse_network(read_file(graph)); }
};

struct DeriveArgs {
  std::string bus;
  std::string curve;
  double theta = 100.0;
  std::string mode = "consistent";
  int d_max = 50;
  double zeta_step = 0.001;
  double load_max = kDefaultMaxLoad;
  std::string out;
};

struct SweepArgs {
  std::string figure;
  std::string out;
  double theta = 100.0;
  std::string thetas;
  std::string mode = "consistent";
  int d_max = 50;
  double zeta_step = 0.001;
  double load_max = kDefaultMaxLoad;
};

struct BenchArgs {
  std::size_t nodes = 10;
  std::size_t edges = 0;
  std::size_t k = 2;
  std::string regime = "medium";
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double weight_lo = 1.0;
  double weight_hi = 10.0;
  std::size_t reps = 10;
  std::size_t oracle_max_nodes = 16;
  std::string out;
  std::string summary;
};

int derive_qos(const DeriveArgs& a, std::ostream& out) {
  LoadPriceCurve curve = a.curve.empty() ? pjm_bus(a.bus, a.load_max) : parse_curve(read_file(a.curve));
  const std::string label = a.curve.empty() ? a.bus : std::filesystem::path(a.curve).stem().string();
  const auto delays = default_delay_grid(a.d_max);
  const auto zetas = default_zeta_grid(a.zeta_step);
  const ObjectiveMode mode = parse_objective_mode(a.mode);
  const QosRequirement req =
      derive_requirement(curve, UtilityModel::logarithmic(), TaxFunctions::defaults(), a.theta,
                         delays, zetas, mode, default_thread_count());
  const RequirementRow row{a.theta, label, req};
  write_output(a.out, requirement_csv(std::span(&row, 1)), out);
  return kExitOk;
}

int route(const GraphQuery& q, std::ostream& out, std::ostream& err) {
  const WeightedNetwork net = q.load_network();
  const ConstraintVector w = parse_constraints(q.constraints);
  const RoutingOutcome outcome = omcr_greedy(net, q.source, q.target, w);
  out << "algorithm,source,target,feasible,length,path\n";
  out << fmt::format("{},{},{},{},{},{}\n", to_string(outcome.algorithm), q.source, q.target,
                     outcome.feasible ? "true" : "false",
                     outcome.path ? format_significant(outcome.delta_of_path, 12) : "inf",
                     outcome.path ? outcome.path->to_string() : "");
  if (!outcome.path) err << "infeasible: unreachable\n";
  return kExitOk;
}

int decide(const GraphQuery& q, bool exact, bool force, std::size_t max_nodes, std::ostream& out,
           std::ostream& err) {
  const WeightedNetwork net = q.load_network();
  const ConstraintVector w = parse_constraints(q.constraints);
  ExactOptions options;
  options.max_nodes = force ? std::numeric_limits<std::size_t>::max() : max_nodes;
  const McrDecision d =
      mcr_decide(net, q.source, q.target, w, exact ? Algorithm::kExact : Algorithm::kGreedy, options);
  out << "verdict,delta_opt,path\n";
  std::string delta;
  if (d.delta_opt) delta = d.unreachable ? "inf" : format_significant(*d.delta_opt, 12);
  out << fmt::format("{},{},{}\n", to_string(d.verdict), delta, d.witness ? d.witness->to_string() : "");
  if (d.unreachable) err << "infeasible: unreachable\n";
  return kExitOk;
}

int bench_routing(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  cfg.nodes = a.nodes;
  cfg.edges = a.edges;
  cfg.metrics = a.k;
  cfg.regime = parse_regime(a.regime);
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.weight_ranges.assign(a.k, WeightRange{a.weight_lo, a.weight_hi});
  cfg.timing_repetitions = a.reps;
  cfg.oracle_max_nodes = a.oracle_max_nodes;
  const BenchResult result = run_routing_bench(cfg, default_thread_count());
  write_output(a.out, trial_csv(result.trials), out);
  const std::string summary = summary_csv(std::span(&result.summary, 1));
  if (a.summary.empty()) {
    err << summary;
  } else {
    write_output(a.summary, summary, out);
  }
  return kExitOk;
}

int sweep(const SweepArgs& a, std::ostream& out) {
  SweepOptions options;
  options.thetas = a.figure == "joint" ? (a.thetas.empty() ? default_theta_grid() : parse_list(a.thetas))
                                       : std::vector<double>{a.theta};
  options.delay_grid = default_delay_grid(a.d_max);
  options.zeta_grid = default_zeta_grid(a.zeta_step);
  options.mode = parse_objective_mode(a.mode);
  options.threads = default_thread_count();
  const auto buses = pjm_scenario(a.load_max);
  const QosSweepResult result =
      run_qos_sweep(buses, UtilityModel::logarithmic(), TaxFunctions::defaults(), options);
  if (a.figure == "delay-cost") {
    write_output(a.out, delay_cost_csv(result.delay_costs), out);
  } else if (a.figure == "outage-cost") {
    write_output(a.out, outage_cost_csv(result.outage_costs), out);
  } else {
    write_output(a.out, requirement_csv(result.requirements), out);
  }
  return kExitOk;
}

int emit_scenario(const std::string& dir, double load_max, std::ostream& out) {
  std::filesystem::create_directories(dir);
  for (const NamedCurve& bus : pjm_scenario(load_max)) {
    const auto path = std::filesystem::path(dir) / fmt::format("bus_{}.txt", bus.bus);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    file << emit_curve(bus.curve);
    out << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smart-grid QoS requirement derivation and multi-constrained routing"};
  app.name("gridqos");
  app.require_subcommand(1);

  DeriveArgs derive_args;
  auto* derive_cmd = app.add_subcommand("derive-qos", "Derive (d*, zeta*) for one bus");
  auto* bus_opt = derive_cmd->add_option("--bus", derive_args.bus, "PJM bus A..E")
                      ->check(CLI::IsMember({"A", "B", "C", "D", "E"}));
  auto* curve_opt = derive_cmd->add_option("--curve", derive_args.curve, "Load-price curve file")
                        ->check(CLI::ExistingFile);
  bus_opt->excludes(curve_opt);
  derive_cmd->add_option("--theta", derive_args.theta, "Load variance growth per slot (MW^2)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  derive_cmd->add_option("--mode", derive_args.mode, "Outage objective: literal | consistent")
      ->check(CLI::IsMember({"literal", "consistent"}))
      ->capture_default_str();
  derive_cmd->add_option("--d-max", derive_args.d_max, "Largest delay (slots) in the grid")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  derive_cmd->add_option("--zeta-step", derive_args.zeta_step, "Outage-probability grid step")
      ->check(CLI::Range(1e-9, kMaxOutageProbability))
      ->capture_default_str();
  derive_cmd->add_option("--load-max", derive_args.load_max, "Load upper bound for PJM curves (MW)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  derive_cmd->add_option("--out", derive_args.out, "Output CSV (default stdout)");

  GraphQuery route_query;
  auto* route_cmd = app.add_subcommand("route", "Greedy K-approximate route");
  route_query.add_to(route_cmd);

  GraphQuery decide_query;
  bool decide_exact = false;
  bool decide_force = false;
  std::size_t decide_max_nodes = ExactOptions{}.max_nodes;
  auto* decide_cmd = app.add_subcommand("decide", "MCR feasibility verdict");
  decide_query.add_to(decide_cmd);
  decide_cmd->add_flag("--exact", decide_exact, "Use exact enumeration (small networks)");
  decide_cmd->add_flag("--force", decide_force, "Lift the exact backend's size guard");
  decide_cmd->add_option("--max-nodes", decide_max_nodes, "Size guard for --exact")->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench-routing", "Greedy vs exact routing trials");
  bench_cmd->add_option("--nodes", bench_args.nodes, "Node count")->capture_default_str();
  bench_cmd->add_option("--edges", bench_args.edges, "Arc count (0: 314/80 per node)")->capture_default_str();
  bench_cmd->add_option("--k", bench_args.k, "Metric count")->check(CLI::Range(1, 64))->capture_default_str();
  bench_cmd->add_option("--regime", bench_args.regime, "tight | medium | loose")
      ->check(CLI::IsMember({"tight", "medium", "loose"}))
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench_args.trials, "Trial count")->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "RNG seed")->capture_default_str();
  bench_cmd->add_option("--weight-lo", bench_args.weight_lo, "Lower edge weight")->capture_default_str();
  bench_cmd->add_option("--weight-hi", bench_args.weight_hi, "Upper edge weight")->capture_default_str();
  bench_cmd->add_option("--reps", bench_args.reps, "Timed repetitions per query")->capture_default_str();
  bench_cmd->add_option("--oracle-max-nodes", bench_args.oracle_max_nodes,
                        "Run the exact oracle up to this size")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Trial CSV (default stdout)");
  bench_cmd->add_option("--summary", bench_args.summary, "Summary CSV (default stderr)");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Cost and requirement tables for buses A..E");
  sweep_cmd->add_option("--figure", sweep_args.figure, "delay-cost | outage-cost | joint")
      ->required()
      ->check(CLI::IsMember({"delay-cost", "outage-cost", "joint"}));
  sweep_cmd->add_option("--theta", sweep_args.theta, "Theta for the cost tables")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--thetas", sweep_args.thetas, "Comma-separated thetas for --figure joint");
  sweep_cmd->add_option("--mode", sweep_args.mode, "Outage objective: literal | consistent")
      ->check(CLI::IsMember({"literal", "consistent"}))
      ->capture_default_str();
  sweep_cmd->add_option("--d-max", sweep_args.d_max, "Largest delay (slots)")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  sweep_cmd->add_option("--zeta-step", sweep_args.zeta_step, "Outage-probability grid step")
      ->check(CLI::Range(1e-9, kMaxOutageProbability))
      ->capture_default_str();
  sweep_cmd->add_option("--load-max", sweep_args.load_max, "Load upper bound (MW)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Output CSV (default stdout)");

  std::string scenario_dir = ".";
  double scenario_load_max = kDefaultMaxLoad;
  auto* scenario_cmd = app.add_subcommand("emit-scenario", "Write the PJM bus curve files");
  scenario_cmd->add_option("--out-dir", scenario_dir, "Destination directory")->capture_default_str();
  scenario_cmd->add_option("--load-max", scenario_load_max, "Load upper bound (MW)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<const char*> argv{"gridqos"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (derive_cmd->parsed() && bus_opt->count() == 0 && curve_opt->count() == 0) {
      throw CLI::RequiredError("--bus or --curve");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (derive_cmd->parsed()) return derive_qos(derive_args, out);
    if (route_cmd->parsed()) return route(route_query, out, err);
    if (decide_cmd->parsed()) {
      return decide(decide_query, decide_exact, decide_force, decide_max_nodes, out, err);
    }
    if (bench_cmd->parsed()) return bench_routing(bench_args, out, err);
    if (sweep_cmd->parsed()) return sweep(sweep_args, out);
    if (scenario_cmd->parsed()) return emit_scenario(scenario_dir, scenario_load_max, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace gridqos::cli
