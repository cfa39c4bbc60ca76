// Command-line front end: solve, verify, oracle, gen, bench, export-dot.
//
// Exit codes: 0 success, 1 internal error, 2 malformed input, 3 violated
// precondition (dynamics digraph not strongly connected), 4 verification
// failed, 5 instance exceeds an exhaustive-search size limit.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctrlobs/ctrlobs.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return ctrlobs::read_text_file(path);
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  ctrlobs::write_text_file(path, content);
}

ctrlobs::InstanceFormat pick_format(const std::string& format,
                                    const std::string& path) {
  if (format == "json") return ctrlobs::InstanceFormat::json;
  if (format == "edgelist") return ctrlobs::InstanceFormat::edge_list;
  if (path == "-") return ctrlobs::InstanceFormat::json;
  return ctrlobs::guess_format(path);
}

ctrlobs::GenModel pick_model(const std::string& model) {
  if (model == "cycle") return ctrlobs::GenModel::cycle_plus_random;
  return ctrlobs::GenModel::bidirectional_spanning;
}

struct SolveOptions {
  std::string instance;
  std::string format = "auto";
  std::string output = "-";
  std::string algorithm = "joint";
  bool allow_disconnected = false;
  bool strict = false;
};

int run_solve(const SolveOptions& opt) {
  const ctrlobs::InstanceDocument doc = ctrlobs::parse_instance(
      read_input(opt.instance), pick_format(opt.format, opt.instance),
      opt.strict);
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  if (!doc.name.empty()) extra["instance"] = doc.name;

  ctrlobs::Placement placement;
  if (opt.algorithm == "joint") {
    const ctrlobs::JointSolution sol =
        ctrlobs::solve_joint_placement(doc.matrix, opt.allow_disconnected);
    placement = sol.placement;
    if (sol.fallback) extra["fallback"] = true;
  } else {
    placement = ctrlobs::baseline_decoupled_placement(doc.matrix,
                                                      opt.allow_disconnected);
  }

  ctrlobs::VerificationReport report =
      ctrlobs::check_placement(doc.matrix, placement);
  if (!report.strongly_connected) {
    extra["precondition_overridden"] = true;
    report.notes.push_back(
        "strong-connectivity precondition overridden: the placement is not "
        "guaranteed minimal or sufficient");
  }
  write_output(opt.output, ctrlobs::serialize_report(report, placement,
                                                     opt.algorithm, extra));
  return 0;
}

struct VerifyOptions {
  std::string instance;
  std::string placement;
  std::string format = "auto";
  std::string output = "-";
  bool strict = false;
};

int run_verify(const VerifyOptions& opt) {
  const ctrlobs::InstanceDocument doc = ctrlobs::parse_instance(
      read_input(opt.instance), pick_format(opt.format, opt.instance),
      opt.strict);
  const ctrlobs::Placement placement =
      ctrlobs::parse_placement(read_input(opt.placement), doc.matrix.n());
  const ctrlobs::VerificationReport report =
      ctrlobs::check_placement(doc.matrix, placement);
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  if (!doc.name.empty()) extra["instance"] = doc.name;
  write_output(opt.output,
               ctrlobs::serialize_report(report, placement, "verify", extra));
  return (report.controllable && report.observable) ? 0 : 4;
}

struct OracleOptions {
  std::string instance;
  std::string format = "auto";
  std::string output = "-";
  int max_n = 0;  // 0 means the search's own default
  bool pairs = false;
};

int run_oracle(const OracleOptions& opt) {
  const ctrlobs::InstanceDocument doc = ctrlobs::parse_instance(
      read_input(opt.instance), pick_format(opt.format, opt.instance), false);
  const int limit = opt.max_n > 0 ? opt.max_n : (opt.pairs ? 5 : 12);
  const ctrlobs::OracleResult result =
      opt.pairs ? ctrlobs::brute_force_min_joint_pairs(doc.matrix, limit)
                : ctrlobs::brute_force_min_joint(doc.matrix, limit);
  const ctrlobs::Placement placement{doc.matrix.n(), result.inputs,
                                     result.outputs};
  const ctrlobs::VerificationReport report =
      ctrlobs::check_placement(doc.matrix, placement);
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  if (!doc.name.empty()) extra["instance"] = doc.name;
  extra["search"] = opt.pairs ? "all-pairs" : "joint-subsets";
  write_output(opt.output,
               ctrlobs::serialize_report(report, placement, "oracle", extra));
  return 0;
}

struct GenOptions {
  int n = 0;
  double density = 0.05;
  std::uint64_t seed = 1;
  std::string model = "cycle";
  std::string name;
  std::string format = "json";
  std::string output = "-";
};

int run_gen(const GenOptions& opt) {
  ctrlobs::InstanceDocument doc;
  doc.matrix = ctrlobs::random_strongly_connected(opt.n, opt.density, opt.seed,
                                                  pick_model(opt.model));
  doc.name = opt.name;
  doc.metadata = nlohmann::ordered_json::object();
  doc.metadata["model"] = opt.model;
  doc.metadata["extra_density"] = opt.density;
  doc.metadata["seed"] = opt.seed;
  const auto format = opt.format == "edgelist" ? ctrlobs::InstanceFormat::edge_list
                                               : ctrlobs::InstanceFormat::json;
  write_output(opt.output, ctrlobs::serialize_instance(doc, format));
  return 0;
}

struct BenchOptions {
  std::vector<int> sizes{100, 200, 400};
  int per_size = 5;
  double density = 0.05;
  std::uint64_t seed = 1;
  std::string model = "cycle";
  std::string output = "-";
};

int run_bench(const BenchOptions& opt) {
  std::ostringstream csv;
  csv << "n,instance,wall_time\n";
  for (const int n : opt.sizes) {
    for (int i = 0; i < opt.per_size; ++i) {
      const std::uint64_t seed =
          opt.seed + 1000003ULL * static_cast<std::uint64_t>(n) +
          static_cast<std::uint64_t>(i);
      const ctrlobs::StructuralMatrix a = ctrlobs::random_strongly_connected(
          n, opt.density, seed, pick_model(opt.model));
      const auto t0 = std::chrono::steady_clock::now();
      const ctrlobs::JointSolution sol = ctrlobs::solve_joint_placement(a);
      const auto t1 = std::chrono::steady_clock::now();
      if (sol.placement.cost() < 1) {
        throw ctrlobs::error("internal invariant violated: empty placement");
      }
      const double dt = std::chrono::duration<double>(t1 - t0).count();
      csv << n << "," << i << "," << std::fixed << std::setprecision(6) << dt
          << "\n";
    }
  }
  write_output(opt.output, csv.str());
  return 0;
}

struct DotOptions {
  std::string instance;
  std::string placement;
  std::string format = "auto";
  std::string output = "-";
};

int run_export_dot(const DotOptions& opt) {
  const ctrlobs::InstanceDocument doc = ctrlobs::parse_instance(
      read_input(opt.instance), pick_format(opt.format, opt.instance), false);
  std::string dot;
  if (opt.placement.empty()) {
    dot = ctrlobs::export_dot(doc.matrix);
  } else {
    const ctrlobs::Placement placement =
        ctrlobs::parse_placement(read_input(opt.placement), doc.matrix.n());
    dot = ctrlobs::export_dot(doc.matrix, &placement);
  }
  write_output(opt.output, dot);
  return 0;
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Instance format")
      ->check(CLI::IsMember({"auto", "json", "edgelist"}))
      ->capture_default_str();
}

void add_output_option(CLI::App* cmd, std::string& output) {
  cmd->add_option("-o,--output", output,
                  "Output file, '-' for standard output")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Minimum joint actuator/sensor placement for structural "
      "controllability and observability of strongly connected networks"};
  app.set_version_flag("--version", "ctrlobs 1.0.0");
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "Compute a minimum placement for an instance");
  solve->add_option("instance", solve_opt.instance,
                    "Instance file, '-' for standard input")
      ->required();
  solve->add_option("--algorithm", solve_opt.algorithm,
                    "joint: one coupled matching; baseline: inputs and "
                    "outputs placed independently")
      ->check(CLI::IsMember({"joint", "baseline"}))
      ->capture_default_str();
  add_format_option(solve, solve_opt.format);
  add_output_option(solve, solve_opt.output);
  solve->add_flag("--allow-disconnected", solve_opt.allow_disconnected,
                  "Proceed even if the digraph is not strongly connected "
                  "(results carry no guarantees)");
  solve->add_flag("--strict", solve_opt.strict,
                  "Reject duplicate edges instead of collapsing them");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check a placement file against an instance");
  verify->add_option("instance", verify_opt.instance, "Instance file")
      ->required();
  verify->add_option("placement", verify_opt.placement,
                     "Placement file (JSON with \"inputs\" and \"outputs\")")
      ->required();
  add_format_option(verify, verify_opt.format);
  add_output_option(verify, verify_opt.output);
  verify->add_flag("--strict", verify_opt.strict,
                   "Reject duplicate edges instead of collapsing them");

  OracleOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustive-search ground truth for small instances");
  oracle->add_option("instance", oracle_opt.instance, "Instance file")
      ->required();
  oracle->add_option("--max-n", oracle_opt.max_n,
                     "Refuse instances larger than this (default 12, or 5 "
                     "with --pairs)");
  oracle->add_flag("--pairs", oracle_opt.pairs,
                   "Search all (input set, output set) pairs instead of "
                   "identical sets");
  add_format_option(oracle, oracle_opt.format);
  add_output_option(oracle, oracle_opt.output);

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a random strongly connected instance");
  gen->add_option("--n", gen_opt.n, "Number of states")->required();
  gen->add_option("--density", gen_opt.density,
                  "Probability of each extra edge")
      ->capture_default_str();
  gen->add_option("--seed", gen_opt.seed, "Random seed")
      ->capture_default_str();
  gen->add_option("--model", gen_opt.model, "Wiring model")
      ->check(CLI::IsMember({"cycle", "spanning"}))
      ->capture_default_str();
  gen->add_option("--name", gen_opt.name, "Instance name to embed");
  gen->add_option("--format", gen_opt.format, "Output format")
      ->check(CLI::IsMember({"json", "edgelist"}))
      ->capture_default_str();
  add_output_option(gen, gen_opt.output);

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time the joint solver on generated instances, CSV output");
  bench->add_option("--sizes", bench_opt.sizes, "Instance sizes")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--per-size", bench_opt.per_size, "Instances per size")
      ->capture_default_str();
  bench->add_option("--density", bench_opt.density,
                    "Probability of each extra edge")
      ->capture_default_str();
  bench->add_option("--seed", bench_opt.seed, "Base random seed")
      ->capture_default_str();
  bench->add_option("--model", bench_opt.model, "Wiring model")
      ->check(CLI::IsMember({"cycle", "spanning"}))
      ->capture_default_str();
  add_output_option(bench, bench_opt.output);

  DotOptions dot_opt;
  CLI::App* dot = app.add_subcommand(
      "export-dot", "Render an instance (and optional placement) as Graphviz");
  dot->add_option("instance", dot_opt.instance, "Instance file")->required();
  dot->add_option("--placement", dot_opt.placement, "Placement file overlay");
  add_format_option(dot, dot_opt.format);
  add_output_option(dot, dot_opt.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) return run_solve(solve_opt);
    if (*verify) return run_verify(verify_opt);
    if (*oracle) return run_oracle(oracle_opt);
    if (*gen) return run_gen(gen_opt);
    if (*bench) return run_bench(bench_opt);
    if (*dot) return run_export_dot(dot_opt);
  } catch (const ctrlobs::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ctrlobs::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ctrlobs::size_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
