#pragma once

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cnbc/cnbc.hpp"

// Command-line front end. JSON goes to stdout, human-readable notes to
// stderr. Exit codes: 0 success / satisfiable, 1 unsatisfiable / check
// failed, 2 usage or input error, 124 timeout.

namespace cnbc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTimeout = 124;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads CNBC_VERTEX_BUDGET and CNBC_ENUM_BUDGET when set.
inline void apply_budget_environment() {
  auto read = [](const char* name) -> std::optional<unsigned long long> {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (*end != '\0' || value == 0) throw UsageError(std::string(name) + " must be a positive integer");
    return value;
  };
  if (auto v = read("CNBC_VERTEX_BUDGET")) set_vertex_budget(static_cast<std::size_t>(*v));
  if (auto v = read("CNBC_ENUM_BUDGET")) set_enumeration_budget(*v);
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline std::optional<GraphFormat> parse_format(const std::string& name) {
  if (name == "auto") return std::nullopt;
  if (name == "edges") return GraphFormat::edge_list;
  if (name == "dimacs") return GraphFormat::dimacs;
  throw UsageError("unknown graph format '" + name + "' (expected auto, edges, or dimacs)");
}

inline BalanceMode parse_mode(const std::string& name) {
  if (name == "cnbc") return BalanceMode::cnbc;
  if (name == "nbc") return BalanceMode::nbc;
  throw UsageError("unknown mode '" + name + "' (expected cnbc or nbc)");
}

inline void print_json(Streams io, const ojson& j) { io.out << j.dump(2) << '\n'; }

inline ojson write_colored(const Graph& g, const Coloring& c, const std::string& prefix) {
  const std::string graph_path = prefix + ".edges";
  const std::string coloring_path = prefix + ".coloring.json";
  write_text_file(graph_path, format_graph(g));
  write_text_file(coloring_path, coloring_to_json(c));
  return {{"graph", graph_path}, {"coloring", coloring_path}};
}

inline ojson graph_summary(const Graph& g) {
  ojson j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  return j;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string graph;
  std::string format = "auto";
  int k = 2;
};

inline int run_check(const CheckArgs& a, Streams io) {
  const Graph g = load_graph(a.graph, parse_format(a.format));
  const auto report = preflight(g, a.k);
  ojson j = to_ojson(report);
  ojson twins = ojson::array();
  for (const auto& cls : twin_partition(g)) {
    if (cls.size() > 1) twins.push_back(cls);
  }
  j["twin_classes"] = twins;
  print_json(io, j);
  for (const auto& c : report.checks) io.err << (c.passed ? "pass  " : "FAIL  ") << c.name << ": " << c.detail << '\n';
  io.err << "verdict: " << to_string(report.verdict) << '\n';
  return report.verdict == Verdict::definitely_not_cnbc ? kExitFail : kExitOk;
}

struct VerifyArgs {
  std::string graph;
  std::string coloring;
  std::string format = "auto";
  std::string mode = "cnbc";
};

inline int run_verify(const VerifyArgs& a, Streams io) {
  const Graph g = load_graph(a.graph, parse_format(a.format));
  const Coloring c = load_coloring(a.coloring);
  const BalanceMode mode = parse_mode(a.mode);
  if (c.size() != g.vertex_count()) {
    throw UsageError("coloring has " + std::to_string(c.size()) + " entries but the graph has " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  const auto check = mode == BalanceMode::cnbc ? verify_cnbc(g, c) : verify_nbc(g, c);
  ojson j;
  j["mode"] = to_string(mode);
  j["k"] = c.k();
  j.update(to_ojson(check));
  print_json(io, j);
  if (!check) io.err << "unbalanced at vertex " << check.violation->vertex << '\n';
  return check ? kExitOk : kExitFail;
}

struct SolveArgs {
  std::string graph;
  std::string format = "auto";
  std::string mode = "cnbc";
  std::string order = "degree";
  std::string engine = "search";
  std::string out;
  int k = 2;
  double time_limit = 60.0;
  bool no_symmetry = false;
  bool no_count_bounds = false;
  bool no_twin_merge = false;
  bool no_preflight = false;
  bool timing = false;
};

inline int run_solve(const SolveArgs& a, Streams io) {
  const Graph g = load_graph(a.graph, parse_format(a.format));
  SolveOptions opts;
  opts.mode = parse_mode(a.mode);
  opts.k = a.k;
  if (!(a.time_limit > 0)) throw UsageError("--time-limit must be positive");
  opts.time_limit = std::chrono::milliseconds(static_cast<long long>(a.time_limit * 1000.0 + 0.5));
  if (opts.time_limit.count() == 0) opts.time_limit = std::chrono::milliseconds(1);
  opts.symmetry_breaking = !a.no_symmetry;
  opts.propagation.count_bounds = !a.no_count_bounds;
  opts.propagation.twin_merge = !a.no_twin_merge;
  opts.run_preflight = !a.no_preflight;
  if (a.order == "degree") {
    opts.vertex_order = VertexOrder::degree_desc;
  } else if (a.order == "input") {
    opts.vertex_order = VertexOrder::input;
  } else {
    throw UsageError("unknown --order '" + a.order + "' (expected degree or input)");
  }

  SolveResult result;
  if (a.engine == "search") {
    result = solve(g, opts);
  } else if (a.engine == "brute") {
    const auto all = brute_force(g, opts.k, opts.mode);
    result.status = all.empty() ? SolveStatus::unsatisfiable : SolveStatus::satisfiable;
    if (!all.empty()) result.coloring = all.front();
  } else {
    throw UsageError("unknown --engine '" + a.engine + "' (expected search or brute)");
  }

  ojson j;
  j["mode"] = to_string(opts.mode);
  j["k"] = opts.k;
  j.update(to_ojson(result, a.timing));
  print_json(io, j);
  if (result.coloring && !a.out.empty()) write_text_file(a.out, coloring_to_json(*result.coloring));
  if (result.refuted_by) io.err << "refuted before search: " << result.refuted_by->detail << '\n';
  switch (result.status) {
    case SolveStatus::satisfiable: return kExitOk;
    case SolveStatus::unsatisfiable: return kExitFail;
    case SolveStatus::timeout: return kExitTimeout;
  }
  return kExitFail;
}

struct ConstructArgs {
  std::string what;
  std::string graph;  // supergraph input
  std::string out;
  std::size_t n = 0;
  std::size_t d = 0;
  int k = 2;
  int additions = 0;
  bool closed_form = false;
};

inline int run_construct(const ConstructArgs& a, Streams io) {
  ColoredGraph built;
  ojson extra = ojson::object();
  if (a.what == "complete") {
    if (a.n == 0) throw UsageError("construct complete needs --n");
    built = color_complete(a.n, a.k);
  } else if (a.what == "hamming") {
    if (a.d == 0) throw UsageError("construct hamming needs --d");
    built = a.closed_form ? color_hamming_closed_form(a.d, a.k) : color_hamming(a.d, a.k);
  } else if (a.what == "hk") {
    built = build_hk(a.k);
    // Further additions at the newest vertex of the deficient color.
    for (int round = 0; round < a.additions; ++round) {
      const Vertex z = built.graph.vertex_count() - 2 * static_cast<std::size_t>(a.k - 1) - 1;
      built = vertex_addition_3km2(built, z);
    }
  } else if (a.what == "supergraph") {
    if (a.graph.empty()) throw UsageError("construct supergraph needs an input graph");
    auto embedded = supergraph_embed(load_graph(a.graph), a.k);
    built = std::move(embedded.colored);
    extra["embedding"] = embedded.embedding;
  } else {
    throw UsageError("unknown construction '" + a.what + "' (expected complete, hamming, hk, or supergraph)");
  }

  ojson j;
  j["provenance"] = to_ojson(built.provenance);
  j["graph"] = graph_summary(built.graph);
  j["class_sizes"] = built.coloring.class_sizes();
  j["verified"] = static_cast<bool>(verify_cnbc(built.graph, built.coloring));
  j["files"] = write_colored(built.graph, built.coloring, a.out);
  j.update(extra);
  print_json(io, j);
  return kExitOk;
}

struct TransformArgs {
  std::string kind;
  std::string graph;
  std::string coloring;
  std::string graph2;
  std::string coloring2;
  std::string out;
  int p = 0;
};

inline int run_transform(const TransformArgs& a, Streams io) {
  const auto kind = parse_transfer_kind(a.kind);
  if (!kind) {
    throw UsageError("unknown --kind '" + a.kind +
                     "' (expected reduce, complement, strong, cartesian-k2, cartesian-mixed, lexicographic, join, "
                     "direct-k2)");
  }
  TransferRequest req;
  req.kind = *kind;
  req.first = load_graph(a.graph);
  if (!a.coloring.empty()) req.first_coloring = load_coloring(a.coloring);
  if (!a.graph2.empty()) req.second = load_graph(a.graph2);
  if (!a.coloring2.empty()) req.second_coloring = load_coloring(a.coloring2);
  req.p = a.p;

  const auto result = run_transfer(req);
  ojson j;
  j["kind"] = to_string(*kind);
  j["target"] = result.target == BalanceTarget::cnbc ? "cnbc" : "nbc";
  j["verdict"] = result.verdict;
  j["graph"] = graph_summary(result.graph);
  j["class_sizes"] = result.coloring.class_sizes();
  j["files"] = write_colored(result.graph, result.coloring, a.out);
  print_json(io, j);
  return result.verdict ? kExitOk : kExitFail;
}

struct ReduceArgs {
  std::string graph;
  std::string proper;
  std::string out;
  int k = 3;
};

inline int run_reduce(const ReduceArgs& a, Streams io) {
  const Graph g = load_graph(a.graph);
  const auto reduction = build_reduction(g, a.k);
  ojson files;
  files["graph"] = a.out + ".edges";
  files["certificate"] = a.out + ".cert.json";
  write_text_file(a.out + ".edges", format_graph(reduction.graph));
  write_text_file(a.out + ".cert.json", to_ojson(reduction.certificate).dump(2) + "\n");
  if (!a.proper.empty()) {
    const Coloring proper = load_coloring(a.proper);
    if (proper.size() != g.vertex_count()) throw UsageError("proper coloring does not match the input graph");
    const auto lifted = lift_coloring(g, proper, reduction.certificate, reduction.graph);
    files["lifted"] = a.out + ".lifted.json";
    write_text_file(a.out + ".lifted.json", coloring_to_json(lifted));
  }
  ojson j;
  j["k"] = a.k;
  j["input"] = graph_summary(g);
  j["reduced"] = graph_summary(reduction.graph);
  j["expected_vertices"] = reduced_vertex_count(g, a.k);
  j["files"] = files;
  print_json(io, j);
  return kExitOk;
}

struct StatsArgs {
  std::string graph;
  std::string coloring;
};

inline int run_stats(const StatsArgs& a, Streams io) {
  const Graph g = load_graph(a.graph);
  const Coloring c = load_coloring(a.coloring);
  if (c.size() != g.vertex_count()) throw UsageError("coloring does not match the graph");
  ojson j = to_ojson(class_stats(g, c));
  const bool balanced = verify_cnbc(g, c).balanced;
  j["cnbc"] = balanced;
  if (balanced) {
    j["counting"] = to_ojson(check_counting(g, c));
    if (g.regular_degree()) j["regular_counting"] = to_ojson(check_regular_counting(g, c));
  }
  print_json(io, j);
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Streams io{out, err};
  CLI::App app{"Closed-neighborhood balanced k-colorings: verify, construct, transfer, search, reduce", "cnbc"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run the necessary conditions for a balanced k-coloring");
  check_cmd->add_option("graph", check.graph, "Graph file (edge list or DIMACS)")->required();
  check_cmd->add_option("--k", check.k, "Number of colors")->required();
  check_cmd->add_option("--format", check.format, "auto, edges, or dimacs");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a coloring file against a graph");
  verify_cmd->add_option("graph", verify.graph, "Graph file")->required();
  verify_cmd->add_option("coloring", verify.coloring, "Coloring file (JSON or CSV)")->required();
  verify_cmd->add_option("--mode", verify.mode, "cnbc (closed) or nbc (open neighborhoods)");
  verify_cmd->add_option("--format", verify.format, "auto, edges, or dimacs");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Search for a balanced k-coloring");
  solve_cmd->add_option("graph", solve_args.graph, "Graph file")->required();
  solve_cmd->add_option("--k", solve_args.k, "Number of colors")->required();
  solve_cmd->add_option("--mode", solve_args.mode, "cnbc or nbc");
  solve_cmd->add_option("--format", solve_args.format, "auto, edges, or dimacs");
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Seconds before giving up");
  solve_cmd->add_option("--order", solve_args.order, "Vertex order: degree or input");
  solve_cmd->add_option("--engine", solve_args.engine, "search or brute");
  solve_cmd->add_option("--out", solve_args.out, "Write the coloring here when one is found");
  solve_cmd->add_flag("--no-symmetry-breaking", solve_args.no_symmetry, "Disable color symmetry breaking");
  solve_cmd->add_flag("--no-count-bounds", solve_args.no_count_bounds, "Disable count-bound pruning");
  solve_cmd->add_flag("--no-twin-merge", solve_args.no_twin_merge, "Disable twin merging");
  solve_cmd->add_flag("--no-preflight", solve_args.no_preflight, "Skip the necessary-condition pre-pass");
  solve_cmd->add_flag("--timing", solve_args.timing, "Include wall time in the output");

  ConstructArgs construct;
  auto* construct_cmd = app.add_subcommand("construct", "Build a graph with a certified balanced coloring");
  construct_cmd->add_option("what", construct.what, "complete, hamming, hk, or supergraph")->required();
  construct_cmd->add_option("graph", construct.graph, "Input graph (supergraph only)");
  construct_cmd->add_option("--n", construct.n, "Order of the complete graph");
  construct_cmd->add_option("--d", construct.d, "Hamming dimension");
  construct_cmd->add_option("--k", construct.k, "Number of colors")->required();
  construct_cmd->add_option("--additions", construct.additions, "Extra vertex additions (hk only)");
  construct_cmd->add_flag("--closed-form", construct.closed_form, "Use the coordinate-sum Hamming coloring");
  construct_cmd->add_option("--out", construct.out, "Output prefix")->required();

  TransformArgs transform;
  auto* transform_cmd = app.add_subcommand("transform", "Apply a coloring transfer");
  transform_cmd->add_option("--kind", transform.kind, "Transfer kind")->required();
  transform_cmd->add_option("--graph", transform.graph, "First graph")->required();
  transform_cmd->add_option("--coloring", transform.coloring, "Coloring of the first graph");
  transform_cmd->add_option("--graph2", transform.graph2, "Second graph");
  transform_cmd->add_option("--coloring2", transform.coloring2, "Coloring of the second graph");
  transform_cmd->add_option("--p", transform.p, "Target number of colors (reduce)");
  transform_cmd->add_option("--out", transform.out, "Output prefix")->required();

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce proper k-coloring to balanced k-coloring");
  reduce_cmd->add_option("graph", reduce.graph, "Input graph")->required();
  reduce_cmd->add_option("--k", reduce.k, "Number of colors (>= 3)")->required();
  reduce_cmd->add_option("--proper-coloring", reduce.proper, "Proper coloring to lift");
  reduce_cmd->add_option("--out", reduce.out, "Output prefix")->required();

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Class sizes, class edge counts, and counting identities");
  stats_cmd->add_option("graph", stats.graph, "Graph file")->required();
  stats_cmd->add_option("coloring", stats.coloring, "Coloring file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_budget_environment();
    if (*check_cmd) return run_check(check, io);
    if (*verify_cmd) return run_verify(verify, io);
    if (*solve_cmd) return run_solve(solve_args, io);
    if (*construct_cmd) return run_construct(construct, io);
    if (*transform_cmd) return run_transform(transform, io);
    if (*reduce_cmd) return run_reduce(reduce, io);
    if (*stats_cmd) return run_stats(stats, io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cnbc::cli
