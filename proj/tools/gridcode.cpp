#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gridcode/automaton.hpp"
#include "gridcode/constraints.hpp"
#include "gridcode/engine.hpp"
#include "gridcode/mmc.hpp"
#include "gridcode/periodic_code.hpp"
#include "gridcode/verifier.hpp"

using namespace gridcode;

namespace {

enum Exit : int {
  kOk = 0,
  kRejected = 1,
  kUsage = 2,
  kTwinVertices = 3,
  kResourceLimit = 4,
  kDegeneratePeriod = 5,
  kNotInLattice = 6,
  kNoCycle = 7,
  kOtherError = 8,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kUsage;
    case ErrorKind::TwinVertices: return kTwinVertices;
    case ErrorKind::InfeasibleClause: return kNoCycle;
    case ErrorKind::ResourceLimit: return kResourceLimit;
    case ErrorKind::IndexTooLarge: return kResourceLimit;
    case ErrorKind::DegeneratePeriod: return kDegeneratePeriod;
    case ErrorKind::NotInLattice: return kNotInLattice;
    case ErrorKind::NoCycle: return kNoCycle;
    default: return kOtherError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

int default_threads() {
  if (const char* env = std::getenv("GRIDCODE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

struct CodeOptions {
  std::string grid = "hex";
  std::string code = "identifying";
  int radius = 1;

  void attach(CLI::App* app) {
    app->add_option("--grid", grid, "preset name (hex, square, king, triangular) or grid file")->capture_default_str();
    app->add_option("--code", code, "identifying | ld | rld")->capture_default_str();
    app->add_option("--radius", radius, "ball radius")->capture_default_str()->check(CLI::PositiveNumber);
  }
  CodeSpec spec() const { return {parse_code_kind(code), radius}; }
};

void print_alpha(const Rational& alpha) { std::cout << "alpha = " << alpha.str() << " (" << alpha.decimal() << ")\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum densities of periodic identifying and locating-dominating codes on grids"};
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default: $GRIDCODE_THREADS or 1)")->check(CLI::PositiveNumber);

  // search
  auto* search = app.add_subcommand("search", "minimum density over codes with a given period");
  CodeOptions search_code;
  search_code.attach(search);
  std::string period = "0,2", variant = "sqrt", emit = "text", out_path;
  std::size_t max_nodes = BuildOptions{}.max_nodes;
  search->add_option("--period", period, "period vector X,Y")->capture_default_str();
  search->add_option("--variant", variant, "quad | linear | sqrt")->capture_default_str();
  search->add_option("--max-nodes", max_nodes, "automaton node cap")->capture_default_str();
  search->add_option("--emit", emit, "json | text | tikz")->capture_default_str();
  search->add_option("--out", out_path, "write the witness code here (default: stdout)");
  search->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run every period listed in a preset file");
  std::string config_path, report_format = "table";
  sweep_cmd->add_option("config", config_path, "preset file")->required();
  sweep_cmd->add_option("--report", report_format, "table | jsonl")->capture_default_str();
  sweep_cmd->add_option("--max-nodes", max_nodes, "automaton node cap")->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "check a code file against the definitions");
  std::string in_path, expect_density, retag;
  verify->add_option("--in", in_path, "code file (json or text)")->required();
  verify->add_option("--expect-density", expect_density, "required density p/q");
  verify->add_option("--as", retag, "check as this code kind instead of the file's");

  // emit
  auto* emit_cmd = app.add_subcommand("emit", "convert a code file");
  std::string format = "text";
  emit_cmd->add_option("--in", in_path, "code file")->required();
  emit_cmd->add_option("--format", format, "json | text | tikz")->capture_default_str();
  emit_cmd->add_option("--out", out_path, "output path (default: stdout)");

  // clauses
  auto* clauses = app.add_subcommand("clauses", "print the minimized forbidden-pattern family");
  CodeOptions clause_code;
  clause_code.attach(clauses);
  bool tikz = false;
  clauses->add_flag("--tikz", tikz, "TikZ drawing instead of the text format");

  // build
  auto* build = app.add_subcommand("build", "dump the strip automaton as an edge list");
  CodeOptions build_code;
  build_code.attach(build);
  std::string nodes_path;
  build->add_option("--period", period, "period vector X,Y")->capture_default_str();
  build->add_option("--max-nodes", max_nodes, "automaton node cap")->capture_default_str();
  build->add_option("--out", out_path, "edge list path (default: stdout)");
  build->add_option("--nodes", nodes_path, "node table sidecar path");
  build->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // mmc
  auto* mmc = app.add_subcommand("mmc", "minimum mean cycle of an edge-list file");
  mmc->add_option("--in", in_path, "edge list")->required();
  mmc->add_option("--variant", variant, "quad | linear | sqrt")->capture_default_str();
  mmc->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // torus
  auto* torus = app.add_subcommand("torus", "exhaustive minimum over codes with two given periods");
  CodeOptions torus_code;
  torus_code.attach(torus);
  std::string second = "2,0", method = "enumerate";
  torus->add_option("--method", method, "enumerate (index <= 28) | bnb (index <= 64)")->capture_default_str();
  torus->add_option("--period", period, "first period X,Y")->capture_default_str();
  torus->add_option("--second", second, "second period X,Y")->capture_default_str();
  torus->add_option("--emit", emit, "json | text | tikz")->capture_default_str();
  torus->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  // bench
  auto* bench = app.add_subcommand("bench", "time the Karp variants on a random graph");
  std::size_t bench_nodes = 2000, bench_degree = 4;
  unsigned seed = 1;
  bench->add_option("--nodes", bench_nodes, "node count")->capture_default_str();
  bench->add_option("--degree", bench_degree, "out-degree")->capture_default_str();
  bench->add_option("--seed", seed, "random seed")->capture_default_str();
  bench->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*search) {
      SearchRequest request;
      request.grid = search_code.grid;
      request.spec = search_code.spec();
      request.period = parse_cell(period);
      request.variant = parse_karp_variant(variant);
      request.caps.max_nodes = max_nodes;
      request.threads = threads;
      const CodeFormat code_format = parse_code_format(emit);
      const SearchResult result = min_density(request);
      std::cerr << "nodes " << result.nodes << ", edges " << result.edges << ", cycle length " << result.cycle_length
                << ", build " << result.build_seconds << " s, karp " << result.karp_seconds << " s\n";
      print_alpha(result.alpha);
      write_output(out_path, format_code(result.code, code_format));
      return kOk;
    }
    if (*sweep_cmd) {
      auto requests = parse_sweep_config(read_file(config_path));
      for (auto& r : requests) {
        r.threads = threads;
        if (sweep_cmd->count("--max-nodes")) r.caps.max_nodes = max_nodes;
      }
      const auto rows = sweep(requests);
      if (report_format == "jsonl") std::cout << sweep_to_jsonl(rows);
      else if (report_format == "table") std::cout << sweep_to_table(rows);
      else throw Error(ErrorKind::Parse, "unknown report format '" + report_format + "'");
      return kOk;
    }
    if (*verify) {
      PeriodicCode code = parse_code(read_file(in_path));
      if (!retag.empty()) code = code.with_spec({parse_code_kind(retag), code.spec().radius});
      const auto result = verify_code(code);
      const Rational d = density(code);
      std::cout << "density = " << d.str() << " (" << d.decimal() << ")\n";
      for (const auto& v : result.violations) std::cout << "violation: " << describe(v) << "\n";
      if (!result.accepted()) {
        std::cout << "rejected as " << code_kind_name(code.spec().kind) << " r=" << code.spec().radius << "\n";
        return kRejected;
      }
      if (!expect_density.empty() && Rational::parse(expect_density) != d) {
        std::cout << "density differs from expected " << expect_density << "\n";
        return kRejected;
      }
      std::cout << "accepted as " << code_kind_name(code.spec().kind) << " r=" << code.spec().radius << "\n";
      return kOk;
    }
    if (*emit_cmd) {
      const CodeFormat f = parse_code_format(format);
      write_output(out_path, format_code(parse_code(read_file(in_path)), f));
      return kOk;
    }
    if (*clauses) {
      const ClauseFamily family = generate_clauses(load_grid(clause_code.grid), clause_code.spec());
      std::cout << (tikz ? family_to_tikz(family) : format_family(family));
      return kOk;
    }
    if (*build) {
      const NormalizedPeriod norm = normalize_period(load_grid(build_code.grid), parse_cell(period));
      if (norm.reflected) std::cerr << "period mirrored to " << norm.period.x << "," << norm.period.y << "\n";
      StripAutomaton automaton(generate_clauses(norm.grid, build_code.spec()), norm.period);
      BuildOptions caps;
      caps.max_nodes = max_nodes;
      caps.threads = threads;
      const BuiltAutomaton built = automaton.build(caps);
      std::cerr << "nodes " << built.node_count() << ", edges " << built.graph.edge_count() << "\n";
      write_output(out_path, format_edge_list(built.graph));
      if (!nodes_path.empty()) write_output(nodes_path, automaton.format_node_table(built));
      return kOk;
    }
    if (*mmc) {
      const WeightedDigraph graph = parse_edge_list(read_file(in_path));
      KarpOptions options;
      options.threads = threads;
      const MeanCycleResult result = karp(graph, parse_karp_variant(variant), options);
      std::cout << "mean = " << result.alpha.str() << " (" << result.alpha.decimal() << ")\n";
      std::cout << "witness = " << result.witness << "\n";
      if (!result.cycle.empty()) {
        std::cout << "cycle =";
        for (NodeId v : result.cycle) std::cout << ' ' << v;
        std::cout << "\n";
      }
      return kOk;
    }
    if (*torus) {
      const GridModel grid = load_grid(torus_code.grid);
      const Lattice2 lattice(parse_cell(period), parse_cell(second));
      if (lattice.determinant() == 0) throw Error(ErrorKind::DegeneratePeriod, "periods are parallel");
      std::optional<TorusOptimum> best;
      if (method == "enumerate") best = torus_bruteforce(grid, torus_code.spec(), lattice, threads);
      else if (method == "bnb") best = torus_branch_and_bound(grid, torus_code.spec(), lattice);
      else throw Error(ErrorKind::Parse, "unknown method '" + method + "'");
      if (!best) {
        std::cout << "infeasible\n";
        return kRejected;
      }
      print_alpha(best->density);
      std::cout << format_code(best->code, parse_code_format(emit));
      return kOk;
    }
    if (*bench) {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(bench_nodes - 1));
      std::uniform_int_distribution<Weight> weight(0, 9);
      std::vector<WeightedEdge> edges;
      for (NodeId u = 0; u < bench_nodes; ++u) {
        edges.push_back({u, static_cast<NodeId>((u + 1) % bench_nodes), weight(rng)});
        for (std::size_t d = 1; d < bench_degree; ++d) edges.push_back({u, pick(rng), weight(rng)});
      }
      const WeightedDigraph graph(bench_nodes, 0, std::move(edges));
      for (KarpVariant v : {KarpVariant::QuadraticSpace, KarpVariant::LinearSpace, KarpVariant::Sqrt3_2Space}) {
        StorageMeter meter;
        KarpOptions options;
        options.threads = threads;
        options.meter = &meter;
        const auto start = std::chrono::steady_clock::now();
        const auto result = karp(graph, v, options);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%-7s mean %-10s %8.3f s  peak entries %zu\n", karp_variant_name(v), result.alpha.str().c_str(), s,
                    meter.peak());
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kUsage;
}
