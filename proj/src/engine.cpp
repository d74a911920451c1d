#include "gridcode/engine.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gridcode/verifier.hpp"

namespace gridcode {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Cell mirror(Cell c) { return {-c.x, c.y}; }

}  // namespace

SearchResult min_density(const SearchRequest& request) {
  const auto started = Clock::now();
  const GridModel grid = load_grid(request.grid);
  const NormalizedPeriod norm = normalize_period(grid, request.period);
  const PeriodVector v = norm.period;

  StripAutomaton automaton(generate_clauses(norm.grid, request.spec), v);
  BuildOptions caps = request.caps;
  caps.threads = request.threads;
  const auto build_start = Clock::now();
  const BuiltAutomaton built = automaton.build(caps);
  const double build_seconds = seconds_since(build_start);

  KarpOptions karp_options;
  karp_options.threads = request.threads;
  const auto karp_start = Clock::now();
  MeanCycleResult mmc = karp(built.graph, request.variant, karp_options);
  if (mmc.cycle.empty()) {
    // The linear-space variant yields the value only; the cycle comes from the
    // checkpointed variant, which must agree.
    MeanCycleResult with_cycle = karp_sqrt_reconstruct(built.graph, karp_options);
    if (with_cycle.alpha != mmc.alpha) throw Error(ErrorKind::Internal, "Karp variants disagree");
    mmc = std::move(with_cycle);
  }
  const double karp_seconds = seconds_since(karp_start);

  const std::int64_t width = automaton.border().width();
  const std::size_t length = mmc.cycle.size() - 1;
  std::vector<StripPattern> patterns;
  for (std::size_t i = 0; i < length; ++i) {
    const NodeId from = mmc.cycle[i], to = mmc.cycle[i + 1];
    auto pattern = automaton.find_pattern(built, from, to, built.graph.min_edge_weight(from, to));
    if (!pattern) throw Error(ErrorKind::Internal, "no pattern realizes a cycle edge");
    patterns.push_back(std::move(*pattern));
  }

  // Step k of the walk writes strip k.
  const Border& border = automaton.border();
  auto in_normalized = [&](Cell c) {
    const auto k = static_cast<std::size_t>(floor_mod(border.strip_of(c), static_cast<std::int64_t>(length)));
    return patterns[k].bits[border.position_of(c)] != 0;
  };
  const Cell step{static_cast<std::int64_t>(length) * width, 0};
  Lattice2 lattice(v.cell(), step);
  std::function<bool(Cell)> in_code = in_normalized;
  if (norm.reflected) {
    lattice = Lattice2(mirror(v.cell()), mirror(step));
    in_code = [&](Cell c) { return in_normalized(mirror(c)); };
  }
  PeriodicCode code = PeriodicCode::from_function(request.grid, request.spec, lattice, in_code);

  const Rational alpha = mmc.alpha / Rational(width * v.y, 1);
  const auto check = verify_code(grid, code, 1);
  if (!check.accepted())
    throw Error(ErrorKind::Internal, "assembled code fails verification: " + describe(check.violations.front()));
  if (density(code) != alpha)
    throw Error(ErrorKind::Internal, "assembled code density " + density(code).str() + " differs from " + alpha.str());

  return SearchResult{alpha,
                      mmc.alpha,
                      std::move(code),
                      length,
                      built.node_count(),
                      built.graph.edge_count(),
                      automaton.family().classes.size(),
                      norm.reflected,
                      build_seconds,
                      karp_seconds,
                      seconds_since(started)};
}

std::vector<SweepRow> sweep(const std::vector<SearchRequest>& requests) {
  std::vector<SweepRow> rows;
  for (const auto& request : requests) {
    SweepRow row{request, std::nullopt, std::nullopt, {}, 0};
    const auto start = Clock::now();
    try {
      row.result = min_density(request);
    } catch (const Error& e) {
      row.error = e.kind();
      row.message = e.what();
    }
    row.seconds = seconds_since(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string period_text(Cell c) { return std::to_string(c.x) + "," + std::to_string(c.y); }

}  // namespace

std::string sweep_to_jsonl(const std::vector<SweepRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    j["grid"] = row.request.grid;
    j["code"] = code_kind_name(row.request.spec.kind);
    j["radius"] = row.request.spec.radius;
    j["period"] = {row.request.period.x, row.request.period.y};
    if (row.result) {
      const auto& r = *row.result;
      j["status"] = "ok";
      j["alpha"] = r.alpha.str();
      j["alpha_decimal"] = r.alpha.decimal();
      j["cycle_length"] = r.cycle_length;
      j["nodes"] = r.nodes;
      j["edges"] = r.edges;
      j["seconds"] = row.seconds;
    } else {
      j["status"] = to_string(*row.error);
      j["message"] = row.message;
      j["seconds"] = row.seconds;
    }
    out += j.dump() + "\n";
  }
  return out;
}

std::string sweep_to_table(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-12s %-3s %-10s %-12s %-10s %-4s %-9s %-9s %s\n", "grid", "code", "r",
                "period", "alpha", "decimal", "L", "nodes", "edges", "seconds");
  out << line;
  for (const auto& row : rows) {
    const auto& q = row.request;
    if (row.result) {
      const auto& r = *row.result;
      std::snprintf(line, sizeof line, "%-10s %-12s %-3d %-10s %-12s %-10s %-4zu %-9zu %-9zu %.2f\n", q.grid.c_str(),
                    code_kind_name(q.spec.kind).c_str(), q.spec.radius, period_text(q.period).c_str(),
                    r.alpha.str().c_str(), r.alpha.decimal().c_str(), r.cycle_length, r.nodes, r.edges, row.seconds);
    } else {
      std::snprintf(line, sizeof line, "%-10s %-12s %-3d %-10s %-12s %s\n", q.grid.c_str(),
                    code_kind_name(q.spec.kind).c_str(), q.spec.radius, period_text(q.period).c_str(),
                    to_string(*row.error), row.message.c_str());
    }
    out << line;
  }
  return out.str();
}

std::vector<SearchRequest> parse_sweep_config(std::string_view text) {
  SearchRequest base;
  std::vector<Cell> periods;
  std::istringstream in{std::string(text)};
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "grid") base.grid = value;
      else if (key == "code") base.spec.kind = parse_code_kind(value);
      else if (key == "radius") base.spec.radius = std::stoi(value);
      else if (key == "variant") base.variant = parse_karp_variant(value);
      else if (key == "max_nodes") base.caps.max_nodes = std::stoull(value);
      else if (key == "threads") base.threads = std::stoi(value);
      else if (key == "periods") {
        std::istringstream list(value);
        std::string item;
        while (std::getline(list, item, ';'))
          if (!trim(item).empty()) periods.push_back(parse_cell(trim(item)));
      } else {
        throw Error(ErrorKind::Parse, "unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "bad value for '" + key + "': " + value);
    }
  }
  std::vector<SearchRequest> requests;
  for (const Cell& p : periods) {
    SearchRequest r = base;
    r.period = p;
    requests.push_back(r);
  }
  return requests;
}

}  // namespace gridcode
