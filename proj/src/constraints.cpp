#include "gridcode/constraints.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gridcode/error.hpp"

namespace gridcode {

std::string code_kind_name(CodeKind kind) {
  switch (kind) {
    case CodeKind::Identifying: return "identifying";
    case CodeKind::LocatingDominating: return "ld";
    case CodeKind::RedundantLocatingDominating: return "rld";
  }
  return "?";
}

CodeKind parse_code_kind(std::string_view text) {
  if (text == "identifying" || text == "id") return CodeKind::Identifying;
  if (text == "ld" || text == "locating-dominating") return CodeKind::LocatingDominating;
  if (text == "rld" || text == "redundant-locating-dominating") return CodeKind::RedundantLocatingDominating;
  throw Error(ErrorKind::Parse, "unknown code kind '" + std::string(text) + "'");
}

ClauseSet canonical_clause(const GridModel& grid, std::vector<Cell> cells, int threshold) {
  if (cells.empty()) throw Error(ErrorKind::Internal, "empty clause");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  const Cell shift = grid.coset_rep(cells.front()) - cells.front();
  for (Cell& c : cells) c = c + shift;
  return {std::move(cells), threshold};
}

namespace {

std::vector<Cell> symmetric_difference(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  std::vector<Cell> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool class_order(const ClauseSet& a, const ClauseSet& b) {
  if (a.cells.size() != b.cells.size()) return a.cells.size() < b.cells.size();
  if (a.cells != b.cells) return a.cells < b.cells;
  return a.threshold < b.threshold;
}

// Some T-translate of `small` lies inside `big` (both sorted).
bool has_translate_inside(const GridModel& grid, const std::vector<Cell>& small, const std::vector<Cell>& big) {
  if (small.size() > big.size()) return false;
  for (const Cell& target : big) {
    const Cell shift = target - small.front();
    if (!grid.translations().contains(shift)) continue;
    bool inside = true;
    for (const Cell& c : small) {
      if (!std::binary_search(big.begin(), big.end(), c + shift)) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

}  // namespace

std::vector<ClauseSet> minimize(const GridModel& grid, std::vector<ClauseSet> raw) {
  for (auto& clause : raw) clause = canonical_clause(grid, std::move(clause.cells), clause.threshold);
  std::sort(raw.begin(), raw.end(), class_order);
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  std::vector<ClauseSet> kept;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < raw.size() && !dominated; ++j) {
      if (i == j || raw[j].threshold < raw[i].threshold) continue;
      // Equal cell sets with equal thresholds were removed above, so j != i
      // with identical cells means a strictly larger threshold.
      dominated = has_translate_inside(grid, raw[j].cells, raw[i].cells);
    }
    if (!dominated) kept.push_back(raw[i]);
  }
  return kept;
}

ClauseFamily generate_clauses(const GridModel& grid, CodeSpec spec) {
  if (spec.radius < 1) throw Error(ErrorKind::Parse, "radius must be at least 1");
  const int r = spec.radius;
  const int threshold = spec.kind == CodeKind::RedundantLocatingDominating ? 2 : 1;
  const bool locating = spec.kind != CodeKind::Identifying;

  std::vector<ClauseSet> raw;
  for (const Cell& u : grid.cosets()) {
    const auto ball_u = grid.ball(u, r);
    raw.push_back({ball_u, threshold});
    for (const Cell& v : grid.ball(u, 2 * r)) {
      if (v == u) continue;
      std::vector<Cell> cells = symmetric_difference(ball_u, grid.ball(v, r));
      if (cells.empty() && !locating) {
        std::ostringstream msg;
        msg << "vertices " << u << " and " << v << " have identical radius-" << r << " balls";
        throw Error(ErrorKind::TwinVertices, msg.str());
      }
      if (locating) {
        cells.push_back(u);
        cells.push_back(v);
      }
      raw.push_back({std::move(cells), threshold});
    }
  }
  for (const auto& clause : raw) {
    std::set<Cell> distinct(clause.cells.begin(), clause.cells.end());
    if (static_cast<int>(distinct.size()) < clause.threshold)
      throw Error(ErrorKind::InfeasibleClause, "clause smaller than its threshold; no code exists");
  }
  return {grid, spec, minimize(grid, std::move(raw))};
}

std::vector<ClauseViolation> clause_check(const ClauseFamily& family, const CodeOracle& code,
                                          const std::vector<Cell>& anchor_region) {
  std::vector<ClauseViolation> out;
  const auto& lattice = family.grid.translations();
  for (std::size_t k = 0; k < family.classes.size(); ++k) {
    const ClauseSet& clause = family.classes[k];
    for (const Cell& a : anchor_region) {
      const Cell shift = a - clause.anchor();
      if (!lattice.contains(shift)) continue;
      int count = 0;
      for (const Cell& c : clause.cells)
        if (code(c + shift)) ++count;
      if (count < clause.threshold) out.push_back({k, shift, count});
    }
  }
  return out;
}

std::string format_family(const ClauseFamily& family) {
  std::ostringstream out;
  out << "# gridcode clause family v1\n";
  out << "grid " << family.grid.name() << "\n";
  out << "code " << code_kind_name(family.spec.kind) << "\n";
  out << "radius " << family.spec.radius << "\n";
  out << "classes " << family.classes.size() << "\n";
  for (const auto& clause : family.classes) {
    out << clause.threshold << " :";
    for (const Cell& c : clause.cells) out << ' ' << c.x << ',' << c.y;
    out << "\n";
  }
  return out.str();
}

ClauseFamily parse_family(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, grid_name;
  CodeSpec spec;
  std::vector<ClauseSet> raw;
  long expected = -1;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    if (key == "grid") {
      words >> grid_name;
    } else if (key == "code") {
      std::string kind;
      words >> kind;
      spec.kind = parse_code_kind(kind);
    } else if (key == "radius") {
      if (!(words >> spec.radius)) throw Error(ErrorKind::Parse, "bad radius line");
    } else if (key == "classes") {
      if (!(words >> expected)) throw Error(ErrorKind::Parse, "bad classes line");
    } else {
      ClauseSet clause;
      try {
        clause.threshold = std::stoi(key);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "unexpected line in clause file: " + line);
      }
      std::string colon, tok;
      if (!(words >> colon) || colon != ":") throw Error(ErrorKind::Parse, "clause line needs ':'");
      while (words >> tok) clause.cells.push_back(parse_cell(tok));
      if (clause.cells.empty() || clause.threshold < 1 ||
          clause.threshold > static_cast<int>(clause.cells.size()))
        throw Error(ErrorKind::Parse, "clause needs 1 <= threshold <= |cells|");
      raw.push_back(std::move(clause));
    }
  }
  if (grid_name.empty()) throw Error(ErrorKind::Parse, "clause file lacks a grid line");
  if (expected >= 0 && expected != static_cast<long>(raw.size()))
    throw Error(ErrorKind::Parse, "clause count does not match 'classes' header");
  GridModel grid = load_grid(grid_name);
  return {grid, spec, minimize(grid, std::move(raw))};
}

std::string family_to_tikz(const ClauseFamily& family) {
  std::ostringstream out;
  out << "\\begin{center}";
  for (const auto& clause : family.classes) {
    std::int64_t x0 = clause.cells.front().x, x1 = x0, y0 = clause.cells.front().y, y1 = y0;
    for (const Cell& c : clause.cells) {
      x0 = std::min(x0, c.x);
      x1 = std::max(x1, c.x);
      y0 = std::min(y0, c.y);
      y1 = std::max(y1, c.y);
    }
    out << "\\begin{tikzpicture}[scale=0.2]";
    for (std::int64_t x = x0 - 1; x <= x1 + 1; ++x) {
      for (std::int64_t y = y0 - 1; y <= y1 + 1; ++y) {
        for (const Cell& n : family.grid.neighbors({x, y})) {
          if (n.x < x0 - 1 || n.x > x1 + 1 || n.y < y0 - 1 || n.y > y1 + 1) continue;
          if (Cell{x, y} < n) out << "\\draw[gray] (" << x << ',' << y << ") -- (" << n.x << ',' << n.y << ");";
        }
      }
    }
    for (const Cell& c : clause.cells) out << "\\filldraw[black,fill=white] (" << c.x << ',' << c.y << ") circle (7pt);";
    if (clause.threshold > 1) out << "\\node at (" << x0 << ',' << y1 + 1 << ") {$\\geq " << clause.threshold << "$};";
    out << "\\end{tikzpicture} \\;";
  }
  out << "\\end{center}\n";
  return out.str();
}

}  // namespace gridcode
