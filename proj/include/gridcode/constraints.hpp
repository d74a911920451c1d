#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gridcode/grid.hpp"

namespace gridcode {

enum class CodeKind { Identifying, LocatingDominating, RedundantLocatingDominating };

struct CodeSpec {
  CodeKind kind = CodeKind::Identifying;
  int radius = 1;
  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// "identifying", "ld", "rld" (long names are accepted on input too).
std::string code_kind_name(CodeKind kind);
CodeKind parse_code_kind(std::string_view text);

/// "At least `threshold` codewords among `cells`."
///
/// Cells are sorted; cells.front() is the anchor (leftmost, then bottommost)
/// and lies in the grid's coset representative set.
struct ClauseSet {
  std::vector<Cell> cells;
  int threshold = 1;

  Cell anchor() const { return cells.front(); }
  friend bool operator==(const ClauseSet&, const ClauseSet&) = default;
};

/// One representative per T-translation class, minimal under
/// "a translate of (S', t') with S' ⊆ S and t' >= t makes (S, t) redundant".
struct ClauseFamily {
  GridModel grid;
  CodeSpec spec;
  std::vector<ClauseSet> classes;
};

/// Translate `cells` so its anchor lands in the coset representative set, sorted.
ClauseSet canonical_clause(const GridModel& grid, std::vector<Cell> cells, int threshold);

/// Throws TwinVertices when two vertices have equal balls and the code kind
/// is identifying (locating variants separate them by membership).
ClauseFamily generate_clauses(const GridModel& grid, CodeSpec spec);

/// Canonicalizes, deduplicates and drops dominated classes. Output sorted by
/// size, then cells, then threshold.
std::vector<ClauseSet> minimize(const GridModel& grid, std::vector<ClauseSet> raw);

struct ClauseViolation {
  std::size_t class_index = 0;
  Cell shift;                  // translate = class cells + shift
  int codewords = 0;           // codewords found in the translate
};

using CodeOracle = std::function<bool(Cell)>;

/// Every translate whose anchor lies in `anchor_region` holding fewer than
/// `threshold` codewords.
std::vector<ClauseViolation> clause_check(const ClauseFamily& family, const CodeOracle& code,
                                          const std::vector<Cell>& anchor_region);

/// Line format: header lines, then "<threshold> : x,y x,y ..." per class.
std::string format_family(const ClauseFamily& family);
ClauseFamily parse_family(std::string_view text);
/// One tikzpicture per class: grid edges in gray, clause cells as open circles.
std::string family_to_tikz(const ClauseFamily& family);

}  // namespace gridcode
