#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridcode/automaton.hpp"
#include "gridcode/constraints.hpp"
#include "gridcode/error.hpp"
#include "gridcode/mmc.hpp"
#include "gridcode/periodic_code.hpp"
#include "gridcode/rational.hpp"

namespace gridcode {

struct SearchRequest {
  std::string grid = "hex";  // preset name or grid file path
  CodeSpec spec;
  Cell period{0, 2};
  KarpVariant variant = KarpVariant::Sqrt3_2Space;
  BuildOptions caps;
  int threads = 1;
};

struct SearchResult {
  Rational alpha;        // minimum density of a period-v code
  Rational mean_weight;  // Karp mean, codewords per automaton step
  PeriodicCode code;     // witness with periods v and (L*W, 0)
  std::size_t cycle_length = 0;  // L
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t classes = 0;
  bool reflected = false;
  double build_seconds = 0;
  double karp_seconds = 0;
  double total_seconds = 0;
};

/// Full pipeline: clauses, automaton, minimum mean cycle, code assembly and
/// re-verification. Throws the Error kinds of every stage; Internal when the
/// witness does not re-verify at density alpha.
SearchResult min_density(const SearchRequest& request);

struct SweepRow {
  SearchRequest request;
  std::optional<SearchResult> result;
  std::optional<ErrorKind> error;
  std::string message;
  double seconds = 0;
};

/// Runs every request; a failing request becomes a row with `error` set.
std::vector<SweepRow> sweep(const std::vector<SearchRequest>& requests);

/// One JSON object per line.
std::string sweep_to_jsonl(const std::vector<SweepRow>& rows);
std::string sweep_to_table(const std::vector<SweepRow>& rows);

/// key = value preset: grid, code, radius, periods (x,y;x,y;...), variant,
/// max_nodes, threads. '#' starts a comment.
std::vector<SearchRequest> parse_sweep_config(std::string_view text);

}  // namespace gridcode
