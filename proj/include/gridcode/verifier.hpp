#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridcode/grid.hpp"
#include "gridcode/periodic_code.hpp"
#include "gridcode/rational.hpp"

namespace gridcode {

// The verifier works from the code definitions (balls and identifying sets);
// it never consults a clause family.

enum class ViolationKind {
  Undominated,      // B_r(u) ∩ C is empty
  NotSeparated,     // B_r(u) ∩ C == B_r(v) ∩ C for a pair that must differ
  NotRedundant,     // removing `removed` breaks locating-domination
};

struct CodeViolation {
  ViolationKind kind = ViolationKind::Undominated;
  Cell u;
  std::optional<Cell> v;
  std::optional<Cell> removed;
};

std::string describe(const CodeViolation& violation);

struct VerifyResult {
  std::vector<CodeViolation> violations;
  bool accepted() const noexcept { return violations.empty(); }
};

/// Checks every vertex of one fundamental domain (of the code lattice
/// intersected with the grid translations) and every pair within distance 2r.
VerifyResult verify_code(const GridModel& grid, const PeriodicCode& code, std::size_t max_violations = 64);
/// Loads the grid named in the code.
VerifyResult verify_code(const PeriodicCode& code, std::size_t max_violations = 64);

/// Codewords per fundamental domain over the domain size, reduced.
Rational density(const PeriodicCode& code);

struct TorusOptimum {
  Rational density;
  PeriodicCode code;
};

/// Minimum density over every lattice-periodic code, by exhaustive
/// enumeration in order of codeword count; nullopt when no valid code exists.
/// Throws IndexTooLarge when the lattice index exceeds `max_index` (<= 28).
std::optional<TorusOptimum> torus_bruteforce(const GridModel& grid, CodeSpec spec, const Lattice2& lattice,
                                             int threads = 1, std::int64_t max_index = 28);

struct TorusSearchStats {
  std::uint64_t visited = 0;  // search tree nodes
};

/// Same optimum as torus_bruteforce, found by depth-first branch and bound
/// over the domain cells with disjoint-requirement lower bounds; reaches
/// lattices of index up to 64. The witness is the first optimal code in the
/// fixed search order. Throws IndexTooLarge above 64.
std::optional<TorusOptimum> torus_branch_and_bound(const GridModel& grid, CodeSpec spec, const Lattice2& lattice,
                                                   TorusSearchStats* stats = nullptr);

}  // namespace gridcode
