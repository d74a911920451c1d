#include "gridcode/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <unordered_map>

#include "gridcode/error.hpp"

namespace gridcode {

std::string describe(const CodeViolation& violation) {
  std::ostringstream out;
  switch (violation.kind) {
    case ViolationKind::Undominated: out << "vertex " << violation.u << " has no codeword within the radius"; break;
    case ViolationKind::NotSeparated:
      out << "vertices " << violation.u << " and " << *violation.v << " have the same identifying set";
      break;
    case ViolationKind::NotRedundant:
      out << "removing codeword " << *violation.removed << " breaks ";
      if (violation.v) out << "separation of " << violation.u << " and " << *violation.v;
      else out << "domination of " << violation.u;
      break;
  }
  return out.str();
}

namespace {

// Code lattice vectors that are also grid automorphisms. If the code lattice
// is not inside T, index(T) times it always is.
Lattice2 checking_lattice(const GridModel& grid, const Lattice2& lattice) {
  const auto& t = grid.translations();
  if (t.contains(lattice.u()) && t.contains(lattice.w())) return lattice;
  const std::int64_t k = t.index();
  return Lattice2(k * lattice.u(), k * lattice.w());
}

std::vector<Cell> domain_of(const Lattice2& lattice) {
  std::vector<Cell> cells;
  for (std::int64_t y = 0; y < lattice.hnf_c(); ++y)
    for (std::int64_t x = 0; x < lattice.hnf_a(); ++x) cells.push_back({x, y});
  return cells;
}

class DefinitionChecker {
 public:
  DefinitionChecker(const GridModel& grid, const PeriodicCode& code) : grid_(grid), code_(code), r_(code.spec().radius) {}

  bool member(Cell c, std::optional<Cell> removed) const { return code_.at(c) && (!removed || c != *removed); }

  std::vector<Cell> trace(Cell u, std::optional<Cell> removed) const {
    std::vector<Cell> out;
    for (const Cell& c : grid_.ball(u, r_))
      if (member(c, removed)) out.push_back(c);
    return out;
  }

  // Locating-domination (or identification) conditions at u, and for pairs (u, v), d(u,v) <= 2r.
  void check_vertex(Cell u, bool identifying, std::optional<Cell> removed, std::vector<CodeViolation>& out,
                    std::size_t limit) const {
    const auto tu = trace(u, removed);
    auto report = [&](CodeViolation v) {
      if (out.size() < limit) {
        if (removed) {
          v.removed = removed;
          v.kind = ViolationKind::NotRedundant;
        }
        out.push_back(v);
      }
    };
    if (tu.empty()) report({ViolationKind::Undominated, u, std::nullopt, std::nullopt});
    if (!identifying && member(u, removed)) return;
    for (const Cell& v : grid_.ball(u, 2 * r_)) {
      if (v == u) continue;
      if (!identifying && member(v, removed)) continue;
      if (trace(v, removed) == tu) report({ViolationKind::NotSeparated, u, v, std::nullopt});
    }
  }

 private:
  const GridModel& grid_;
  const PeriodicCode& code_;
  int r_;
};

}  // namespace

VerifyResult verify_code(const GridModel& grid, const PeriodicCode& code, std::size_t max_violations) {
  VerifyResult result;
  const DefinitionChecker checker(grid, code);
  const bool identifying = code.spec().kind == CodeKind::Identifying;
  const auto domain = domain_of(checking_lattice(grid, code.lattice()));
  for (const Cell& u : domain) checker.check_vertex(u, identifying, std::nullopt, result.violations, max_violations);
  if (code.spec().kind != CodeKind::RedundantLocatingDominating || !result.accepted()) return result;

  // Only vertices within distance r of the removed codeword see a changed
  // identifying set, and only the removed cell changes membership.
  for (const Cell& c : domain) {
    if (!code.at(c)) continue;
    for (const Cell& u : grid.ball(c, code.spec().radius))
      checker.check_vertex(u, false, c, result.violations, max_violations);
    if (result.violations.size() >= max_violations) break;
  }
  return result;
}

VerifyResult verify_code(const PeriodicCode& code, std::size_t max_violations) {
  return verify_code(load_grid(code.grid()), code, max_violations);
}

Rational density(const PeriodicCode& code) {
  return Rational(static_cast<std::int64_t>(code.codewords()), code.width() * code.height());
}

namespace {

// For one lattice: every condition "some codeword among these domain
// positions", straight from the definitions (pairs within distance 2r).
std::vector<std::uint64_t> torus_requirements(const GridModel& grid, CodeSpec spec, const Lattice2& lattice) {
  const std::int64_t width = lattice.hnf_a();
  auto bit = [&](Cell c) {
    const Cell r = lattice.reduce(c);
    return std::uint64_t{1} << (r.y * width + r.x);
  };
  auto mask_of = [&](const std::vector<Cell>& cells) {
    std::uint64_t m = 0;
    for (const Cell& c : cells) m |= bit(c);
    return m;
  };
  const int r = spec.radius;
  std::vector<std::uint64_t> masks;
  for (const Cell& u : domain_of(checking_lattice(grid, lattice))) {
    const auto bu = grid.ball(u, r);
    masks.push_back(mask_of(bu));
    for (const Cell& v : grid.ball(u, 2 * r)) {
      if (v == u) continue;
      std::vector<Cell> diff;
      const auto bv = grid.ball(v, r);
      std::set_symmetric_difference(bu.begin(), bu.end(), bv.begin(), bv.end(), std::back_inserter(diff));
      std::uint64_t m = mask_of(diff);
      if (spec.kind != CodeKind::Identifying) m |= bit(u) | bit(v);
      masks.push_back(m);
    }
  }
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    return pa != pb ? pa < pb : a < b;
  });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

bool satisfies(const std::vector<std::uint64_t>& masks, std::uint64_t code) {
  for (std::uint64_t m : masks)
    if ((m & code) == 0) return false;
  return true;
}

// Smallest combination (in colex order) of `k` ones among the low `bits`
// positions with the top one at `top` that passes `accept`.
template <typename Accept>
std::optional<std::uint64_t> first_with_top(int bits_below, int k_below, int top, const Accept& accept) {
  const std::uint64_t high = std::uint64_t{1} << top;
  if (k_below == 0) return accept(high) ? std::optional<std::uint64_t>(high) : std::nullopt;
  if (k_below > bits_below) return std::nullopt;
  std::uint64_t comb = (std::uint64_t{1} << k_below) - 1;
  const std::uint64_t limit = std::uint64_t{1} << bits_below;
  while (comb < limit) {
    if (accept(comb | high)) return comb | high;
    const std::uint64_t lowest = comb & (~comb + 1);
    const std::uint64_t ripple = comb + lowest;
    comb = (((ripple ^ comb) >> 2) / lowest) | ripple;
  }
  return std::nullopt;
}

}  // namespace

std::optional<TorusOptimum> torus_bruteforce(const GridModel& grid, CodeSpec spec, const Lattice2& lattice,
                                             int threads, std::int64_t max_index) {
  const std::int64_t index = lattice.index();
  if (index > std::min<std::int64_t>(max_index, 28))
    throw Error(ErrorKind::IndexTooLarge, "torus index " + std::to_string(index) + " exceeds the enumeration cap");
  const auto masks = torus_requirements(grid, spec, lattice);
  const int n = static_cast<int>(index);
  const std::string& grid_name = grid.name();

  auto to_code = [&](std::uint64_t bits) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cells[i] = (bits >> i) & 1U;
    return PeriodicCode(grid_name, spec, lattice, lattice.hnf_a(), lattice.hnf_c(), std::move(cells));
  };
  // The masks are exact for identifying and locating-dominating codes and a
  // necessary condition for the redundant variant; the definitional verifier
  // has the final word either way.
  auto accept = [&](std::uint64_t bits) {
    return satisfies(masks, bits) && verify_code(grid, to_code(bits), 1).accepted();
  };

  for (int k = 0; k <= n; ++k) {
    std::optional<std::uint64_t> best;
    if (k == 0) {
      if (accept(0)) best = 0;
    } else {
      std::vector<std::optional<std::uint64_t>> per_top(static_cast<std::size_t>(n));
#pragma omp parallel for num_threads(threads > 0 ? threads : 1) schedule(dynamic, 1) if (threads > 1)
      for (int top = k - 1; top < n; ++top) per_top[static_cast<std::size_t>(top)] = first_with_top(top, k - 1, top, accept);
      for (const auto& found : per_top)
        if (found) {
          best = found;
          break;
        }
    }
    if (best) return TorusOptimum{Rational(k, index), to_code(*best)};
  }
  return std::nullopt;
}


namespace {

// Depth-first search over cells in column-major order. A requirement is
// checked once its last cell is decided.
class TorusSearch {
 public:
  TorusSearch(const GridModel& grid, CodeSpec spec, const Lattice2& lattice)
      : grid_(grid), spec_(spec), lattice_(lattice), n_(static_cast<int>(lattice.index())) {
    const std::int64_t width = lattice.hnf_a(), height = lattice.hnf_c();
    std::vector<int> order_of(static_cast<std::size_t>(n_));
    for (std::int64_t x = 0, k = 0; x < width; ++x)
      for (std::int64_t y = 0; y < height; ++y, ++k) {
        order_of[static_cast<std::size_t>(y * width + x)] = static_cast<int>(k);
        cell_of_.push_back({x, y});
      }
    std::vector<std::uint64_t> remapped;
    for (std::uint64_t m : torus_requirements(grid, spec, lattice)) {
      std::uint64_t r = 0;
      for (int i = 0; i < n_; ++i)
        if ((m >> i) & 1U) r |= std::uint64_t{1} << order_of[static_cast<std::size_t>(i)];
      remapped.push_back(r);
    }
    std::sort(remapped.begin(), remapped.end());
    remapped.erase(std::unique(remapped.begin(), remapped.end()), remapped.end());
    checks_.resize(static_cast<std::size_t>(n_));
    for (std::uint64_t m : remapped) {
      if (m == 0) infeasible_ = true;
      else checks_[static_cast<std::size_t>(63 - __builtin_clzll(m))].push_back(m);
    }

    all_ = remapped;
    std::stable_sort(all_.begin(), all_.end(), [](std::uint64_t a, std::uint64_t b) {
      return __builtin_popcountll(a) < __builtin_popcountll(b);
    });
  }

  // Smallest codeword count (and first code in search order) that is at most `limit`.
  std::optional<std::uint64_t> run(int limit) {
    limit_ = limit;
    found_.reset();
    if (!infeasible_) descend(0, 0, 0);
    return found_;
  }

  PeriodicCode to_code(std::uint64_t ordered_bits) const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_));
    const std::int64_t width = lattice_.hnf_a();
    for (int k = 0; k < n_; ++k)
      if ((ordered_bits >> k) & 1U) {
        const Cell c = cell_of_[static_cast<std::size_t>(k)];
        bits[static_cast<std::size_t>(c.y * width + c.x)] = 1;
      }
    return PeriodicCode(grid_.name(), spec_, lattice_, lattice_.hnf_a(), lattice_.hnf_c(), std::move(bits));
  }

  int n() const noexcept { return n_; }
  std::uint64_t visited() const noexcept { return visited_; }

 private:
  // Unsatisfied requirements whose undecided parts are pairwise disjoint
  // each still need their own codeword.
  int lower_bound(int depth, std::uint64_t code) const {
    const std::uint64_t free = depth == 64 ? 0 : ~std::uint64_t{0} << depth;
    std::uint64_t used = 0;
    int count = 0;
    for (std::uint64_t m : all_) {
      if (m & code) continue;
      const std::uint64_t rest = m & free;
      if (rest & used) continue;
      used |= rest;
      ++count;
    }
    return count;
  }

  void descend(int depth, std::uint64_t code, int ones) {
    ++visited_;
    if (found_) return;
    if (ones + lower_bound(depth, code) > limit_) return;
    if (depth == n_) {
      if (verify_code(grid_, to_code(code), 1).accepted()) {
        found_ = code;
      }
      return;
    }
    for (int value = 0; value < 2 && !found_; ++value) {
      const std::uint64_t next = value ? code | (std::uint64_t{1} << depth) : code;
      bool ok = true;
      for (std::uint64_t m : checks_[static_cast<std::size_t>(depth)])
        if ((m & next) == 0) {
          ok = false;
          break;
        }
      if (ok) descend(depth + 1, next, ones + value);
    }
  }

  const GridModel& grid_;
  CodeSpec spec_;
  Lattice2 lattice_;
  int n_;
  std::vector<Cell> cell_of_;
  std::vector<std::vector<std::uint64_t>> checks_;
  std::vector<std::uint64_t> all_;  // every requirement, smallest first
  bool infeasible_ = false;
  int limit_ = 0;
  std::optional<std::uint64_t> found_;
  std::uint64_t visited_ = 0;
};

}  // namespace

std::optional<TorusOptimum> torus_branch_and_bound(const GridModel& grid, CodeSpec spec, const Lattice2& lattice,
                                                   TorusSearchStats* stats) {
  if (lattice.index() > 64)
    throw Error(ErrorKind::IndexTooLarge, "torus index " + std::to_string(lattice.index()) + " exceeds 64");
  TorusSearch search(grid, spec, lattice);
  // Raising the limit one codeword at a time makes the first hit optimal.
  std::optional<TorusOptimum> best;
  for (int limit = 0; limit <= search.n(); ++limit) {
    if (auto hit = search.run(limit)) {
      best = TorusOptimum{Rational(__builtin_popcountll(*hit), lattice.index()), search.to_code(*hit)};
      break;
    }
  }
  if (stats) stats->visited = search.visited();
  return best;
}

}  // namespace gridcode
