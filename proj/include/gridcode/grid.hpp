#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gridcode {

/// A vertex of a gridlike graph; every point of Z^2 is a vertex.
struct Cell {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr Cell operator+(Cell a, Cell b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Cell operator-(Cell a, Cell b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Cell operator-(Cell a) noexcept { return {-a.x, -a.y}; }
  friend constexpr Cell operator*(std::int64_t k, Cell a) noexcept { return {k * a.x, k * a.y}; }
  // Lexicographic: leftmost first, ties broken bottommost first.
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

std::ostream& operator<<(std::ostream& os, Cell c);

struct CellHash {
  std::size_t operator()(Cell c) const noexcept {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(c.x) * 0x9E3779B97F4A7C15ULL ^
                                      static_cast<std::uint64_t>(c.y));
  }
};

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

/// Rank-2 sublattice of Z^2 given by two basis vectors.
///
/// Internally kept in Hermite normal form {(k*a + m*b, m*c)} with
/// a, c > 0 and 0 <= b < a, which makes membership and reduction O(1).
class Lattice2 {
 public:
  Lattice2(Cell u, Cell w);

  Cell u() const noexcept { return u_; }
  Cell w() const noexcept { return w_; }
  std::int64_t determinant() const noexcept { return u_.x * w_.y - u_.y * w_.x; }
  std::int64_t index() const noexcept { return hnf_a_ * hnf_c_; }

  /// Width of the canonical fundamental domain: the least k > 0 with (k,0) in the lattice.
  std::int64_t hnf_a() const noexcept { return hnf_a_; }
  std::int64_t hnf_b() const noexcept { return hnf_b_; }
  /// Height of the canonical fundamental domain: the least positive row of a lattice vector.
  std::int64_t hnf_c() const noexcept { return hnf_c_; }

  bool contains(Cell c) const noexcept;
  /// The unique representative of c + lattice inside [0,a) x [0,c).
  Cell reduce(Cell c) const noexcept;

  friend bool operator==(const Lattice2& a, const Lattice2& b) noexcept {
    return a.hnf_a_ == b.hnf_a_ && a.hnf_b_ == b.hnf_b_ && a.hnf_c_ == b.hnf_c_;
  }

 private:
  Cell u_, w_;
  std::int64_t hnf_a_ = 1, hnf_b_ = 0, hnf_c_ = 1;
};

/// Z^2-gridlike graph: a translation lattice T acting by automorphisms,
/// coset representatives D, and neighbor offsets for each representative.
/// Immutable after construction; copies share the ball cache.
class GridModel {
 public:
  GridModel(std::string name, Lattice2 translations, std::vector<Cell> cosets,
            std::vector<std::vector<Cell>> neighbor_offsets, bool mirrored = false);

  const std::string& name() const noexcept { return name_; }
  const Lattice2& translations() const noexcept { return translations_; }
  const std::vector<Cell>& cosets() const noexcept { return cosets_; }
  const std::vector<std::vector<Cell>>& neighbor_offsets() const noexcept { return offsets_; }
  /// Strip step width: least k > 0 with (k, 0) in T.
  std::int64_t step_width() const noexcept { return translations_.hnf_a(); }
  bool mirrored() const noexcept { return mirrored_; }

  std::size_t coset_of(Cell c) const;
  /// The coset representative equivalent to c under T.
  Cell coset_rep(Cell c) const { return cosets_[coset_of(c)]; }
  std::vector<Cell> neighbors(Cell c) const;

  /// Closed ball of radius r, sorted. Memoized per (coset, r).
  std::vector<Cell> ball(Cell c, int r) const;
  /// Path distance, or -1 if it exceeds max_radius.
  int distance(Cell a, Cell b, int max_radius) const;

  /// Image under (x, y) -> (-x, y).
  GridModel reflected() const;

 private:
  struct BallCache;

  std::string name_;
  Lattice2 translations_;
  std::vector<Cell> cosets_;
  std::vector<std::vector<Cell>> offsets_;
  std::vector<Cell> coset_keys_;  // translations_.reduce(cosets_[i])
  bool mirrored_ = false;
  std::shared_ptr<BallCache> cache_;
};

/// "hex", "square", "king", "triangular".
GridModel make_preset_grid(std::string_view name);
std::vector<std::string> preset_grid_names();

/// Declarative grid file:
///   name <id>
///   lattice ux,uy wx,wy
///   coset dx,dy : ox,oy ox,oy ...      (one line per coset representative)
GridModel parse_grid(std::string_view text);
/// Preset name, or a path to a grid file.
GridModel load_grid(const std::string& name_or_path);

Cell parse_cell(std::string_view text);

/// Period vector normalized so that y > 0 and x >= 0.
struct PeriodVector {
  std::int64_t x = 0;
  std::int64_t y = 1;
  Cell cell() const noexcept { return {x, y}; }
  friend bool operator==(const PeriodVector&, const PeriodVector&) = default;
};

struct NormalizedPeriod {
  GridModel grid;  // reflected copy of the input grid when `reflected`
  PeriodVector period;
  bool reflected = false;
};

/// Chooses the sign making y > 0 and mirrors the grid when x < 0.
/// Throws NotInLattice or DegeneratePeriod.
NormalizedPeriod normalize_period(const GridModel& grid, Cell raw);

/// c + k*v with row in [0, v.y).
Cell reduce_mod_period(PeriodVector v, Cell c);

}  // namespace gridcode
