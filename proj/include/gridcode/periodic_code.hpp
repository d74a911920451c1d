#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gridcode/constraints.hpp"
#include "gridcode/grid.hpp"
#include "gridcode/rational.hpp"

namespace gridcode {

/// A totally periodic code: period lattice plus a rectangular bitmap.
///
/// The rectangle [0,width) x [0,height) must have width a multiple of the
/// lattice's horizontal period and height a multiple of its row period, so it
/// is a fundamental domain of a sublattice; the bits must agree with the
/// lattice. The engine emits the canonical (Hermite normal form) domain.
class PeriodicCode {
 public:
  PeriodicCode(std::string grid, CodeSpec spec, Lattice2 lattice, std::int64_t width, std::int64_t height,
               std::vector<std::uint8_t> bits);

  /// Samples `in_code` on the canonical fundamental domain of `lattice`.
  static PeriodicCode from_function(std::string grid, CodeSpec spec, Lattice2 lattice,
                                    const std::function<bool(Cell)>& in_code);

  const std::string& grid() const noexcept { return grid_; }
  const CodeSpec& spec() const noexcept { return spec_; }
  const Lattice2& lattice() const noexcept { return lattice_; }
  std::int64_t width() const noexcept { return width_; }
  std::int64_t height() const noexcept { return height_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  bool at(Cell c) const;
  std::size_t codewords() const;

  PeriodicCode with_spec(CodeSpec spec) const;

  friend bool operator==(const PeriodicCode& a, const PeriodicCode& b) {
    return a.grid_ == b.grid_ && a.spec_ == b.spec_ && a.lattice_.u() == b.lattice_.u() &&
           a.lattice_.w() == b.lattice_.w() && a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
  }

 private:
  std::string grid_;
  CodeSpec spec_;
  Lattice2 lattice_;
  std::int64_t width_, height_;
  std::vector<std::uint8_t> bits_;  // row-major, row y = 0 first
};

enum class CodeFormat { Json, Text, Tikz };
CodeFormat parse_code_format(std::string_view text);

/// JSON: {"format","version","grid","code","radius","periods","rows","density"}, fixed key order.
std::string to_json(const PeriodicCode& code);
/// '#' codeword, '.' otherwise; header lines, rows listed from y = 0 upward.
std::string to_text(const PeriodicCode& code);
/// Filled unit squares over the bitmap plus a gray grid.
std::string to_tikz(const PeriodicCode& code);
std::string format_code(const PeriodicCode& code, CodeFormat format);

/// Detects JSON or text by the first non-blank character. Throws Parse,
/// including when a stated density disagrees with the bitmap.
PeriodicCode parse_code(std::string_view text);

}  // namespace gridcode
