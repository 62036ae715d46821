#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "th4/error.hpp"

namespace th4 {

inline constexpr std::size_t kMaxDims = 4;

/// A set of dimension indices (0 = W, 1 = X, 2 = Y, 3 = Z) stored as a bitmask.
/// Iteration and naming always follow ascending index order.
class DimSet {
 public:
  constexpr DimSet() = default;
  constexpr explicit DimSet(std::uint8_t mask) : mask_(mask & 0x0F) {}
  DimSet(std::initializer_list<std::size_t> dims) {
    for (auto d : dims) {
      if (d >= kMaxDims) throw UsageError("dimension index out of range: " + std::to_string(d));
      mask_ |= static_cast<std::uint8_t>(1u << d);
    }
  }

  static constexpr DimSet all(std::size_t arity) {
    return DimSet(static_cast<std::uint8_t>((1u << arity) - 1));
  }

  /// Parses names such as "wxz", "W,X,Z" or "x y". Case-insensitive.
  static DimSet parse(std::string_view names);

  constexpr std::uint8_t mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr bool contains(std::size_t d) const noexcept {
    return d < kMaxDims && ((mask_ >> d) & 1u);
  }
  constexpr bool subset_of(DimSet other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask_)));
  }
  /// Highest index + 1, or 0 for the empty set.
  constexpr std::size_t span() const noexcept {
    return static_cast<std::size_t>(std::bit_width(static_cast<unsigned>(mask_)));
  }

  std::vector<std::size_t> indices() const;
  /// Upper-case letters in ascending order, e.g. "WXZ".
  std::string name() const;

  constexpr DimSet operator|(DimSet o) const noexcept { return DimSet(mask_ | o.mask_); }
  constexpr DimSet operator&(DimSet o) const noexcept { return DimSet(mask_ & o.mask_); }
  constexpr DimSet without(DimSet o) const noexcept {
    return DimSet(static_cast<std::uint8_t>(mask_ & ~o.mask_));
  }
  constexpr auto operator<=>(const DimSet&) const = default;

 private:
  std::uint8_t mask_ = 0;
};

/// Dimension letter for index 0..3.
char dim_letter(std::size_t d);
/// Index for a dimension letter (w/x/y/z, either case).
std::size_t dim_index(char letter);

/// All non-empty subsets of {0..3} in the fixed report order: by size, then
/// lexicographically by letters (W, X, Y, Z, WX, WY, WZ, XY, ... , WXYZ).
const std::vector<DimSet>& report_order();

}  // namespace th4
