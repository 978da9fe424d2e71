#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace relalg {

using AtomId = std::size_t;

inline constexpr std::size_t kMaxAtoms = 64;

// An element of a finite complex algebra: a set of atoms stored as a bitmask.
class Element {
 public:
  constexpr Element() = default;
  static constexpr Element from_bits(std::uint64_t bits) { return Element(bits); }
  static constexpr Element atom(AtomId a) { return Element(std::uint64_t{1} << a); }
  // All atoms below n.
  static constexpr Element first(std::size_t n) {
    return Element(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(AtomId a) const { return (bits_ >> a) & 1U; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool is_atom() const { return std::has_single_bit(bits_); }
  constexpr bool subset_of(Element o) const { return (bits_ & ~o.bits_) == 0; }
  // Index of the lowest atom; only meaningful when non-empty.
  constexpr AtomId lowest() const { return static_cast<AtomId>(std::countr_zero(bits_)); }

  std::vector<AtomId> atoms() const {
    std::vector<AtomId> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<AtomId>(std::countr_zero(b)));
  }

  constexpr Element operator|(Element o) const { return Element(bits_ | o.bits_); }
  constexpr Element operator&(Element o) const { return Element(bits_ & o.bits_); }
  constexpr Element minus(Element o) const { return Element(bits_ & ~o.bits_); }
  constexpr Element& operator|=(Element o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr Element& operator&=(Element o) {
    bits_ &= o.bits_;
    return *this;
  }

  constexpr bool operator==(const Element&) const = default;
  constexpr auto operator<=>(const Element&) const = default;

 private:
  constexpr explicit Element(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

}  // namespace relalg
