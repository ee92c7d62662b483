#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "slowsync/automaton.hpp"

namespace slowsync {

// Subset of states as a bit mask; bit q set iff state q (0-based) is in the set.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr StateSet full(int n) { return StateSet((std::uint32_t{1} << n) - 1); }
  static constexpr StateSet singleton(int q) { return StateSet(std::uint32_t{1} << q); }
  // 0-based states.
  static StateSet of(std::initializer_list<int> states) {
    StateSet s;
    for (int q : states) s.insert(q);
    return s;
  }
  // {lo..hi}, 0-based inclusive; empty when lo > hi.
  static constexpr StateSet interval(int lo, int hi) {
    StateSet s;
    for (int q = lo; q <= hi; ++q) s.insert(q);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_singleton() const { return std::has_single_bit(bits_); }
  constexpr bool contains(int q) const { return (bits_ >> q) & 1U; }
  constexpr int lowest() const { return std::countr_zero(bits_); }
  constexpr bool subset_of(StateSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr void insert(int q) { bits_ |= std::uint32_t{1} << q; }
  constexpr void erase(int q) { bits_ &= ~(std::uint32_t{1} << q); }

  constexpr StateSet without(int q) const {
    StateSet s = *this;
    s.erase(q);
    return s;
  }
  constexpr StateSet operator|(StateSet o) const { return StateSet(bits_ | o.bits_); }
  constexpr StateSet operator&(StateSet o) const { return StateSet(bits_ & o.bits_); }

  // 1-based, e.g. "{2,3,4}".
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int q = 0; q < 32; ++q) {
      if (!contains(q)) continue;
      if (!first) out += ',';
      out += std::to_string(q + 1);
      first = false;
    }
    return out + "}";
  }

  friend constexpr bool operator==(StateSet, StateSet) = default;
  friend constexpr auto operator<=>(StateSet, StateSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

inline StateSet image(const Transformation& t, StateSet s) {
  std::uint32_t out = 0;
  for (std::uint32_t b = s.bits(); b; b &= b - 1) out |= std::uint32_t{1} << t(std::countr_zero(b));
  return StateSet(out);
}

}  // namespace slowsync
