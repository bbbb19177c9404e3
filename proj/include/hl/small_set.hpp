#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <iterator>
#include <vector>

namespace hl {

// Subset of {0..63} packed in a machine word. The tag keeps world sets and
// algebra-element sets from being mixed up.
template <class Tag>
class SmallSet {
 public:
  static constexpr int kCapacity = 64;

  constexpr SmallSet() = default;
  constexpr explicit SmallSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr SmallSet full(int n) {
    return SmallSet(n >= kCapacity ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr SmallSet singleton(int i) { return SmallSet(std::uint64_t{1} << i); }
  template <class Range>
  static SmallSet of(const Range& members) {
    SmallSet s;
    for (int i : members) s.insert(i);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr void insert(int i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }
  constexpr bool subsetOf(SmallSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(SmallSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr SmallSet minus(SmallSet o) const { return SmallSet(bits_ & ~o.bits_); }
  constexpr SmallSet complementIn(int n) const { return full(n).minus(*this); }

  constexpr SmallSet operator&(SmallSet o) const { return SmallSet(bits_ & o.bits_); }
  constexpr SmallSet operator|(SmallSet o) const { return SmallSet(bits_ | o.bits_); }
  constexpr SmallSet& operator&=(SmallSet o) { bits_ &= o.bits_; return *this; }
  constexpr SmallSet& operator|=(SmallSet o) { bits_ |= o.bits_; return *this; }

  friend constexpr bool operator==(SmallSet, SmallSet) = default;
  friend constexpr auto operator<=>(SmallSet a, SmallSet b) { return a.bits_ <=> b.bits_; }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
    friend constexpr bool operator==(iterator, iterator) = default;
   private:
    std::uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> members() const { return {begin(), end()}; }

 private:
  std::uint64_t bits_ = 0;
};

struct WorldTag;
struct ElementTag;
using WorldSet = SmallSet<WorldTag>;
using ElementSet = SmallSet<ElementTag>;

}  // namespace hl
