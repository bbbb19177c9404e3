#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hl/small_set.hpp"

namespace hl {

// Binary relation on {0..n-1} stored as successor sets.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n) : succ_(static_cast<std::size_t>(n)) {}

  static Relation identity(int n) {
    Relation r(n);
    for (int x = 0; x < n; ++x) r.add(x, x);
    return r;
  }
  static Relation total(int n) {
    Relation r(n);
    for (int x = 0; x < n; ++x) r.succ_[x] = WorldSet::full(n);
    return r;
  }
  static Relation fromPairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    Relation r(n);
    for (auto [x, y] : pairs) r.add(x, y);
    return r;
  }
  static Relation fromSuccessors(std::vector<WorldSet> succ) {
    Relation r;
    r.succ_ = std::move(succ);
    return r;
  }

  int size() const { return static_cast<int>(succ_.size()); }
  bool holds(int x, int y) const { return succ_[x].contains(y); }
  void add(int x, int y) { succ_[x].insert(y); }
  void remove(int x, int y) { succ_[x].erase(y); }
  WorldSet successors(int x) const { return succ_[x]; }
  void setSuccessors(int x, WorldSet s) { succ_[x] = s; }
  WorldSet predecessors(int y) const {
    WorldSet p;
    for (int x = 0; x < size(); ++x)
      if (holds(x, y)) p.insert(x);
    return p;
  }
  // Successors of any member of `s`.
  WorldSet image(WorldSet s) const {
    WorldSet out;
    for (int x : s) out |= succ_[x];
    return out;
  }
  int pairCount() const {
    int c = 0;
    for (auto s : succ_) c += s.size();
    return c;
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < size(); ++x)
      for (int y : succ_[x]) out.emplace_back(x, y);
    return out;
  }

  // Diagrammatic composition: x (this;next) z iff x this y next z.
  Relation then(const Relation& next) const {
    Relation r(size());
    for (int x = 0; x < size(); ++x) r.succ_[x] = next.image(succ_[x]);
    return r;
  }
  Relation converse() const {
    Relation r(size());
    for (int x = 0; x < size(); ++x)
      for (int y : succ_[x]) r.add(y, x);
    return r;
  }
  Relation unite(const Relation& o) const {
    Relation r(size());
    for (int x = 0; x < size(); ++x) r.succ_[x] = succ_[x] | o.succ_[x];
    return r;
  }
  Relation reflexiveClosure() const { return unite(identity(size())); }
  Relation transitiveClosure() const {
    Relation r = *this;
    for (int k = 0; k < size(); ++k)
      for (int x = 0; x < size(); ++x)
        if (r.holds(x, k)) r.succ_[x] |= r.succ_[k];
    return r;
  }

  bool subsetOf(const Relation& o) const {
    for (int x = 0; x < size(); ++x)
      if (!succ_[x].subsetOf(o.succ_[x])) return false;
    return true;
  }

  // Witnesses are returned for the first failure in (x,y,z) order.
  std::optional<int> reflexivityFailure() const {
    for (int x = 0; x < size(); ++x)
      if (!holds(x, x)) return x;
    return std::nullopt;
  }
  std::optional<std::pair<int, int>> antisymmetryFailure() const {
    for (int x = 0; x < size(); ++x)
      for (int y : succ_[x])
        if (x < y && holds(y, x)) return std::pair{x, y};
    return std::nullopt;
  }
  struct Triple {
    int x, y, z;
  };
  std::optional<Triple> transitivityFailure() const {
    for (int x = 0; x < size(); ++x)
      for (int y : succ_[x]) {
        WorldSet missing = succ_[y].minus(succ_[x]);
        if (!missing.empty()) return Triple{x, y, missing.first()};
      }
    return std::nullopt;
  }
  bool isReflexive() const { return !reflexivityFailure(); }
  bool isAntisymmetric() const { return !antisymmetryFailure(); }
  bool isTransitive() const { return !transitivityFailure(); }

  // {x | every successor of x lies in a}
  WorldSet box(WorldSet a) const {
    WorldSet out;
    for (int x = 0; x < size(); ++x)
      if (succ_[x].subsetOf(a)) out.insert(x);
    return out;
  }
  // {x | every successor of x in a lies in b}
  WorldSet strict(WorldSet a, WorldSet b) const {
    WorldSet out;
    for (int x = 0; x < size(); ++x)
      if ((succ_[x] & a).subsetOf(b)) out.insert(x);
    return out;
  }
  // Closed under successors.
  bool isUpClosed(WorldSet a) const { return image(a).subsetOf(a); }

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation& a, const Relation& b) { return a.succ_ <=> b.succ_; }

 private:
  std::vector<WorldSet> succ_;
};

// All successor-closed subsets, in ascending bitmask order.
inline std::vector<WorldSet> upClosedSets(const Relation& r) {
  std::vector<WorldSet> out;
  const int n = r.size();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    WorldSet s(b);
    if (r.isUpClosed(s)) out.push_back(s);
  }
  return out;
}

inline std::vector<WorldSet> allSubsets(int n) {
  std::vector<WorldSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.emplace_back(b);
  return out;
}

}  // namespace hl
