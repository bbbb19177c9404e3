#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "hl/error.hpp"
#include "hl/frames.hpp"

namespace hl {

inline constexpr std::uint64_t kDefaultCandidateCap = 10'000'000;

// Honours HL_MAX_CANDIDATES.
inline std::uint64_t defaultCandidateCap() {
  if (const char* env = std::getenv("HL_MAX_CANDIDATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultCandidateCap;
}

struct EnumerationOptions {
  bool dedup = false;                 // keep one frame per isomorphism class
  bool partialOrderOnly = false;      // S4K: R_i antisymmetric
  std::uint64_t maxCandidates = defaultCandidateCap();
};

namespace detail {

inline constexpr int kMaxOrderEnumeration = 5;

// Reflexive transitive relations on n points (optionally antisymmetric),
// ordered by their off-diagonal bit pattern.
inline std::vector<Relation> orders(int n, bool antisymmetric) {
  std::vector<std::pair<int, int>> cells;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) cells.emplace_back(x, y);
  std::vector<Relation> out;
  const std::uint64_t limit = std::uint64_t{1} << cells.size();
  for (std::uint64_t m = 0; m < limit; ++m) {
    Relation r = Relation::identity(n);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if ((m >> i) & 1U) r.add(cells[i].first, cells[i].second);
    if (!r.isTransitive()) continue;
    if (antisymmetric && !r.isAntisymmetric()) continue;
    out.push_back(std::move(r));
  }
  return out;
}

inline const std::vector<Relation>& cachedOrders(int n, bool antisymmetric) {
  static const auto table = [] {
    std::vector<std::vector<Relation>> t(2 * (kMaxOrderEnumeration + 1));
    for (int k = 1; k <= 4; ++k) {
      t[2 * k] = orders(k, false);
      t[2 * k + 1] = orders(k, true);
    }
    return t;
  }();
  if (n <= 4) return table[2 * n + (antisymmetric ? 1 : 0)];
  static const auto five = orders(5, false);
  static const auto fiveAnti = orders(5, true);
  return antisymmetric ? fiveAnti : five;
}

// Sets closed under predecessors (downsets) of an order.
inline std::vector<WorldSet> downsets(const Relation& order) { return upClosedSets(order.converse()); }

inline std::uint64_t saturatingPow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

inline std::uint64_t saturatingAdd(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

// Canonical code: lexicographically least (rel1, rel2) adjacency string over
// all permutations of the worlds.
inline std::vector<std::uint64_t> canonicalCode(const Relation& a, const Relation& b) {
  const int n = a.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> best;
  do {
    std::vector<std::uint64_t> code;
    code.reserve(2 * static_cast<std::size_t>(n));
    for (const Relation* r : {&a, &b})
      for (int x = 0; x < n; ++x) {
        std::uint64_t row = 0;
        for (int y = 0; y < n; ++y)
          if (r->holds(perm[x], perm[y])) row |= std::uint64_t{1} << y;
        code.push_back(row);
      }
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool hasCondition(const std::vector<FrameCondition>& fs, FrameCondition::Kind k) {
  return std::any_of(fs.begin(), fs.end(), [k](const FrameCondition& c) { return c.kind == k; });
}

}  // namespace detail

// Number of candidate (rel1, rel2) pairs the enumerator will generate.
// Sto frames, and S4K frames filtered by Bhl, only generate relations whose
// predecessor sets are downsets, giving sum over orders of |downsets|^n.
inline std::uint64_t estimateCandidates(int n, FrameKind kind, const std::vector<FrameCondition>& filters,
                                        const EnumerationOptions& opt = {}) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "frame size must be at least 1");
  if (n > detail::kMaxOrderEnumeration) return detail::saturatingPow(2, n * (n - 1));
  const bool anti = kind == FrameKind::Sto || opt.partialOrderOnly;
  const bool downsetOnly = kind == FrameKind::Sto || detail::hasCondition(filters, FrameCondition::Kind::Bhl);
  std::uint64_t total = 0;
  for (const auto& ord : detail::cachedOrders(n, anti)) {
    const std::uint64_t per = downsetOnly ? detail::saturatingPow(detail::downsets(ord).size(), n)
                                          : detail::saturatingPow(2, n * n);
    total = detail::saturatingAdd(total, per);
  }
  return total;
}

inline void checkCandidateBound(int n, FrameKind kind, const std::vector<FrameCondition>& filters,
                                const EnumerationOptions& opt) {
  for (const auto& c : filters)
    if (auto k = c.appliesTo(); k && *k != kind)
      throw Error(ErrorKind::KindMismatch, c.label + " does not apply to this frame kind");
  const std::uint64_t est = estimateCandidates(n, kind, filters, opt);
  if (est > opt.maxCandidates)
    throw Error(ErrorKind::BoundTooLarge, "size " + std::to_string(n) + " needs " + std::to_string(est) +
                                              " candidates, cap is " + std::to_string(opt.maxCandidates));
}

namespace detail {

// Calls fn(rel2) for every relation whose predecessor sets come from `cols`
// (one choice per world) or, if cols is empty, every relation at all, from
// the full relation down.
template <class Fn>
bool forEachSecondRelation(int n, const std::vector<WorldSet>& cols, Fn&& fn) {
  if (cols.empty()) {
    const std::uint64_t limit = std::uint64_t{1} << (n * n);
    for (std::uint64_t m = limit; m-- > 0;) {
      Relation r(n);
      for (int x = 0; x < n; ++x) r.setSuccessors(x, WorldSet((m >> (x * n)) & ((std::uint64_t{1} << n) - 1)));
      if (!fn(r)) return false;
    }
    return true;
  }
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  for (;;) {
    Relation r(n);
    for (int z = 0; z < n; ++z)
      for (int x : cols[digit[z]]) r.add(x, z);
    if (!fn(r)) return false;
    int i = 0;
    while (i < n && ++digit[i] == cols.size()) digit[i++] = 0;
    if (i == n) return true;
  }
}

}  // namespace detail

// Labeled sto frames on w0..w{n-1} passing every filter. fn returns false to stop.
template <class Fn>
void forEachStoFrame(int n, const std::vector<FrameCondition>& filters, Fn&& fn, const EnumerationOptions& opt = {}) {
  checkCandidateBound(n, FrameKind::Sto, filters, opt);
  const auto names = defaultWorldNames(n);
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& order : detail::cachedOrders(n, true)) {
    auto cols = detail::downsets(order);
    std::reverse(cols.begin(), cols.end());  // richest sqsubset first
    const bool go = detail::forEachSecondRelation(n, cols, [&](const Relation& sq) {
      AnyFrame f = StoFrame::trusted(names, order, sq);
      for (const auto& c : filters)
        if (!checkCondition(f, c)) return true;
      if (opt.dedup && !seen.insert(detail::canonicalCode(order, sq)).second) return true;
      return static_cast<bool>(fn(std::get<StoFrame>(f)));
    });
    if (!go) return;
  }
}

template <class Fn>
void forEachS4KFrame(int n, const std::vector<FrameCondition>& filters, Fn&& fn, const EnumerationOptions& opt = {}) {
  checkCandidateBound(n, FrameKind::S4K, filters, opt);
  const auto names = defaultWorldNames(n);
  const bool downsetOnly = detail::hasCondition(filters, FrameCondition::Kind::Bhl);
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& ri : detail::cachedOrders(n, opt.partialOrderOnly)) {
    auto cols = downsetOnly ? detail::downsets(ri) : std::vector<WorldSet>{};
    std::reverse(cols.begin(), cols.end());
    const bool go = detail::forEachSecondRelation(n, cols, [&](const Relation& rm) {
      AnyFrame f = S4KFrame::trusted(names, ri, rm);
      for (const auto& c : filters)
        if (!checkCondition(f, c)) return true;
      if (opt.dedup && !seen.insert(detail::canonicalCode(ri, rm)).second) return true;
      return static_cast<bool>(fn(std::get<S4KFrame>(f)));
    });
    if (!go) return;
  }
}

inline std::vector<AnyFrame> enumerateFrames(int n, FrameKind kind, const std::vector<FrameCondition>& filters = {},
                                             const EnumerationOptions& opt = {}) {
  std::vector<AnyFrame> out;
  if (kind == FrameKind::Sto)
    forEachStoFrame(n, filters, [&](const StoFrame& f) { out.emplace_back(f); return true; }, opt);
  else
    forEachS4KFrame(n, filters, [&](const S4KFrame& f) { out.emplace_back(f); return true; }, opt);
  return out;
}

inline std::vector<StoFrame> stoFrames(int n, const std::vector<FrameCondition>& filters = {},
                                       const EnumerationOptions& opt = {}) {
  std::vector<StoFrame> out;
  forEachStoFrame(n, filters, [&](const StoFrame& f) { out.push_back(f); return true; }, opt);
  return out;
}

inline std::vector<S4KFrame> s4kFrames(int n, const std::vector<FrameCondition>& filters = {},
                                       const EnumerationOptions& opt = {}) {
  std::vector<S4KFrame> out;
  forEachS4KFrame(n, filters, [&](const S4KFrame& f) { out.push_back(f); return true; }, opt);
  return out;
}

}  // namespace hl
