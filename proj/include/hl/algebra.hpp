#pragma once

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <set>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hl/enumerate.hpp"
#include "hl/error.hpp"
#include "hl/frames.hpp"
#include "hl/report.hpp"
#include "hl/small_set.hpp"

namespace hl {

// Algebra given by names, an order and a total strict-implication table.
struct AlgebraTables {
  std::vector<std::string> elements;
  std::vector<std::vector<char>> leq;  // leq[a][b]
  std::vector<std::vector<int>> sto;   // sto[a][b]
};

// Name-based form matching the JSON layout.
struct RawAlgebra {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
  std::vector<std::tuple<std::string, std::string, std::string>> sto;
};

inline AlgebraTables toTables(const RawAlgebra& raw) {
  const int n = static_cast<int>(raw.elements.size());
  if (n == 0) throw Error(ErrorKind::InvalidInput, "algebra has no elements");
  if (n > ElementSet::kCapacity) throw Error(ErrorKind::BoundTooLarge, "algebra too large");
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i)
    if (!idx.emplace(raw.elements[i], i).second) throw Error(ErrorKind::InvalidInput, "duplicate element " + raw.elements[i]);
  auto at = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw Error(ErrorKind::InvalidInput, "unknown element " + s);
    return it->second;
  };
  AlgebraTables t;
  t.elements = raw.elements;
  t.leq.assign(n, std::vector<char>(n, 0));
  t.sto.assign(n, std::vector<int>(n, -1));
  for (const auto& [a, b] : raw.leq) t.leq[at(a)][at(b)] = 1;
  for (const auto& [a, b, c] : raw.sto) {
    int& cell = t.sto[at(a)][at(b)];
    const int v = at(c);
    if (cell >= 0 && cell != v) throw Error(ErrorKind::InvalidInput, "conflicting entries for " + a + " ~> " + b);
    cell = v;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.sto[a][b] < 0)
        throw Error(ErrorKind::InvalidInput, "strict implication table misses " + raw.elements[a] + " ~> " + raw.elements[b]);
  return t;
}

inline RawAlgebra toRaw(const AlgebraTables& t) {
  RawAlgebra r;
  r.elements = t.elements;
  const int n = static_cast<int>(t.elements.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (t.leq[a][b]) r.leq.emplace_back(t.elements[a], t.elements[b]);
      r.sto.emplace_back(t.elements[a], t.elements[b], t.elements[t.sto[a][b]]);
    }
  return r;
}

// Finite Heyting algebra with a strict implication satisfying C1-C4.
class HLAlgebra {
 public:
  // Empty when valid.
  static std::vector<Violation> violations(const AlgebraTables& t) {
    std::vector<Violation> out;
    derive(t, out);
    return out;
  }

  static HLAlgebra validate(AlgebraTables t) {
    std::vector<Violation> out;
    auto alg = derive(t, out);
    if (!out.empty()) throw Error::fromViolations(std::move(out));
    return *alg;
  }
  static HLAlgebra validate(const RawAlgebra& raw) { return validate(toTables(raw)); }

  int size() const { return static_cast<int>(t_.elements.size()); }
  const std::vector<std::string>& elements() const { return t_.elements; }
  const std::string& name(int a) const { return t_.elements[static_cast<std::size_t>(a)]; }
  std::optional<int> indexOf(const std::string& s) const {
    for (int i = 0; i < size(); ++i)
      if (name(i) == s) return i;
    return std::nullopt;
  }
  const AlgebraTables& tables() const { return t_; }

  bool leq(int a, int b) const { return t_.leq[a][b] != 0; }
  int meet(int a, int b) const { return meet_[a][b]; }
  int join(int a, int b) const { return join_[a][b]; }
  int himp(int a, int b) const { return himp_[a][b]; }
  int sto(int a, int b) const { return t_.sto[a][b]; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }

  ElementSet upOf(int a) const {
    ElementSet s;
    for (int b = 0; b < size(); ++b)
      if (leq(a, b)) s.insert(b);
    return s;
  }

  friend bool operator==(const HLAlgebra& a, const HLAlgebra& b) {
    return a.t_.elements == b.t_.elements && a.t_.leq == b.t_.leq && a.t_.sto == b.t_.sto;
  }

 private:
  using Table = std::vector<std::vector<int>>;

  static std::optional<HLAlgebra> derive(const AlgebraTables& t, std::vector<Violation>& out) {
    const int n = static_cast<int>(t.elements.size());
    const auto& e = t.elements;
    auto le = [&](int a, int b) { return t.leq[a][b] != 0; };

    for (int a = 0; a < n; ++a)
      if (!le(a, a)) out.push_back({ErrorKind::NotLattice, "reflexive", {e[a]}});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a < b && le(a, b) && le(b, a)) out.push_back({ErrorKind::NotLattice, "antisymmetric", {e[a], e[b]}});
        for (int c = 0; c < n; ++c)
          if (le(a, b) && le(b, c) && !le(a, c)) out.push_back({ErrorKind::NotLattice, "transitive", {e[a], e[b], e[c]}});
      }
    if (!out.empty()) return std::nullopt;

    // Greatest element of `cands` w.r.t. `above(x,y)` meaning x is at least y.
    auto best = [&](const std::vector<int>& cands, auto above) -> int {
      for (int m : cands)
        if (std::all_of(cands.begin(), cands.end(), [&](int c) { return above(m, c); })) return m;
      return -1;
    };
    Table meet(n, std::vector<int>(n)), join(n, std::vector<int>(n)), himp(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<int> lower, upper;
        for (int c = 0; c < n; ++c) {
          if (le(c, a) && le(c, b)) lower.push_back(c);
          if (le(a, c) && le(b, c)) upper.push_back(c);
        }
        meet[a][b] = best(lower, [&](int x, int y) { return le(y, x); });
        join[a][b] = best(upper, [&](int x, int y) { return le(x, y); });
        if (meet[a][b] < 0) out.push_back({ErrorKind::NotLattice, "meet", {e[a], e[b]}});
        if (join[a][b] < 0) out.push_back({ErrorKind::NotLattice, "join", {e[a], e[b]}});
      }
    if (!out.empty()) return std::nullopt;
    int top = -1, bottom = -1;
    for (int a = 0; a < n; ++a) {
      bool isTop = true, isBottom = true;
      for (int b = 0; b < n; ++b) {
        isTop = isTop && le(b, a);
        isBottom = isBottom && le(a, b);
      }
      if (isTop) top = a;
      if (isBottom) bottom = a;
    }

    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]])
            out.push_back({ErrorKind::NotDistributive, "", {e[a], e[b], e[c]}});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<int> cands;
        for (int c = 0; c < n; ++c)
          if (le(meet[a][c], b)) cands.push_back(c);
        himp[a][b] = best(cands, [&](int x, int y) { return le(y, x); });
        if (himp[a][b] < 0) out.push_back({ErrorKind::NoHeytingImp, "", {e[a], e[b]}});
      }

    for (const auto& row : t.sto)
      for (int v : row)
        if (v < 0 || v >= n) throw Error(ErrorKind::InvalidInput, "strict implication table is not total");
    const auto& s = t.sto;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (meet[s[a][b]][s[a][c]] != s[a][meet[b][c]])
            out.push_back({ErrorKind::CAxiomViolation, "C1", {e[a], e[b], e[c]}});
          if (meet[s[a][c]][s[b][c]] != s[join[a][b]][c])
            out.push_back({ErrorKind::CAxiomViolation, "C2", {e[a], e[b], e[c]}});
          if (!le(meet[s[a][b]][s[b][c]], s[a][c]))
            out.push_back({ErrorKind::CAxiomViolation, "C3", {e[a], e[b], e[c]}});
        }
    for (int a = 0; a < n; ++a)
      if (s[a][a] != top) out.push_back({ErrorKind::CAxiomViolation, "C4", {e[a]}});
    if (!out.empty()) return std::nullopt;

    HLAlgebra alg;
    alg.t_ = t;
    alg.meet_ = std::move(meet);
    alg.join_ = std::move(join);
    alg.himp_ = std::move(himp);
    alg.top_ = top;
    alg.bottom_ = bottom;
    return alg;
  }

  HLAlgebra() = default;

  AlgebraTables t_;
  Table meet_, join_, himp_;
  int top_ = -1;
  int bottom_ = -1;
};

inline HLAlgebra validateAlgebra(const RawAlgebra& raw) { return HLAlgebra::validate(raw); }

// Algebra whose elements are world sets of a frame.
struct SetAlgebra {
  HLAlgebra algebra;
  std::vector<WorldSet> carrier;  // element index -> set
};

// Admissible sets of a general frame with the frame's operations.
inline SetAlgebra algebraOf(const GeneralStoFrame& g) {
  const auto& f = g.frame();
  const auto& sets = g.admissible();
  const int n = static_cast<int>(sets.size());
  auto index = [&](WorldSet s) {
    return static_cast<int>(std::lower_bound(sets.begin(), sets.end(), s) - sets.begin());
  };
  AlgebraTables t;
  for (auto s : sets) t.elements.push_back(setToString(f.worlds(), s));
  t.leq.assign(n, std::vector<char>(n, 0));
  t.sto.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.leq[a][b] = sets[a].subsetOf(sets[b]);
      t.sto[a][b] = index(f.sqsubset().strict(sets[a], sets[b]));
    }
  return {HLAlgebra::validate(std::move(t)), sets};
}

inline SetAlgebra complexAlgebra(const StoFrame& f) { return algebraOf(GeneralStoFrame::full(f)); }

inline bool isPrimeFilter(const HLAlgebra& A, ElementSet F) {
  if (F.empty() || !F.contains(A.top()) || F.contains(A.bottom())) return false;
  for (int a : F) {
    if (!A.upOf(a).subsetOf(F)) return false;
    for (int b : F)
      if (!F.contains(A.meet(a, b))) return false;
  }
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b)
      if (F.contains(A.join(a, b)) && !F.contains(a) && !F.contains(b)) return false;
  return true;
}

// Every filter of a finite lattice is principal, so test each up(a).
inline std::vector<ElementSet> primeFilters(const HLAlgebra& A) {
  std::vector<ElementSet> out;
  for (int a = 0; a < A.size(); ++a) {
    ElementSet F = A.upOf(a);
    if (isPrimeFilter(A, F)) out.push_back(F);
  }
  return out;
}

struct DualFrame {
  GeneralStoFrame frame;
  std::vector<ElementSet> filters;        // world index -> prime filter
  std::vector<WorldSet> elementImage;     // element index -> worlds containing it
};

inline DualFrame dualFrame(const HLAlgebra& A) {
  auto pf = primeFilters(A);
  const int n = static_cast<int>(pf.size());
  if (n == 0) throw Error(ErrorKind::InvalidInput, "trivial algebra has no prime filters");
  std::vector<std::string> names;
  for (auto F : pf) {
    std::string s = "{";
    bool first = true;
    for (int a : F) {
      if (!first) s += ",";
      s += A.name(a);
      first = false;
    }
    names.push_back(s + "}");
  }
  Relation le(n), sq(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (pf[p].subsetOf(pf[q])) le.add(p, q);
      bool ok = true;
      for (int a = 0; a < A.size() && ok; ++a)
        for (int b = 0; b < A.size() && ok; ++b)
          if (pf[p].contains(A.sto(a, b)) && pf[q].contains(a) && !pf[q].contains(b)) ok = false;
      if (ok) sq.add(p, q);
    }
  std::vector<WorldSet> image;
  for (int a = 0; a < A.size(); ++a) {
    WorldSet s;
    for (int p = 0; p < n; ++p)
      if (pf[p].contains(a)) s.insert(p);
    image.push_back(s);
  }
  auto frame = StoFrame::validate(std::move(names), std::move(le), std::move(sq));
  auto general = GeneralStoFrame::validate(std::move(frame), image);
  return {std::move(general), std::move(pf), std::move(image)};
}

using IsoReport = CheckReport;

// Checks that a |-> {p | a in p} is an isomorphism onto the admissible
// sets of the dual frame.
inline IsoReport roundTripAlgebra(const HLAlgebra& A) {
  IsoReport r;
  const auto d = dualFrame(A);
  const auto& f = d.frame.frame();
  const auto& img = d.elementImage;
  const int n = A.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const std::string ab = "(" + A.name(a) + "," + A.name(b) + ")";
      if (A.leq(a, b) != img[a].subsetOf(img[b])) r.fail("order not preserved/reflected at " + ab);
      if (a < b && img[a] == img[b]) r.fail("not injective at " + ab);
      if ((img[a] & img[b]) != img[A.meet(a, b)]) r.fail("meet at " + ab);
      if ((img[a] | img[b]) != img[A.join(a, b)]) r.fail("join at " + ab);
      if (f.preceq().strict(img[a], img[b]) != img[A.himp(a, b)]) r.fail("implication at " + ab);
      if (f.sqsubset().strict(img[a], img[b]) != img[A.sto(a, b)]) r.fail("strict implication at " + ab);
    }
  if (img[A.top()] != f.all()) r.fail("top");
  if (!img[A.bottom()].empty()) r.fail("bottom");
  std::vector<WorldSet> sorted = img;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted != d.frame.admissible()) r.fail("image differs from the admissible family");
  return r;
}

// Checks that x |-> {a in P | x in a} is an isomorphism of general frames
// between G and the dual of its algebra of admissible sets.
inline IsoReport roundTripFrame(const GeneralStoFrame& g) {
  const auto ref = g.refinedness();
  const auto& f = g.frame();
  if (!ref.descriptive()) {
    const bool order = !ref.preceqRefined();
    const auto [x, y] = order ? *ref.preceqWitness : *ref.sqsubsetWitness;
    throw Error(ErrorKind::NotDescriptive, std::string("frame is not ") + (order ? "order" : "strict") + "-refined",
                {{ErrorKind::NotDescriptive, order ? "preceq" : "sqsubset", {f.name(x), f.name(y)}}});
  }
  IsoReport r;
  const auto alg = algebraOf(g);
  const auto d = dualFrame(alg.algebra);
  const auto& df = d.frame.frame();
  std::vector<int> h(static_cast<std::size_t>(f.size()), -1);
  for (int x = 0; x < f.size(); ++x) {
    ElementSet hat;
    for (std::size_t a = 0; a < alg.carrier.size(); ++a)
      if (alg.carrier[a].contains(x)) hat.insert(static_cast<int>(a));
    auto it = std::find(d.filters.begin(), d.filters.end(), hat);
    if (it == d.filters.end()) {
      r.fail("image of " + f.name(x) + " is not a prime filter");
      continue;
    }
    h[x] = static_cast<int>(it - d.filters.begin());
  }
  if (!r) return r;
  WorldSet hit;
  for (int x = 0; x < f.size(); ++x) {
    if (hit.contains(h[x])) r.fail("not injective at " + f.name(x));
    hit.insert(h[x]);
  }
  if (hit != df.all()) r.fail("not surjective");
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y) {
      const std::string xy = "(" + f.name(x) + "," + f.name(y) + ")";
      if (f.preceq().holds(x, y) != df.preceq().holds(h[x], h[y])) r.fail("order at " + xy);
      if (f.sqsubset().holds(x, y) != df.sqsubset().holds(h[x], h[y])) r.fail("strict relation at " + xy);
    }
  for (std::size_t a = 0; a < alg.carrier.size(); ++a) {
    WorldSet pre;
    for (int x = 0; x < f.size(); ++x)
      if (d.elementImage[a].contains(h[x])) pre.insert(x);
    if (pre != alg.carrier[a]) r.fail("admissible set " + setToString(f.worlds(), alg.carrier[a]) + " not matched");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small corpus

// Distributive lattices with 2..maxSize elements up to isomorphism, elements
// listed along a linear extension, bottom first and top last.
inline std::vector<AlgebraTables> distributiveLattices(int maxSize) {
  std::vector<AlgebraTables> out;
  for (int n = 2; n <= maxSize; ++n) {
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& ord : detail::cachedOrders(n, true)) {
      bool natural = true;
      for (int a = 0; a < n && natural; ++a) {
        natural = ord.holds(0, a) && ord.holds(a, n - 1);
        for (int b : ord.successors(a)) natural = natural && a <= b;
      }
      if (!natural) continue;
      AlgebraTables t;
      t.leq.assign(n, std::vector<char>(n, 0));
      t.sto.assign(n, std::vector<int>(n, n - 1));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.leq[a][b] = ord.holds(a, b);
      t.elements.push_back("0");
      if (n == 3) t.elements.push_back("m");
      else
        for (int i = 1; i < n - 1; ++i) t.elements.push_back(std::string(1, static_cast<char>('a' + i - 1)));
      t.elements.push_back("1");
      // sto is constantly top here, which satisfies C1-C4 on any lattice.
      if (!HLAlgebra::violations(t).empty()) continue;
      if (!seen.insert(detail::canonicalCode(ord, Relation(n))).second) continue;
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Every strict implication table on `lattice` satisfying C1-C4, found by
// filling cells row by row and pruning on fully assigned axiom instances.
inline std::vector<HLAlgebra> strictImplications(const AlgebraTables& lattice, std::uint64_t cap = defaultCandidateCap()) {
  AlgebraTables t = lattice;
  const HLAlgebra base = HLAlgebra::validate(t);  // constant-top table
  const int n = base.size();
  std::vector<std::vector<int>>& s = t.sto;
  for (auto& row : s) std::fill(row.begin(), row.end(), -1);
  std::vector<HLAlgebra> out;
  std::uint64_t nodes = 0;

  // Instances of C1-C3 that involve the new cell and are fully assigned.
  auto consistent = [&](int a0, int b0) {
    auto ready = [&](std::initializer_list<std::pair<int, int>> cells) {
      bool touches = false;
      for (auto [a, b] : cells) {
        if (s[a][b] < 0) return false;
        touches = touches || (a == a0 && b == b0);
      }
      return touches;
    };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          const int m = base.meet(y, z);
          if (ready({{x, y}, {x, z}, {x, m}}) && base.meet(s[x][y], s[x][z]) != s[x][m]) return false;
          const int j = base.join(x, y);
          if (ready({{x, z}, {y, z}, {j, z}}) && base.meet(s[x][z], s[y][z]) != s[j][z]) return false;
          if (ready({{x, y}, {y, z}, {x, z}}) && !base.leq(base.meet(s[x][y], s[y][z]), s[x][z])) return false;
        }
    return true;
  };

  std::function<void(int)> fill = [&](int cell) {
    if (++nodes > cap) throw Error(ErrorKind::BoundTooLarge, "table search exceeded the candidate cap");
    if (cell == n * n) {
      out.push_back(HLAlgebra::validate(t));
      return;
    }
    const int a = cell / n, b = cell % n;
    for (int v = 0; v < n; ++v) {
      if (a == b && v != base.top()) continue;
      s[a][b] = v;
      if (consistent(a, b)) fill(cell + 1);
    }
    s[a][b] = -1;
  };
  fill(0);
  return out;
}

// All HL-algebras with 2..maxSize elements over the lattices above.
inline std::vector<HLAlgebra> algebraCorpus(int maxSize = 4) {
  std::vector<HLAlgebra> out;
  for (const auto& lat : distributiveLattices(maxSize))
    for (auto& a : strictImplications(lat)) out.push_back(std::move(a));
  return out;
}

}  // namespace hl
