#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hl/error.hpp"
#include "hl/relation.hpp"
#include "hl/small_set.hpp"

namespace hl {

enum class FrameKind { Sto, S4K };

inline std::string setToString(const std::vector<std::string>& names, WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (int x : s) {
    if (!first) out += ",";
    out += names[static_cast<std::size_t>(x)];
    first = false;
  }
  return out + "}";
}

inline std::vector<std::string> defaultWorldNames(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

// Unvalidated relational data, indices into `worlds`.
struct RawFrame {
  FrameKind kind = FrameKind::Sto;
  std::vector<std::string> worlds;
  std::vector<std::pair<int, int>> rel1;
  std::vector<std::pair<int, int>> rel2;
  std::optional<std::vector<WorldSet>> admissible;
};

namespace detail {

inline void checkWorlds(const std::vector<std::string>& worlds, const Relation& a, const Relation& b) {
  if (worlds.empty()) throw Error(ErrorKind::InvalidInput, "frame has no worlds");
  if (worlds.size() > 20) throw Error(ErrorKind::BoundTooLarge, "frames are limited to 20 worlds");
  if (a.size() != static_cast<int>(worlds.size()) || b.size() != a.size())
    throw Error(ErrorKind::InvalidInput, "relation size does not match world count");
  std::set<std::string> seen(worlds.begin(), worlds.end());
  if (seen.size() != worlds.size()) throw Error(ErrorKind::InvalidInput, "duplicate world name");
}

inline Relation relationFromPairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  for (auto [x, y] : pairs)
    if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorKind::InvalidInput, "pair references unknown world");
  return Relation::fromPairs(n, pairs);
}

inline void orderViolations(const std::vector<std::string>& w, const Relation& r, ErrorKind kind, bool antisym,
                            std::vector<Violation>& out) {
  for (int x = 0; x < r.size(); ++x)
    if (!r.holds(x, x)) out.push_back({kind, "reflexive", {w[x]}});
  for (int x = 0; x < r.size(); ++x)
    for (int y : r.successors(x))
      for (int z : r.successors(y).minus(r.successors(x))) out.push_back({kind, "transitive", {w[x], w[y], w[z]}});
  if (antisym)
    for (int x = 0; x < r.size(); ++x)
      for (int y : r.successors(x))
        if (x < y && r.holds(y, x)) out.push_back({kind, "antisymmetric", {w[x], w[y]}});
}

}  // namespace detail

// Poset (X, preceq) with a coherent strict relation sqsubset.
class StoFrame {
 public:
  static std::vector<Violation> violations(const std::vector<std::string>& worlds, const Relation& preceq,
                                           const Relation& sqsubset) {
    std::vector<Violation> out;
    detail::orderViolations(worlds, preceq, ErrorKind::NotPoset, true, out);
    for (int x = 0; x < preceq.size(); ++x)
      for (int y : preceq.successors(x))
        for (int z : sqsubset.successors(y).minus(sqsubset.successors(x)))
          out.push_back({ErrorKind::CoherenceViolation, "", {worlds[x], worlds[y], worlds[z]}});
    return out;
  }

  static StoFrame validate(std::vector<std::string> worlds, Relation preceq, Relation sqsubset) {
    detail::checkWorlds(worlds, preceq, sqsubset);
    auto vs = violations(worlds, preceq, sqsubset);
    if (!vs.empty()) throw Error::fromViolations(std::move(vs));
    return StoFrame(std::move(worlds), std::move(preceq), std::move(sqsubset));
  }

  // Caller guarantees validity (used by the enumerator).
  static StoFrame trusted(std::vector<std::string> worlds, Relation preceq, Relation sqsubset) {
    return StoFrame(std::move(worlds), std::move(preceq), std::move(sqsubset));
  }

  int size() const { return static_cast<int>(worlds_.size()); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::string& name(int x) const { return worlds_[static_cast<std::size_t>(x)]; }
  const Relation& preceq() const { return preceq_; }
  const Relation& sqsubset() const { return sqsubset_; }
  WorldSet all() const { return WorldSet::full(size()); }
  std::vector<WorldSet> upsets() const { return upClosedSets(preceq_); }
  bool isUpset(WorldSet a) const { return preceq_.isUpClosed(a); }

  friend bool operator==(const StoFrame&, const StoFrame&) = default;

 private:
  StoFrame(std::vector<std::string> w, Relation p, Relation s)
      : worlds_(std::move(w)), preceq_(std::move(p)), sqsubset_(std::move(s)) {}

  std::vector<std::string> worlds_;
  Relation preceq_;
  Relation sqsubset_;
};

inline StoFrame validateSto(const RawFrame& raw) {
  const int n = static_cast<int>(raw.worlds.size());
  return StoFrame::validate(raw.worlds, detail::relationFromPairs(n, raw.rel1), detail::relationFromPairs(n, raw.rel2));
}

// Least coherent sqsubset containing the input; preceq must already be a poset.
inline StoFrame stoClosure(const RawFrame& raw) {
  const int n = static_cast<int>(raw.worlds.size());
  Relation preceq = detail::relationFromPairs(n, raw.rel1);
  Relation sq = detail::relationFromPairs(n, raw.rel2);
  detail::checkWorlds(raw.worlds, preceq, sq);
  std::vector<Violation> vs;
  detail::orderViolations(raw.worlds, preceq, ErrorKind::NotPoset, true, vs);
  if (!vs.empty()) throw Error::fromViolations(std::move(vs));
  for (;;) {
    Relation next = sq.unite(preceq.then(sq));
    if (next == sq) break;
    sq = std::move(next);
  }
  return StoFrame::validate(raw.worlds, std::move(preceq), std::move(sq));
}

// Refinedness of a general frame (descriptiveness in the finite case).
struct Refinedness {
  std::optional<std::pair<int, int>> preceqWitness;   // x not below y yet no admissible set separates them
  std::optional<std::pair<int, int>> sqsubsetWitness; // not x sqsubset y yet no admissible pair separates them
  bool preceqRefined() const { return !preceqWitness; }
  bool sqsubsetRefined() const { return !sqsubsetWitness; }
  bool descriptive() const { return preceqRefined() && sqsubsetRefined(); }
};

class GeneralStoFrame {
 public:
  static std::vector<Violation> violations(const StoFrame& f, const std::vector<WorldSet>& p) {
    std::vector<Violation> out;
    const auto& w = f.worlds();
    std::set<WorldSet> in(p.begin(), p.end());
    auto law = [&](const char* name, std::vector<std::string> wit) {
      out.push_back({ErrorKind::AdmissibleNotClosed, name, std::move(wit)});
    };
    for (auto a : p) {
      if (!a.subsetOf(f.all())) throw Error(ErrorKind::InvalidInput, "admissible set references unknown world");
      if (!f.isUpset(a)) out.push_back({ErrorKind::NotUpset, "", {setToString(w, a)}});
    }
    if (!in.count(WorldSet{})) law("contains-empty", {});
    if (!in.count(f.all())) law("contains-all", {});
    for (auto a : in)
      for (auto b : in) {
        auto check = [&](const char* name, WorldSet c) {
          if (!in.count(c)) law(name, {setToString(w, a), setToString(w, b)});
        };
        check("meet", a & b);
        check("join", a | b);
        check("imp", f.preceq().strict(a, b));
        check("sto", f.sqsubset().strict(a, b));
      }
    return out;
  }

  static GeneralStoFrame validate(StoFrame f, std::vector<WorldSet> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    auto vs = violations(f, p);
    if (!vs.empty()) throw Error::fromViolations(std::move(vs));
    return GeneralStoFrame(std::move(f), std::move(p));
  }
  static GeneralStoFrame full(StoFrame f) {
    auto p = f.upsets();
    return GeneralStoFrame(std::move(f), std::move(p));
  }

  const StoFrame& frame() const { return frame_; }
  const std::vector<WorldSet>& admissible() const { return admissible_; }
  int size() const { return frame_.size(); }

  Refinedness refinedness() const {
    Refinedness r;
    const int n = size();
    for (int x = 0; x < n && !r.preceqWitness; ++x)
      for (int y = 0; y < n && !r.preceqWitness; ++y) {
        if (frame_.preceq().holds(x, y)) continue;
        bool sep = std::any_of(admissible_.begin(), admissible_.end(),
                               [&](WorldSet a) { return a.contains(x) && !a.contains(y); });
        if (!sep) r.preceqWitness = std::pair{x, y};
      }
    for (int x = 0; x < n && !r.sqsubsetWitness; ++x)
      for (int y = 0; y < n && !r.sqsubsetWitness; ++y) {
        if (frame_.sqsubset().holds(x, y)) continue;
        bool sep = false;
        for (auto a : admissible_) {
          if (!a.contains(y)) continue;
          for (auto b : admissible_)
            if (!b.contains(y) && frame_.sqsubset().strict(a, b).contains(x)) { sep = true; break; }
          if (sep) break;
        }
        if (!sep) r.sqsubsetWitness = std::pair{x, y};
      }
    return r;
  }
  bool descriptive() const { return refinedness().descriptive(); }

  friend bool operator==(const GeneralStoFrame&, const GeneralStoFrame&) = default;

 private:
  GeneralStoFrame(StoFrame f, std::vector<WorldSet> p) : frame_(std::move(f)), admissible_(std::move(p)) {}
  StoFrame frame_;
  std::vector<WorldSet> admissible_;
};

// Preorder R_i with an arbitrary relation R_m.
class S4KFrame {
 public:
  static std::vector<Violation> violations(const std::vector<std::string>& worlds, const Relation& ri) {
    std::vector<Violation> out;
    detail::orderViolations(worlds, ri, ErrorKind::NotPreorder, false, out);
    return out;
  }
  static S4KFrame validate(std::vector<std::string> worlds, Relation ri, Relation rm) {
    detail::checkWorlds(worlds, ri, rm);
    auto vs = violations(worlds, ri);
    if (!vs.empty()) throw Error::fromViolations(std::move(vs));
    return S4KFrame(std::move(worlds), std::move(ri), std::move(rm));
  }
  static S4KFrame trusted(std::vector<std::string> worlds, Relation ri, Relation rm) {
    return S4KFrame(std::move(worlds), std::move(ri), std::move(rm));
  }

  int size() const { return static_cast<int>(worlds_.size()); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::string& name(int x) const { return worlds_[static_cast<std::size_t>(x)]; }
  const Relation& ri() const { return ri_; }
  const Relation& rm() const { return rm_; }
  WorldSet all() const { return WorldSet::full(size()); }

  bool bhl() const { return ri_.then(rm_).subsetOf(rm_); }
  bool partialOrder() const { return ri_.isAntisymmetric(); }
  bool transitiveM() const { return rm_.isTransitive(); }

  friend bool operator==(const S4KFrame&, const S4KFrame&) = default;

 private:
  S4KFrame(std::vector<std::string> w, Relation ri, Relation rm)
      : worlds_(std::move(w)), ri_(std::move(ri)), rm_(std::move(rm)) {}
  std::vector<std::string> worlds_;
  Relation ri_;
  Relation rm_;
};

inline S4KFrame validateS4K(const RawFrame& raw) {
  const int n = static_cast<int>(raw.worlds.size());
  return S4KFrame::validate(raw.worlds, detail::relationFromPairs(n, raw.rel1), detail::relationFromPairs(n, raw.rel2));
}

// Boolean subalgebra of the powerset closed under [i] and [m].
class GeneralS4KFrame {
 public:
  static std::vector<Violation> violations(const S4KFrame& f, const std::vector<WorldSet>& p) {
    std::vector<Violation> out;
    const auto& w = f.worlds();
    std::set<WorldSet> in(p.begin(), p.end());
    auto law = [&](const char* name, std::vector<std::string> wit) {
      out.push_back({ErrorKind::AdmissibleNotClosed, name, std::move(wit)});
    };
    for (auto a : p)
      if (!a.subsetOf(f.all())) throw Error(ErrorKind::InvalidInput, "admissible set references unknown world");
    if (!in.count(WorldSet{})) law("contains-empty", {});
    for (auto a : in) {
      if (!in.count(a.complementIn(f.size()))) law("complement", {setToString(w, a)});
      if (!in.count(f.ri().box(a))) law("box-i", {setToString(w, a)});
      if (!in.count(f.rm().box(a))) law("box-m", {setToString(w, a)});
      for (auto b : in)
        if (!in.count(a & b)) law("meet", {setToString(w, a), setToString(w, b)});
    }
    return out;
  }
  static GeneralS4KFrame validate(S4KFrame f, std::vector<WorldSet> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    auto vs = violations(f, p);
    if (!vs.empty()) throw Error::fromViolations(std::move(vs));
    return GeneralS4KFrame(std::move(f), std::move(p));
  }
  static GeneralS4KFrame full(S4KFrame f) {
    auto p = allSubsets(f.size());
    return GeneralS4KFrame(std::move(f), std::move(p));
  }

  const S4KFrame& frame() const { return frame_; }
  const std::vector<WorldSet>& admissible() const { return admissible_; }
  int size() const { return frame_.size(); }

  friend bool operator==(const GeneralS4KFrame&, const GeneralS4KFrame&) = default;

 private:
  GeneralS4KFrame(S4KFrame f, std::vector<WorldSet> p) : frame_(std::move(f)), admissible_(std::move(p)) {}
  S4KFrame frame_;
  std::vector<WorldSet> admissible_;
};

using AnyFrame = std::variant<StoFrame, S4KFrame>;

inline FrameKind kindOf(const AnyFrame& f) { return std::holds_alternative<StoFrame>(f) ? FrameKind::Sto : FrameKind::S4K; }

// Ri := preceq, Rm := sqsubset.
inline S4KFrame asS4K(const StoFrame& f) { return S4KFrame::trusted(f.worlds(), f.preceq(), f.sqsubset()); }

// ---------------------------------------------------------------------------
// Frame conditions

struct FrameCondition {
  enum class Kind { SubPrec, IrSucc, PTrans, Bhl, SemiTrans, Strength, Custom };
  Kind kind = Kind::SubPrec;
  std::string label;
  std::function<bool(const AnyFrame&)> predicate;  // Custom only

  static FrameCondition of(Kind k) { return {k, std::string(name(k)), {}}; }
  static FrameCondition custom(std::string label, std::function<bool(const AnyFrame&)> pred) {
    return {Kind::Custom, std::move(label), std::move(pred)};
  }
  static std::string_view name(Kind k) {
    switch (k) {
      case Kind::SubPrec: return "SubPrec";
      case Kind::IrSucc: return "IrSucc";
      case Kind::PTrans: return "PTrans";
      case Kind::Bhl: return "Bhl";
      case Kind::SemiTrans: return "SemiTrans";
      case Kind::Strength: return "Strength";
      case Kind::Custom: return "Custom";
    }
    return "";
  }
  static std::optional<FrameCondition> parse(std::string_view s) {
    for (auto k : {Kind::SubPrec, Kind::IrSucc, Kind::PTrans, Kind::Bhl, Kind::SemiTrans, Kind::Strength})
      if (name(k) == s) return of(k);
    return std::nullopt;
  }
  // Frame kind the condition is stated for; nullopt when it applies to both.
  std::optional<FrameKind> appliesTo() const {
    switch (kind) {
      case Kind::SubPrec: case Kind::IrSucc: case Kind::PTrans: return FrameKind::Sto;
      case Kind::Bhl: case Kind::SemiTrans: return FrameKind::S4K;
      default: return std::nullopt;
    }
  }
};

struct ConditionResult {
  bool holds = true;
  std::vector<int> witness;
  explicit operator bool() const { return holds; }
};

namespace detail {

inline ConditionResult inclusion(const Relation& a, const Relation& b) {
  for (int x = 0; x < a.size(); ++x) {
    WorldSet extra = a.successors(x).minus(b.successors(x));
    if (!extra.empty()) return {false, {x, extra.first()}};
  }
  return {};
}

// a;b included in c, witness (x,y,z) with x a y b z and not x c z.
inline ConditionResult compositionInclusion(const Relation& a, const Relation& b, const Relation& c) {
  for (int x = 0; x < a.size(); ++x)
    for (int y : a.successors(x)) {
      WorldSet extra = b.successors(y).minus(c.successors(x));
      if (!extra.empty()) return {false, {x, y, extra.first()}};
    }
  return {};
}

}  // namespace detail

inline ConditionResult checkCondition(const AnyFrame& frame, const FrameCondition& c) {
  using K = FrameCondition::Kind;
  if (c.kind == K::Custom) return {c.predicate(frame), {}};
  if (auto k = c.appliesTo(); k && *k != kindOf(frame))
    throw Error(ErrorKind::KindMismatch, c.label + " does not apply to this frame kind");
  if (const auto* s = std::get_if<StoFrame>(&frame)) {
    const Relation& le = s->preceq();
    const Relation& sq = s->sqsubset();
    switch (c.kind) {
      case K::SubPrec: case K::Strength: return detail::inclusion(sq, le);
      case K::IrSucc:
        for (int x = 0; x < s->size(); ++x)
          if (!le.successors(x).intersects(sq.successors(x))) return {false, {x}};
        return {};
      case K::PTrans: return detail::compositionInclusion(sq, sq, sq);
      default: break;
    }
  } else {
    const auto& f = std::get<S4KFrame>(frame);
    switch (c.kind) {
      case K::Bhl: return detail::compositionInclusion(f.ri(), f.rm(), f.rm());
      case K::SemiTrans: {
        const Relation rhs = f.rm().then(f.ri());
        return detail::compositionInclusion(f.rm(), f.rm(), rhs);
      }
      case K::Strength: return detail::inclusion(f.rm(), f.ri());
      default: break;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Cluster quotient

struct Quotient {
  S4KFrame frame;
  std::vector<int> map;  // world -> cluster index
};

// Cluster index per world, clusters numbered by least member.
inline std::vector<int> clustersOf(const Relation& ri) {
  const int n = ri.size();
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    for (int y = x; y < n; ++y)
      if (cls[y] < 0 && ri.holds(x, y) && ri.holds(y, x)) cls[y] = next;
    ++next;
  }
  return cls;
}

inline std::vector<std::string> clusterNames(const std::vector<std::string>& worlds, const std::vector<int>& cls) {
  const int k = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<WorldSet> members(static_cast<std::size_t>(k));
  for (std::size_t x = 0; x < cls.size(); ++x) members[cls[x]].insert(static_cast<int>(x));
  std::vector<std::string> names;
  for (auto m : members) {
    if (m.size() == 1) {
      names.push_back(worlds[m.first()]);
    } else {
      std::string s = setToString(worlds, m);
      s.front() = '[';
      s.back() = ']';
      names.push_back(s);
    }
  }
  return names;
}

// Image of a relation under a world -> cluster map.
inline Relation quotientRelation(const Relation& r, const std::vector<int>& cls, int k) {
  Relation q(k);
  for (int x = 0; x < r.size(); ++x)
    for (int y : r.successors(x)) q.add(cls[x], cls[y]);
  return q;
}

inline Quotient clusterQuotient(const S4KFrame& f) {
  if (auto r = checkCondition(f, FrameCondition::of(FrameCondition::Kind::Bhl)); !r)
    throw Error(ErrorKind::BhlRequired, "cluster quotient needs R_i;R_m within R_m",
                {{ErrorKind::BhlRequired, "", {f.name(r.witness[0]), f.name(r.witness[1]), f.name(r.witness[2])}}});
  auto cls = clustersOf(f.ri());
  auto names = clusterNames(f.worlds(), cls);
  const int k = static_cast<int>(names.size());
  auto frame = S4KFrame::trusted(std::move(names), quotientRelation(f.ri(), cls, k), quotientRelation(f.rm(), cls, k));
  return {std::move(frame), std::move(cls)};
}

// Both back-and-forth clauses for each relation.
inline bool isPMorphism(const Relation& src, const Relation& dst, const std::vector<int>& map) {
  for (int x = 0; x < src.size(); ++x) {
    WorldSet image;
    for (int y : src.successors(x)) image.insert(map[y]);
    if (image != dst.successors(map[x])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

inline StoFrame point() {
  return StoFrame::validate({"a"}, Relation::identity(1), Relation::identity(1));
}

inline StoFrame chain2() {
  return StoFrame::validate({"a", "b"}, Relation::fromPairs(2, {{0, 0}, {0, 1}, {1, 1}}),
                            Relation::fromPairs(2, {{0, 1}, {1, 1}}));
}

// Chain w < x < y < z with the strict relation exactly as drawn (not coherent).
inline RawFrame figureOneData() {
  RawFrame r;
  r.kind = FrameKind::Sto;
  r.worlds = {"w", "x", "y", "z"};
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) r.rel1.emplace_back(a, b);
  r.rel2 = {{0, 1}, {1, 2}, {2, 2}, {3, 3}};
  return r;
}

inline StoFrame iele() { return stoClosure(figureOneData()); }

}  // namespace fixtures

}  // namespace hl
