#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hl/error.hpp"
#include "hl/frames.hpp"
#include "hl/semantics.hpp"
#include "hl/syntax.hpp"

namespace hl {

struct PhiPartition {
  std::vector<int> classOf;          // world -> class id, ids ordered by least member
  int classCount = 0;
  std::vector<BiFormula> subformulas;
  std::vector<WorldSet> truth;       // truth set per subformula

  WorldSet members(int k) const {
    WorldSet s;
    for (std::size_t x = 0; x < classOf.size(); ++x)
      if (classOf[x] == k) s.insert(static_cast<int>(x));
    return s;
  }
  bool equivalent(int x, int y) const { return classOf[x] == classOf[y]; }
};

inline PhiPartition phiPartition(const BiModel& m, const BiFormula& phi) {
  const CompiledFormula<BiLanguage> c(phi);
  PhiPartition p;
  p.subformulas = c.subformulas();
  p.truth = truthSets(m, c);
  const int n = m.frame().size();
  p.classOf.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (p.classOf[x] >= 0) continue;
    for (int y = x; y < n; ++y) {
      if (p.classOf[y] >= 0) continue;
      bool same = std::all_of(p.truth.begin(), p.truth.end(), [&](WorldSet t) { return t.contains(x) == t.contains(y); });
      if (same) p.classOf[y] = p.classCount;
    }
    ++p.classCount;
  }
  return p;
}

enum class Modality { I, M };

inline const Relation& relationOf(const S4KFrame& f, Modality r) { return r == Modality::I ? f.ri() : f.rm(); }
inline char modalityChar(Modality r) { return r == Modality::I ? 'i' : 'm'; }

namespace detail {

inline WorldSet maximalIn(const Relation& r, const PhiPartition& p, WorldSet among) {
  WorldSet out;
  for (int x : among) {
    bool maximal = true;
    for (int y : r.successors(x))
      if (y != x && p.equivalent(x, y)) maximal = false;
    if (maximal) out.insert(x);
  }
  return out;
}

// Every distinct same-class successor reaches back.
inline WorldSet quasiMaximalIn(const Relation& r, const PhiPartition& p, WorldSet among) {
  WorldSet out;
  for (int x : among) {
    bool ok = true;
    for (int y : r.successors(x))
      if (y != x && p.equivalent(x, y) && !r.holds(y, x)) ok = false;
    if (ok) out.insert(x);
  }
  return out;
}

// Least maximal candidate, else least quasi-maximal, else least.
inline int pickWitness(const Relation& r, const PhiPartition& p, WorldSet candidates) {
  if (auto m = maximalIn(r, p, candidates); !m.empty()) return m.first();
  if (auto q = quasiMaximalIn(r, p, candidates); !q.empty()) return q.first();
  return candidates.first();
}

inline void requireStanding(const S4KFrame& f) {
  if (!f.transitiveM()) {
    auto t = f.rm().transitivityFailure();
    throw Error(ErrorKind::RmNotTransitive, "R_m is not transitive",
                {{ErrorKind::RmNotTransitive, "", {f.name(t->x), f.name(t->y), f.name(t->z)}}});
  }
  if (!f.bhl()) throw Error(ErrorKind::BhlRequired, "R_i;R_m is not within R_m");
}

}  // namespace detail

// States with no distinct phi-equivalent successor.
inline WorldSet maximalStates(const BiModel& m, const BiFormula& phi, Modality rel) {
  const auto& f = m.frame();
  if (rel == Modality::M && !f.transitiveM()) throw Error(ErrorKind::RmNotTransitive, "R_m is not transitive");
  return detail::maximalIn(relationOf(f, rel), phiPartition(m, phi), f.all());
}

struct TraceStep {
  std::string phase;  // "root", "i", "m", "final", "final-i"
  int from = -1;
  int klass = -1;
  int witness = -1;
};

inline std::string traceToString(const std::vector<TraceStep>& trace, const S4KFrame& f) {
  std::string out;
  for (const auto& s : trace) {
    out += s.phase;
    if (s.from >= 0) out += " from " + f.name(s.from);
    if (s.klass >= 0) out += " class " + std::to_string(s.klass);
    out += " -> " + f.name(s.witness) + "\n";
  }
  return out;
}

namespace detail {

// Witnesses from y for every class reachable along r. A class containing y
// is covered by y itself when y r y.
inline WorldSet witnessesFrom(const Relation& r, const PhiPartition& p, int y, const std::string& phase,
                              std::vector<TraceStep>& trace) {
  WorldSet out;
  const WorldSet succ = r.successors(y);
  std::vector<char> done(static_cast<std::size_t>(p.classCount), 0);
  for (int z : succ) {
    const int k = p.classOf[z];
    if (done[k]) continue;
    done[k] = 1;
    if (k == p.classOf[y] && r.holds(y, y)) continue;
    const int w = pickWitness(r, p, succ & p.members(k));
    out.insert(w);
    trace.push_back({phase, y, k, w});
  }
  return out;
}

}  // namespace detail

struct XOmega {
  WorldSet states;
  int root = -1;
  PhiPartition partition;
  std::vector<TraceStep> trace;
};

// Start at a maximal refuting state and alternately add [i]- and
// [m]-witnesses until every state has both.
inline XOmega buildXOmega(const BiModel& m, const BiFormula& phi) {
  const auto& f = m.frame();
  detail::requireStanding(f);
  XOmega out;
  out.partition = phiPartition(m, phi);
  const auto& p = out.partition;
  const WorldSet refuted = p.truth.back().complementIn(f.size());
  if (refuted.empty()) throw Error(ErrorKind::NotRefuted, "the model does not refute the formula");
  out.root = detail::pickWitness(f.ri(), p, refuted);
  out.trace.push_back({"root", -1, p.classOf[out.root], out.root});
  out.states.insert(out.root);
  WorldSet doneI, doneM;
  for (Modality phase = Modality::I;; phase = phase == Modality::I ? Modality::M : Modality::I) {
    WorldSet& done = phase == Modality::I ? doneI : doneM;
    const WorldSet todo = out.states.minus(done);
    if (todo.empty() && out.states.subsetOf(doneI) && out.states.subsetOf(doneM)) break;
    WorldSet added;
    for (int y : todo)
      added |= detail::witnessesFrom(relationOf(f, phase), p, y, std::string(1, modalityChar(phase)), out.trace);
    done |= todo;
    out.states |= added;
  }
  return out;
}

// Cluster of x under R_m: x with every state mutually R_m-related to it.
inline WorldSet rmCluster(const S4KFrame& f, int x) {
  WorldSet c = WorldSet::singleton(x);
  for (int y : f.rm().successors(x))
    if (f.rm().holds(y, x)) c.insert(y);
  return c;
}

// Nothing R_m-above x leaves its cluster (dead ends included).
inline bool isRmFinal(const S4KFrame& f, int x) { return f.rm().successors(x).subsetOf(rmCluster(f, x)); }

// Every R_m-step out of Y can be answered inside Y (equality allowed).
inline bool isRmCofinal(const S4KFrame& f, WorldSet y) {
  for (int a : y)
    for (int z : f.rm().successors(a))
      if (!y.contains(z) && !f.rm().successors(z).intersects(y)) return false;
  return true;
}

struct FinalCluster {
  WorldSet cluster;
  std::vector<WorldSet> levels;  // F_{j,0}, F_{j,1}, ...
  WorldSet states() const {
    WorldSet s;
    for (auto l : levels) s |= l;
    return s;
  }
};

struct CofinalExtension {
  WorldSet states;
  int classCount = 0;
  std::vector<FinalCluster> clusters;
  std::vector<TraceStep> trace;
};

inline CofinalExtension cofinalExtension(const BiModel& m, const BiFormula& /*phi*/, const XOmega& x) {
  const auto& f = m.frame();
  detail::requireStanding(f);
  const auto& p = x.partition;
  CofinalExtension out;
  out.classCount = p.classCount;
  out.states = x.states;
  out.trace = x.trace;
  WorldSet seen;
  for (int a = 0; a < f.size(); ++a) {
    if (seen.contains(a) || !isRmFinal(f, a)) continue;
    FinalCluster fc;
    fc.cluster = rmCluster(f, a);
    seen |= fc.cluster;
    WorldSet level0;
    std::vector<char> covered(static_cast<std::size_t>(p.classCount), 0);
    for (int z : fc.cluster) {
      const int k = p.classOf[z];
      if (covered[k]) continue;
      covered[k] = 1;
      const int w = detail::pickWitness(f.rm(), p, fc.cluster & p.members(k));
      level0.insert(w);
      out.trace.push_back({"final", -1, k, w});
    }
    fc.levels.push_back(level0);
    WorldSet all = level0, fresh = level0;
    while (!fresh.empty()) {
      WorldSet next;
      for (int y : fresh) next |= detail::witnessesFrom(f.ri(), p, y, "final-i", out.trace);
      fresh = next.minus(all);
      if (fresh.empty()) break;
      fc.levels.push_back(fresh);
      all |= fresh;
    }
    out.states |= all;
    out.clusters.push_back(std::move(fc));
  }
  return out;
}

// Submodel on Y with relations, valuation and admissible sets restricted.
// The restricted family {a & Y} is reported as is; truth does not depend on it.
struct Submodel {
  BiModel model;
  std::optional<std::vector<WorldSet>> admissible;
  std::vector<int> original;  // new index -> old index
};

inline Submodel restrictModel(const BiModel& m, WorldSet y) {
  const auto& f = m.frame();
  std::vector<int> orig = y.members();
  std::vector<int> pos(static_cast<std::size_t>(f.size()), -1);
  for (std::size_t i = 0; i < orig.size(); ++i) pos[orig[i]] = static_cast<int>(i);
  auto shrink = [&](WorldSet s) {
    WorldSet out;
    for (int a : s & y) out.insert(pos[a]);
    return out;
  };
  const int k = static_cast<int>(orig.size());
  Relation ri(k), rm(k);
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) {
    names.push_back(f.name(orig[i]));
    ri.setSuccessors(i, shrink(f.ri().successors(orig[i])));
    rm.setSuccessors(i, shrink(f.rm().successors(orig[i])));
  }
  Valuation v;
  for (const auto& [atom, s] : m.valuation()) v[atom] = shrink(s);
  auto frame = S4KFrame::validate(std::move(names), std::move(ri), std::move(rm));
  std::optional<std::vector<WorldSet>> restricted;
  if (m.admissible()) {
    std::vector<WorldSet> p;
    for (auto a : *m.admissible()) p.push_back(shrink(a));
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    restricted = std::move(p);
  }
  return {BiModel(std::move(frame), std::move(v)), std::move(restricted), std::move(orig)};
}

struct SubmodelReport {
  struct MissingWitness {
    int y, x;
    Modality rel;
  };
  struct Disagreement {
    int y;
    BiFormula psi;
  };
  std::vector<MissingWitness> preconditionFailures;
  std::vector<Disagreement> agreementFailures;
  bool preconditionHolds() const { return preconditionFailures.empty(); }
  bool agreementHolds() const { return agreementFailures.empty(); }
  bool ok() const { return preconditionHolds() && agreementHolds(); }
};

// Witness condition for both relations, then agreement on every subformula.
inline SubmodelReport verifySubmodelTruth(const BiModel& m, WorldSet y, const BiFormula& phi) {
  const auto& f = m.frame();
  SubmodelReport r;
  const auto p = phiPartition(m, phi);
  for (Modality rel : {Modality::I, Modality::M}) {
    const Relation& R = relationOf(f, rel);
    for (int a : y)
      for (int x : R.successors(a)) {
        bool found = false;
        for (int b : R.successors(a) & y) found = found || p.equivalent(x, b);
        if (!found) r.preconditionFailures.push_back({a, x, rel});
      }
  }
  if (y.empty()) return r;
  const auto sub = restrictModel(m, y);
  const CompiledFormula<BiLanguage> c(phi);
  const auto small = truthSets(sub.model, c);
  for (std::size_t i = 0; i < c.subformulas().size(); ++i)
    for (std::size_t j = 0; j < sub.original.size(); ++j)
      if (small[i].contains(static_cast<int>(j)) != p.truth[i].contains(sub.original[j]))
        r.agreementFailures.push_back({sub.original[j], c.subformulas()[i]});
  return r;
}

}  // namespace hl
