#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hl/error.hpp"
#include "hl/frames.hpp"
#include "hl/print.hpp"
#include "hl/syntax.hpp"

namespace hl {

using Valuation = std::map<std::string, WorldSet>;

inline std::string valuationToString(const std::vector<std::string>& worlds, const Valuation& v) {
  std::string s;
  for (const auto& [atom, set] : v) {
    if (!s.empty()) s += ", ";
    s += atom + "=" + setToString(worlds, set);
  }
  return s;
}

// Formula flattened to its subformula list; entry i only refers to entries < i.
template <Language L>
class CompiledFormula {
 public:
  struct Instr {
    typename L::Op op;
    int a = -1;
    int b = -1;
    int atom = -1;
  };

  explicit CompiledFormula(const BasicFormula<L>& phi) : formula_(phi), subs_(hl::subformulas(phi)), atoms_(hl::atomsOf(phi)) {
    std::unordered_map<BasicFormula<L>, int, FormulaHash<L>> index;
    for (std::size_t i = 0; i < subs_.size(); ++i) index.emplace(subs_[i], static_cast<int>(i));
    for (const auto& f : subs_) {
      Instr in{f.op()};
      if (f.is(L::Op::Atom))
        in.atom = static_cast<int>(std::lower_bound(atoms_.begin(), atoms_.end(), f.name()) - atoms_.begin());
      if (f.arity() >= 1) in.a = index.at(f.child(0));
      if (f.arity() >= 2) in.b = index.at(f.child(1));
      code_.push_back(in);
    }
  }

  const BasicFormula<L>& formula() const { return formula_; }
  const std::vector<BasicFormula<L>>& subformulas() const { return subs_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Instr>& code() const { return code_; }

 private:
  BasicFormula<L> formula_;
  std::vector<BasicFormula<L>> subs_;
  std::vector<std::string> atoms_;
  std::vector<Instr> code_;
};

// Relational data needed to interpret each language.
struct StoStructure {
  const Relation* preceq;
  const Relation* sqsubset;
  int n;
};
struct BiStructure {
  const Relation* ri;
  const Relation* rm;
  int n;
};

namespace detail {

// Truth set of every subformula; atomValues follows compiled.atoms().
inline void evaluateAll(const CompiledFormula<StoLanguage>& c, const StoStructure& s, const WorldSet* atomValues,
                        std::vector<WorldSet>& out) {
  using Op = StoLanguage::Op;
  out.resize(c.code().size());
  const WorldSet all = WorldSet::full(s.n);
  for (std::size_t i = 0; i < c.code().size(); ++i) {
    const auto& in = c.code()[i];
    switch (in.op) {
      case Op::Atom: out[i] = atomValues[in.atom]; break;
      case Op::Top: out[i] = all; break;
      case Op::Bot: out[i] = WorldSet{}; break;
      case Op::And: out[i] = out[in.a] & out[in.b]; break;
      case Op::Or: out[i] = out[in.a] | out[in.b]; break;
      case Op::Imp: out[i] = s.preceq->strict(out[in.a], out[in.b]); break;
      case Op::Sto: out[i] = s.sqsubset->strict(out[in.a], out[in.b]); break;
    }
  }
}

inline void evaluateAll(const CompiledFormula<BiLanguage>& c, const BiStructure& s, const WorldSet* atomValues,
                        std::vector<WorldSet>& out) {
  using Op = BiLanguage::Op;
  out.resize(c.code().size());
  const WorldSet all = WorldSet::full(s.n);
  for (std::size_t i = 0; i < c.code().size(); ++i) {
    const auto& in = c.code()[i];
    switch (in.op) {
      case Op::Atom: out[i] = atomValues[in.atom]; break;
      case Op::Top: out[i] = all; break;
      case Op::Bot: out[i] = WorldSet{}; break;
      case Op::And: out[i] = out[in.a] & out[in.b]; break;
      case Op::Or: out[i] = out[in.a] | out[in.b]; break;
      case Op::Imp: out[i] = out[in.a].complementIn(s.n) | out[in.b]; break;
      case Op::Not: out[i] = out[in.a].complementIn(s.n); break;
      case Op::BoxI: out[i] = s.ri->box(out[in.a]); break;
      case Op::BoxM: out[i] = s.rm->box(out[in.a]); break;
    }
  }
}

template <Language L>
std::vector<WorldSet> atomValuesFor(const CompiledFormula<L>& c, const Valuation& v) {
  std::vector<WorldSet> vals;
  for (const auto& a : c.atoms()) {
    auto it = v.find(a);
    vals.push_back(it == v.end() ? WorldSet{} : it->second);
  }
  return vals;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Models

class StoModel {
 public:
  // Every value must be an upset; missing atoms mean the empty set.
  StoModel(StoFrame frame, Valuation v) : frame_(std::move(frame)), valuation_(std::move(v)) {
    std::vector<Violation> bad;
    for (const auto& [atom, set] : valuation_) {
      if (!set.subsetOf(frame_.all())) throw Error(ErrorKind::InvalidValuation, "valuation of " + atom + " names unknown worlds");
      if (!frame_.isUpset(set)) bad.push_back({ErrorKind::InvalidValuation, "upset", {atom, setToString(frame_.worlds(), set)}});
    }
    if (!bad.empty()) throw Error::fromViolations(std::move(bad));
  }
  // Values must additionally be admissible.
  StoModel(const GeneralStoFrame& g, Valuation v) : StoModel(g.frame(), std::move(v)) {
    for (const auto& [atom, set] : valuation_)
      if (!std::binary_search(g.admissible().begin(), g.admissible().end(), set))
        throw Error(ErrorKind::InvalidValuation, "valuation of " + atom + " is not admissible",
                    {{ErrorKind::InvalidValuation, "admissible", {atom, setToString(frame_.worlds(), set)}}});
    admissible_ = g.admissible();
  }

  const StoFrame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }
  const std::optional<std::vector<WorldSet>>& admissible() const { return admissible_; }
  WorldSet value(const std::string& atom) const {
    auto it = valuation_.find(atom);
    return it == valuation_.end() ? WorldSet{} : it->second;
  }

 private:
  StoFrame frame_;
  Valuation valuation_;
  std::optional<std::vector<WorldSet>> admissible_;
};

class BiModel {
 public:
  BiModel(S4KFrame frame, Valuation v) : frame_(std::move(frame)), valuation_(std::move(v)) {
    for (const auto& [atom, set] : valuation_)
      if (!set.subsetOf(frame_.all())) throw Error(ErrorKind::InvalidValuation, "valuation of " + atom + " names unknown worlds");
  }
  BiModel(const GeneralS4KFrame& g, Valuation v) : BiModel(g.frame(), std::move(v)) {
    for (const auto& [atom, set] : valuation_)
      if (!std::binary_search(g.admissible().begin(), g.admissible().end(), set))
        throw Error(ErrorKind::InvalidValuation, "valuation of " + atom + " is not admissible",
                    {{ErrorKind::InvalidValuation, "admissible", {atom, setToString(frame_.worlds(), set)}}});
    admissible_ = g.admissible();
  }

  const S4KFrame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }
  const std::optional<std::vector<WorldSet>>& admissible() const { return admissible_; }
  WorldSet value(const std::string& atom) const {
    auto it = valuation_.find(atom);
    return it == valuation_.end() ? WorldSet{} : it->second;
  }

 private:
  S4KFrame frame_;
  Valuation valuation_;
  std::optional<std::vector<WorldSet>> admissible_;
};

using AnyModel = std::variant<StoModel, BiModel>;

inline StoStructure structureOf(const StoFrame& f) { return {&f.preceq(), &f.sqsubset(), f.size()}; }
inline BiStructure structureOf(const S4KFrame& f) { return {&f.ri(), &f.rm(), f.size()}; }

// Truth sets of all subformulas, in subformula order.
inline std::vector<WorldSet> truthSets(const StoModel& m, const CompiledFormula<StoLanguage>& c) {
  auto vals = detail::atomValuesFor(c, m.valuation());
  std::vector<WorldSet> out;
  detail::evaluateAll(c, structureOf(m.frame()), vals.data(), out);
  return out;
}
inline std::vector<WorldSet> truthSets(const BiModel& m, const CompiledFormula<BiLanguage>& c) {
  auto vals = detail::atomValuesFor(c, m.valuation());
  std::vector<WorldSet> out;
  detail::evaluateAll(c, structureOf(m.frame()), vals.data(), out);
  return out;
}

inline WorldSet truthSet(const StoModel& m, const Formula& phi) {
  return truthSets(m, CompiledFormula<StoLanguage>(phi)).back();
}
inline WorldSet truthSetBi(const BiModel& m, const BiFormula& phi) {
  return truthSets(m, CompiledFormula<BiLanguage>(phi)).back();
}

// Kind-checked entry points for callers holding a model of either kind.
inline WorldSet truthSet(const AnyModel& m, const Formula& phi) {
  if (!std::holds_alternative<StoModel>(m)) throw Error(ErrorKind::KindMismatch, "intuitionistic formula on a bimodal model");
  return truthSet(std::get<StoModel>(m), phi);
}
inline WorldSet truthSetBi(const AnyModel& m, const BiFormula& phi) {
  if (!std::holds_alternative<BiModel>(m)) throw Error(ErrorKind::KindMismatch, "bimodal formula on an intuitionistic model");
  return truthSetBi(std::get<BiModel>(m), phi);
}

// ---------------------------------------------------------------------------
// Frame validity

inline constexpr int kDefaultMaxAtoms = 3;

struct ValidityOptions {
  int maxAtoms = kDefaultMaxAtoms;
};

struct ValidityResult {
  bool valid = true;
  Valuation counterValuation;  // least refuting valuation, atom order then candidate order
  int world = -1;              // least world where it fails
  explicit operator bool() const { return valid; }
};

namespace detail {

// Runs through valuations with the first atom most significant and candidate
// sets in ascending bit order, so the first hit is the least one.
template <Language L, class Structure>
ValidityResult validOver(const CompiledFormula<L>& c, const Structure& s, const std::vector<WorldSet>& candidates,
                         const ValidityOptions& opt) {
  const int k = static_cast<int>(c.atoms().size());
  if (k > opt.maxAtoms)
    throw Error(ErrorKind::TooManyAtoms, "formula has " + std::to_string(k) + " atoms, limit is " +
                                             std::to_string(opt.maxAtoms));
  const WorldSet all = WorldSet::full(s.n);
  std::vector<std::size_t> digit(static_cast<std::size_t>(k), 0);
  std::vector<WorldSet> vals(static_cast<std::size_t>(k), candidates.empty() ? WorldSet{} : candidates[0]);
  std::vector<WorldSet> scratch;
  if (k > 0 && candidates.empty()) return {};
  for (;;) {
    evaluateAll(c, s, vals.data(), scratch);
    if (scratch.back() != all) {
      ValidityResult r;
      r.valid = false;
      for (int i = 0; i < k; ++i) r.counterValuation[c.atoms()[i]] = vals[i];
      r.world = scratch.back().complementIn(s.n).first();
      return r;
    }
    int i = k - 1;
    while (i >= 0 && ++digit[i] == candidates.size()) {
      digit[i] = 0;
      vals[i] = candidates[0];
      --i;
    }
    if (i < 0) return {};
    vals[i] = candidates[digit[i]];
  }
}

}  // namespace detail

inline ValidityResult frameValid(const StoFrame& f, const CompiledFormula<StoLanguage>& c, const ValidityOptions& opt = {}) {
  return detail::validOver(c, structureOf(f), f.upsets(), opt);
}
inline ValidityResult frameValid(const StoFrame& f, const Formula& phi, const ValidityOptions& opt = {}) {
  return frameValid(f, CompiledFormula<StoLanguage>(phi), opt);
}
inline ValidityResult frameValid(const GeneralStoFrame& g, const Formula& phi, const ValidityOptions& opt = {}) {
  return detail::validOver(CompiledFormula<StoLanguage>(phi), structureOf(g.frame()), g.admissible(), opt);
}
inline ValidityResult frameValid(const GeneralStoFrame& g, const CompiledFormula<StoLanguage>& c,
                                 const ValidityOptions& opt = {}) {
  return detail::validOver(c, structureOf(g.frame()), g.admissible(), opt);
}

inline ValidityResult frameValidBi(const S4KFrame& f, const CompiledFormula<BiLanguage>& c, const ValidityOptions& opt = {}) {
  return detail::validOver(c, structureOf(f), allSubsets(f.size()), opt);
}
inline ValidityResult frameValidBi(const S4KFrame& f, const BiFormula& phi, const ValidityOptions& opt = {}) {
  return frameValidBi(f, CompiledFormula<BiLanguage>(phi), opt);
}
inline ValidityResult frameValidBi(const GeneralS4KFrame& g, const CompiledFormula<BiLanguage>& c,
                                   const ValidityOptions& opt = {}) {
  return detail::validOver(c, structureOf(g.frame()), g.admissible(), opt);
}
inline ValidityResult frameValidBi(const GeneralS4KFrame& g, const BiFormula& phi, const ValidityOptions& opt = {}) {
  return frameValidBi(g, CompiledFormula<BiLanguage>(phi), opt);
}

}  // namespace hl
