#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hl/catalogue.hpp"
#include "hl/enumerate.hpp"
#include "hl/error.hpp"
#include "hl/parallel.hpp"
#include "hl/semantics.hpp"
#include "hl/translation.hpp"

namespace hl {

struct SearchOptions {
  EnumerationOptions enumeration;
  ValidityOptions validity;
  int jobs = 1;
};

template <class Model>
struct Refuted {
  Model model;
  int world = -1;
  int size = 0;
};

struct NoCountermodelUpTo {
  int maxSize = 0;
};

template <class Model>
using SearchOutcome = std::variant<Refuted<Model>, NoCountermodelUpTo>;

using StoSearchResult = SearchOutcome<StoModel>;
using BiSearchResult = SearchOutcome<BiModel>;

template <class Model>
bool isRefuted(const SearchOutcome<Model>& r) { return std::holds_alternative<Refuted<Model>>(r); }

namespace detail {

inline constexpr std::size_t kSearchBatch = 4096;

// Streams frames of one size in batches and returns the first (in
// enumeration order) for which check() yields a countermodel.
template <class Frame, class ForEach, class Check>
auto firstHit(ForEach&& forEach, int jobs, Check&& check) -> decltype(check(std::declval<const Frame&>())) {
  using Hit = decltype(check(std::declval<const Frame&>()));
  Hit found;
  std::vector<Frame> batch;
  auto flush = [&] {
    std::vector<Hit> hits(batch.size());
    const std::size_t i = parallelFindFirst(batch.size(), jobs, [&](std::size_t k) {
      hits[k] = check(batch[k]);
      return hits[k].has_value();
    });
    if (i < batch.size()) found = std::move(hits[i]);
    batch.clear();
    return !found.has_value();
  };
  forEach([&](const Frame& f) {
    batch.push_back(f);
    return batch.size() < kSearchBatch || flush();
  });
  if (!found && !batch.empty()) flush();
  return found;
}

}  // namespace detail

// Smallest intuitionistic countermodel to `goal` on a frame validating Gamma.
inline StoSearchResult countermodelSearch(const std::vector<Formula>& gamma, const Formula& goal, int maxSize,
                                          const SearchOptions& opt = {}) {
  if (maxSize < 1) throw Error(ErrorKind::InvalidInput, "maximum size must be at least 1");
  std::vector<CompiledFormula<StoLanguage>> axioms;
  for (const auto& g : gamma) axioms.emplace_back(g);
  const CompiledFormula<StoLanguage> target(goal);
  for (int n = 1; n <= maxSize; ++n) {
    auto hit = detail::firstHit<StoFrame>(
        [&](auto&& fn) { forEachStoFrame(n, {}, fn, opt.enumeration); }, opt.jobs,
        [&](const StoFrame& f) -> std::optional<Refuted<StoModel>> {
          for (const auto& a : axioms)
            if (!frameValid(f, a, opt.validity)) return std::nullopt;
          auto r = frameValid(f, target, opt.validity);
          if (r) return std::nullopt;
          return Refuted<StoModel>{StoModel(f, r.counterValuation), r.world, n};
        });
    if (hit) return std::move(*hit);
  }
  return NoCountermodelUpTo{maxSize};
}

// Same search on the bimodal side: partial-order BHL frames validating
// `axioms`, refuting `goal`.
inline BiSearchResult bimodalCountermodelSearch(const std::vector<BiFormula>& axioms, const BiFormula& goal, int maxSize,
                                                const SearchOptions& opt = {}) {
  if (maxSize < 1) throw Error(ErrorKind::InvalidInput, "maximum size must be at least 1");
  std::vector<CompiledFormula<BiLanguage>> compiled;
  for (const auto& a : axioms) compiled.emplace_back(a);
  const CompiledFormula<BiLanguage> target(goal);
  EnumerationOptions eo = opt.enumeration;
  eo.partialOrderOnly = true;
  const std::vector<FrameCondition> filters{FrameCondition::of(FrameCondition::Kind::Bhl)};
  for (int n = 1; n <= maxSize; ++n) {
    auto hit = detail::firstHit<S4KFrame>(
        [&](auto&& fn) { forEachS4KFrame(n, filters, fn, eo); }, opt.jobs,
        [&](const S4KFrame& f) -> std::optional<Refuted<BiModel>> {
          for (const auto& a : compiled)
            if (!frameValidBi(f, a, opt.validity)) return std::nullopt;
          auto r = frameValidBi(f, target, opt.validity);
          if (r) return std::nullopt;
          return Refuted<BiModel>{BiModel(f, r.counterValuation), r.world, n};
        });
    if (hit) return std::move(*hit);
  }
  return NoCountermodelUpTo{maxSize};
}

struct CorrespondenceResult {
  enum class Direction { ValidWithoutCondition, ConditionWithoutValidity };
  bool verified = true;
  int framesChecked = 0;
  std::optional<AnyFrame> frame;
  Direction direction = Direction::ValidWithoutCondition;
  Valuation counterValuation;  // for ConditionWithoutValidity
  std::vector<int> conditionWitness;  // for ValidWithoutCondition
  explicit operator bool() const { return verified; }
};

inline std::string_view directionName(CorrespondenceResult::Direction d) {
  return d == CorrespondenceResult::Direction::ValidWithoutCondition ? "axiom valid but condition fails"
                                                                      : "condition holds but axiom refuted";
}

// Validity of `axiom` coincides with `cond` on every frame up to maxSize.
inline CorrespondenceResult correspondenceCheck(const AnyFormula& axiom, const FrameCondition& cond, int maxSize,
                                                const SearchOptions& opt = {}) {
  const FrameKind kind = std::holds_alternative<Formula>(axiom) ? FrameKind::Sto : FrameKind::S4K;
  if (auto k = cond.appliesTo(); k && *k != kind)
    throw Error(ErrorKind::KindMismatch, cond.label + " is stated for the other frame kind");
  CorrespondenceResult res;
  auto judge = [&](const AnyFrame& frame, const ValidityResult& v) {
    ++res.framesChecked;
    auto c = checkCondition(frame, cond);
    if (v.valid == c.holds) return true;
    res.verified = false;
    res.frame = frame;
    if (v.valid) {
      res.direction = CorrespondenceResult::Direction::ValidWithoutCondition;
      res.conditionWitness = c.witness;
    } else {
      res.direction = CorrespondenceResult::Direction::ConditionWithoutValidity;
      res.counterValuation = v.counterValuation;
    }
    return false;
  };
  for (int n = 1; n <= maxSize && res.verified; ++n) {
    if (kind == FrameKind::Sto) {
      const CompiledFormula<StoLanguage> c(std::get<Formula>(axiom));
      forEachStoFrame(n, {}, [&](const StoFrame& f) { return judge(f, frameValid(f, c, opt.validity)); }, opt.enumeration);
    } else {
      const CompiledFormula<BiLanguage> c(std::get<BiFormula>(axiom));
      forEachS4KFrame(n, {}, [&](const S4KFrame& f) { return judge(f, frameValidBi(f, c, opt.validity)); },
                      opt.enumeration);
    }
  }
  return res;
}

struct BridgeReport {
  StoSearchResult sto;
  BiSearchResult bimodal;
  // rho of the bimodal witness frame refutes the goal (when there is one).
  std::optional<bool> witnessTransfers;

  bool agree() const {
    if (isRefuted(sto) != isRefuted(bimodal)) return false;
    if (!isRefuted(sto)) return true;
    return std::get<Refuted<StoModel>>(sto).size == std::get<Refuted<BiModel>>(bimodal).size &&
           witnessTransfers.value_or(false);
  }
};

inline BridgeReport deriveViaTranslation(const std::vector<Formula>& gamma, const Formula& goal, int maxSize,
                                         const SearchOptions& opt = {}) {
  BridgeReport r{countermodelSearch(gamma, goal, maxSize, opt),
                 bimodalCountermodelSearch(companionAxioms(gamma, CompanionKind::Sigma), gmt(goal), maxSize, opt),
                 std::nullopt};
  if (const auto* hit = std::get_if<Refuted<BiModel>>(&r.bimodal))
    r.witnessTransfers = !frameValid(rhoHat(hit->model.frame()), goal, opt.validity).valid;
  return r;
}

// One formula per line; '#' starts a comment; "@Name" names a catalogue axiom.
inline std::vector<Formula> parseAxiomList(const std::string& text) {
  std::vector<Formula> out;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    try {
      out.push_back(resolveFormula(line.substr(b, e - b + 1)));
    } catch (const SyntaxError& err) {
      throw Error(ErrorKind::Syntax, "line " + std::to_string(lineNo) + ": " + err.what());
    }
  }
  return out;
}

}  // namespace hl
