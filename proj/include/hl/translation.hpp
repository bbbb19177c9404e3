#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "hl/catalogue.hpp"
#include "hl/error.hpp"
#include "hl/frames.hpp"
#include "hl/report.hpp"
#include "hl/semantics.hpp"
#include "hl/syntax.hpp"

namespace hl {

// Box-prefixing translation, clause by clause with no simplification.
inline BiFormula gmt(const Formula& phi) {
  using Op = StoLanguage::Op;
  using B = BiFormula;
  switch (phi.op()) {
    case Op::Atom: return B::boxI(B::atom(phi.name()));
    case Op::Top: return B::top();
    case Op::Bot: return B::bot();
    case Op::And: return B::boxI(B::conj(gmt(phi.lhs()), gmt(phi.rhs())));
    case Op::Or: return B::boxI(B::disj(gmt(phi.lhs()), gmt(phi.rhs())));
    case Op::Imp: return B::boxI(B::imp(gmt(phi.lhs()), gmt(phi.rhs())));
    case Op::Sto: return B::boxI(B::boxM(B::imp(gmt(phi.lhs()), gmt(phi.rhs()))));
  }
  return B::top();
}

// Smallest family containing `sets` and the empty set, closed under
// complement and intersection.
inline std::vector<WorldSet> booleanClosure(const std::vector<WorldSet>& sets, int n) {
  std::set<WorldSet> s(sets.begin(), sets.end());
  s.insert(WorldSet{});
  std::vector<WorldSet> frontier(s.begin(), s.end());
  while (!frontier.empty()) {
    std::vector<WorldSet> added;
    auto add = [&](WorldSet x) {
      if (s.insert(x).second) added.push_back(x);
    };
    const std::vector<WorldSet> current(s.begin(), s.end());
    for (auto a : frontier) {
      add(a.complementIn(n));
      for (auto b : current) add(a & b);
    }
    frontier = std::move(added);
  }
  return {s.begin(), s.end()};
}

inline GeneralS4KFrame sigmaHat(const GeneralStoFrame& g) {
  const auto& f = g.frame();
  return GeneralS4KFrame::validate(asS4K(f), booleanClosure(g.admissible(), f.size()));
}

// Cluster quotient with R_m* = R_i;R_m and admissible sets [i]S for
// cluster-saturated admissible S.
inline GeneralStoFrame rhoHat(const GeneralS4KFrame& g) {
  const auto& f = g.frame();
  const auto cls = clustersOf(f.ri());
  auto names = clusterNames(f.worlds(), cls);
  const int k = static_cast<int>(names.size());
  Relation le = quotientRelation(f.ri(), cls, k);
  Relation sq = quotientRelation(f.ri().then(f.rm()), cls, k);
  std::vector<WorldSet> p;
  for (auto a : g.admissible()) {
    WorldSet image, saturated;
    for (int x : a) image.insert(cls[x]);
    for (int x = 0; x < f.size(); ++x)
      if (image.contains(cls[x])) saturated.insert(x);
    if (saturated != a) continue;
    p.push_back(le.box(image));
  }
  auto frame = StoFrame::validate(std::move(names), std::move(le), std::move(sq));
  return GeneralStoFrame::validate(std::move(frame), std::move(p));
}

inline GeneralStoFrame rhoHat(const S4KFrame& f) { return rhoHat(GeneralS4KFrame::full(f)); }

inline CheckReport rhoSigmaIdentity(const GeneralStoFrame& g) {
  CheckReport r;
  const auto back = rhoHat(sigmaHat(g));
  const auto& a = g.frame();
  const auto& b = back.frame();
  if (a.worlds() != b.worlds()) {
    r.fail("worlds differ");
    return r;
  }
  for (auto [x, y] : a.preceq().unite(b.preceq()).pairs())
    if (a.preceq().holds(x, y) != b.preceq().holds(x, y)) r.fail("order differs at (" + a.name(x) + "," + a.name(y) + ")");
  for (auto [x, y] : a.sqsubset().unite(b.sqsubset()).pairs())
    if (a.sqsubset().holds(x, y) != b.sqsubset().holds(x, y))
      r.fail("strict relation differs at (" + a.name(x) + "," + a.name(y) + ")");
  std::vector<WorldSet> extra, missing;
  std::set_difference(back.admissible().begin(), back.admissible().end(),
                      g.admissible().begin(), g.admissible().end(), std::back_inserter(extra));
  std::set_difference(g.admissible().begin(), g.admissible().end(), back.admissible().begin(), back.admissible().end(),
                      std::back_inserter(missing));
  for (auto s : extra) r.fail("extra admissible set " + setToString(a.worlds(), s));
  for (auto s : missing) r.fail("missing admissible set " + setToString(a.worlds(), s));
  return r;
}

struct PreservationReport {
  ValidityResult bimodal;  // F against t(phi)
  ValidityResult sto;      // rho(F) against phi
  bool agree() const { return bimodal.valid == sto.valid; }
  std::string describe(const GeneralS4KFrame& f, const GeneralStoFrame& rho) const {
    if (agree()) return bimodal.valid ? "both valid" : "both refuted";
    if (!bimodal.valid)
      return "only the bimodal side is refuted: " + valuationToString(f.frame().worlds(), bimodal.counterValuation) +
             " at " + f.frame().name(bimodal.world);
    return "only the intuitionistic side is refuted: " + valuationToString(rho.frame().worlds(), sto.counterValuation) +
           " at " + rho.frame().name(sto.world);
  }
};

inline PreservationReport translationPreservation(const GeneralS4KFrame& f, const GeneralStoFrame& rho,
                                                  const Formula& phi, const ValidityOptions& opt = {}) {
  return {frameValidBi(f, gmt(phi), opt), frameValid(rho, phi, opt)};
}
inline PreservationReport translationPreservation(const GeneralS4KFrame& f, const Formula& phi,
                                                  const ValidityOptions& opt = {}) {
  return translationPreservation(f, rhoHat(f), phi, opt);
}

struct SigmaRhoReport {
  ValidityResult original;
  ValidityResult roundTrip;  // on sigma(rho(F))
  bool agree() const { return original.valid == roundTrip.valid; }
};

// Requires R_i a partial order, R_i;R_m within R_m and validity of Grz for [i].
inline void requireSigmaRhoHypotheses(const GeneralS4KFrame& g) {
  const auto& f = g.frame();
  if (!f.partialOrder()) {
    auto w = f.ri().antisymmetryFailure();
    throw Error(ErrorKind::PreconditionFailed, "R_i is not a partial order",
                {{ErrorKind::PreconditionFailed, "partial-order", {f.name(w->first), f.name(w->second)}}});
  }
  if (!f.bhl()) throw Error(ErrorKind::PreconditionFailed, "R_i;R_m is not within R_m", {{ErrorKind::PreconditionFailed, "bhl", {}}});
  if (!frameValidBi(g, biAxiom("GrzI")))
    throw Error(ErrorKind::PreconditionFailed, "Grz for [i] fails", {{ErrorKind::PreconditionFailed, "grz", {}}});
}

inline SigmaRhoReport sigmaRhoValidity(const GeneralS4KFrame& g, const BiFormula& phi, const ValidityOptions& opt = {}) {
  requireSigmaRhoHypotheses(g);
  const auto back = sigmaHat(rhoHat(g));
  return {frameValidBi(g, phi, opt), frameValidBi(back, phi, opt)};
}

enum class CompanionKind { Tau, Sigma };

// t(Gamma), BHL, and Grz for [i] in the Sigma case. The S4 base for [i] and
// K for [m] are part of the frame class, not of this list.
inline std::vector<BiFormula> companionAxioms(const std::vector<Formula>& gamma, CompanionKind kind) {
  std::vector<BiFormula> out;
  for (const auto& g : gamma) out.push_back(gmt(g));
  out.push_back(biAxiom("BHL"));
  if (kind == CompanionKind::Sigma) out.push_back(biAxiom("GrzI"));
  return out;
}

// Finite refinedness of a bimodal general frame.
struct S4KRefinedness {
  bool differentiated = true;
  bool tightI = true;
  bool tightM = true;
  bool holds() const { return differentiated && tightI && tightM; }
};

inline S4KRefinedness refinedness(const GeneralS4KFrame& g) {
  S4KRefinedness r;
  const auto& f = g.frame();
  const auto& p = g.admissible();
  auto tight = [&](const Relation& rel) {
    for (int x = 0; x < f.size(); ++x)
      for (int y = 0; y < f.size(); ++y) {
        bool forced = std::all_of(p.begin(), p.end(), [&](WorldSet a) { return !rel.box(a).contains(x) || a.contains(y); });
        if (forced != rel.holds(x, y)) return false;
      }
    return true;
  };
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if (x != y && std::none_of(p.begin(), p.end(), [&](WorldSet a) { return a.contains(x) && !a.contains(y); }))
        r.differentiated = false;
  r.tightI = tight(f.ri());
  r.tightM = tight(f.rm());
  return r;
}

}  // namespace hl
