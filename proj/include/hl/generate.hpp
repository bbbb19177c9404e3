#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hl/catalogue.hpp"
#include "hl/frames.hpp"
#include "hl/semantics.hpp"
#include "hl/syntax.hpp"

namespace hl {

// Seeded source; draws are reduced by modulo so sequences are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int k) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(k)); }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

inline const std::vector<std::string>& defaultAtoms() {
  static const std::vector<std::string> a{"p", "q", "r"};
  return a;
}

inline Formula randomFormula(Rng& rng, int depth, const std::vector<std::string>& atoms = defaultAtoms()) {
  using F = Formula;
  if (depth <= 0 || rng.chance(25)) {
    const int k = rng.below(10);
    if (k == 0) return F::top();
    if (k == 1) return F::bot();
    return F::atom(atoms[static_cast<std::size_t>(rng.below(static_cast<int>(atoms.size())))]);
  }
  auto sub = [&] { return randomFormula(rng, depth - 1, atoms); };
  switch (rng.below(6)) {
    case 0: { auto a = sub(); return F::conj(a, sub()); }
    case 1: { auto a = sub(); return F::disj(a, sub()); }
    case 2: { auto a = sub(); return F::imp(a, sub()); }
    case 3: return F::neg(sub());
    case 4: return F::box(sub());
    default: { auto a = sub(); return F::sto(a, sub()); }
  }
}

inline BiFormula randomBiFormula(Rng& rng, int depth, const std::vector<std::string>& atoms = defaultAtoms()) {
  using B = BiFormula;
  if (depth <= 0 || rng.chance(25)) {
    const int k = rng.below(10);
    if (k == 0) return B::top();
    if (k == 1) return B::bot();
    return B::atom(atoms[static_cast<std::size_t>(rng.below(static_cast<int>(atoms.size())))]);
  }
  auto sub = [&] { return randomBiFormula(rng, depth - 1, atoms); };
  switch (rng.below(6)) {
    case 0: { auto a = sub(); return B::conj(a, sub()); }
    case 1: { auto a = sub(); return B::disj(a, sub()); }
    case 2: { auto a = sub(); return B::imp(a, sub()); }
    case 3: return B::neg(sub());
    case 4: return B::boxI(sub());
    default: return B::boxM(sub());
  }
}

// Intuitionistic catalogue entries followed by random formulas of depth <= 3.
inline std::vector<Formula> formulaSet(std::uint64_t seed, std::size_t count) {
  std::vector<Formula> out;
  const auto& c = AxiomCatalogue::instance();
  for (const auto& name : c.names())
    if (out.size() < count && !c.isBi(name)) out.push_back(c.sto(name));
  Rng rng(seed);
  while (out.size() < count) out.push_back(randomFormula(rng, 3));
  return out;
}

// Bimodal catalogue entries followed by random bimodal formulas of depth <= 3.
inline std::vector<BiFormula> biFormulaSet(std::uint64_t seed, std::size_t count) {
  std::vector<BiFormula> out;
  const auto& c = AxiomCatalogue::instance();
  for (const auto& name : c.names())
    if (out.size() < count && c.isBi(name)) out.push_back(c.bi(name));
  Rng rng(seed);
  while (out.size() < count) out.push_back(randomBiFormula(rng, 3));
  return out;
}

inline Relation randomRelation(Rng& rng, int n, int percent) {
  Relation r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (rng.chance(percent)) r.add(x, y);
  return r;
}

// Preorder R_i and an R_m closed under R_i;R_m and R_m;R_m.
inline S4KFrame randomTransitiveBhlFrame(Rng& rng, int n) {
  Relation ri = randomRelation(rng, n, 30).reflexiveClosure().transitiveClosure();
  Relation rm = randomRelation(rng, n, 25);
  for (;;) {
    Relation next = rm.unite(ri.then(rm)).unite(rm.then(rm));
    if (next == rm) break;
    rm = std::move(next);
  }
  return S4KFrame::validate(defaultWorldNames(n), std::move(ri), std::move(rm));
}

inline Valuation randomValuation(Rng& rng, int n, const std::vector<std::string>& atoms = defaultAtoms()) {
  Valuation v;
  for (const auto& a : atoms) v[a] = WorldSet(rng.next() & WorldSet::full(n).bits());
  return v;
}

}  // namespace hl
