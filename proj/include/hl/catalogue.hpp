#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hl/parse.hpp"
#include "hl/syntax.hpp"

namespace hl {

using AnyFormula = std::variant<Formula, BiFormula>;

// Named axioms over atoms p, q, r.
class AxiomCatalogue {
 public:
  static const AxiomCatalogue& instance() {
    static const AxiomCatalogue c;
    return c;
  }

  const std::vector<std::string>& names() const { return order_; }
  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  const AnyFormula& at(const std::string& name) const { return entries_.at(name); }
  Formula sto(const std::string& name) const { return std::get<Formula>(entries_.at(name)); }
  BiFormula bi(const std::string& name) const { return std::get<BiFormula>(entries_.at(name)); }
  bool isBi(const std::string& name) const { return std::holds_alternative<BiFormula>(entries_.at(name)); }

 private:
  AxiomCatalogue() {
    using F = Formula;
    const F p = F::atom("p"), q = F::atom("q"), r = F::atom("r");
    auto S = [](F a, F b) { return F::sto(a, b); };
    auto I = [](F a, F b) { return F::imp(a, b); };
    auto A = [](F a, F b) { return F::conj(a, b); };
    auto B = [](F a) { return F::box(a); };
    addSto("Ka", I(A(S(p, q), S(p, r)), S(p, A(q, r))));
    addSto("Di", I(A(S(p, r), S(q, r)), S(F::disj(p, q), r)));
    addSto("Tr", I(A(S(p, q), S(q, r)), S(p, r)));
    addSto("Sa", I(I(p, q), S(p, q)));
    addSto("Sb", I(p, B(p)));
    addSto("IR", I(S(p, q), F::neg(F::neg(I(p, q)))));
    addSto("Box", I(S(p, q), B(I(p, q))));
    addSto("Hug", I(I(p, B(q)), S(p, q)));
    addSto("P", I(S(p, q), B(S(p, q))));
    addSto("T", I(B(p), p));
    addSto("Four", I(B(p), B(B(p))));
    addSto("C4", I(B(B(p)), B(p)));
    addSto("SL", I(I(B(p), p), p));
    addSto("L", I(B(I(B(p), p)), B(p)));
    addSto("AppA", S(A(p, S(p, q)), q));

    using G = BiFormula;
    const G bp = G::atom("p");
    auto Ii = [](G a) { return G::boxI(a); };
    auto Mm = [](G a) { return G::boxM(a); };
    auto Imp = [](G a, G b) { return G::imp(a, b); };
    addBi("BHL", Imp(Mm(bp), Ii(Mm(bp))));
    addBi("GrzI", Imp(Ii(Imp(Ii(Imp(bp, Ii(bp))), bp)), bp));
    addBi("GrzM", Imp(Mm(Imp(Mm(Imp(bp, Mm(bp))), bp)), bp));
    addBi("FourM", Imp(Mm(bp), Mm(Mm(bp))));
    addBi("Mix", Imp(Mm(bp), Ii(Mm(Ii(bp)))));
    addBi("Sc", Imp(Ii(bp), Mm(bp)));
  }
  void addSto(const std::string& n, Formula f) { order_.push_back(n); entries_.emplace(n, std::move(f)); }
  void addBi(const std::string& n, BiFormula f) { order_.push_back(n); entries_.emplace(n, std::move(f)); }

  std::vector<std::string> order_;
  std::map<std::string, AnyFormula> entries_;
};

inline Formula axiom(const std::string& name) { return AxiomCatalogue::instance().sto(name); }
inline BiFormula biAxiom(const std::string& name) { return AxiomCatalogue::instance().bi(name); }

// "@Name" refers to a catalogue entry; anything else is parsed.
inline AnyFormula resolveAny(const std::string& text, bool bimodal) {
  if (!text.empty() && text[0] == '@') {
    const std::string name = text.substr(1);
    const auto& c = AxiomCatalogue::instance();
    if (!c.contains(name)) throw Error(ErrorKind::InvalidInput, "unknown axiom '" + name + "'");
    return c.at(name);
  }
  if (bimodal) return parseBi(text);
  return parseSto(text);
}
inline Formula resolveFormula(const std::string& text) {
  auto f = resolveAny(text, false);
  if (!std::holds_alternative<Formula>(f))
    throw Error(ErrorKind::KindMismatch, "'" + text + "' is a bimodal axiom");
  return std::get<Formula>(f);
}
inline BiFormula resolveBiFormula(const std::string& text) {
  auto f = resolveAny(text, true);
  if (!std::holds_alternative<BiFormula>(f))
    throw Error(ErrorKind::KindMismatch, "'" + text + "' is not a bimodal formula");
  return std::get<BiFormula>(f);
}

}  // namespace hl
