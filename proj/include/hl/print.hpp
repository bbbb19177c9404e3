#pragma once

#include <ostream>
#include <string>

#include "hl/syntax.hpp"

namespace hl {

namespace detail {

enum Prec : int { kImp = 1, kOr = 2, kAnd = 3, kSto = 4, kUnary = 5, kAtomic = 6 };

struct Shape {
  int prec;
  const char* token;  // infix or prefix token
  bool rightAssoc;
  int children;       // how many of the (displayed) operands follow
};

// Display shape of a node. Imp(x,F) and Sto(T,x) show as ~x and []x.
inline Shape shapeOf(const Formula& f) {
  using Op = StoLanguage::Op;
  switch (f.op()) {
    case Op::Atom: case Op::Top: case Op::Bot: return {kAtomic, "", false, 0};
    case Op::And: return {kAnd, " & ", false, 2};
    case Op::Or: return {kOr, " | ", false, 2};
    case Op::Imp:
      if (f.rhs().is(Op::Bot)) return {kUnary, "~", false, 1};
      return {kImp, " -> ", true, 2};
    case Op::Sto:
      if (f.lhs().is(Op::Top)) return {kUnary, "[]", false, 1};
      return {kSto, " ~> ", true, 2};
  }
  return {kAtomic, "", false, 0};
}

inline Shape shapeOf(const BiFormula& f) {
  using Op = BiLanguage::Op;
  switch (f.op()) {
    case Op::Atom: case Op::Top: case Op::Bot: return {kAtomic, "", false, 0};
    case Op::And: return {kAnd, " & ", false, 2};
    case Op::Or: return {kOr, " | ", false, 2};
    case Op::Imp: return {kImp, " -> ", true, 2};
    case Op::Not: return {kUnary, "~", false, 1};
    case Op::BoxI: return {kUnary, "[i]", false, 1};
    case Op::BoxM: return {kUnary, "[m]", false, 1};
  }
  return {kAtomic, "", false, 0};
}

// Operand shown under a unary display form.
inline Formula unaryOperand(const Formula& f) { return f.is(StoLanguage::Op::Imp) ? f.lhs() : f.rhs(); }
inline BiFormula unaryOperand(const BiFormula& f) { return f.operand(); }

template <Language L>
void render(const BasicFormula<L>& f, std::string& out) {
  const Shape s = shapeOf(f);
  auto wrapped = [&](const BasicFormula<L>& c, bool parens) {
    if (parens) out += '(';
    render(c, out);
    if (parens) out += ')';
  };
  if (s.children == 0) {
    if (f.is(L::Op::Atom)) out += f.name();
    else out += f.is(L::Op::Top) ? "T" : "F";
    return;
  }
  if (s.children == 1) {
    out += s.token;
    const auto c = unaryOperand(f);
    wrapped(c, shapeOf(c).prec < kUnary);
    return;
  }
  const auto l = f.lhs();
  const auto r = f.rhs();
  const int lp = shapeOf(l).prec;
  const int rp = shapeOf(r).prec;
  wrapped(l, lp < s.prec || (lp == s.prec && s.rightAssoc));
  out += s.token;
  wrapped(r, rp < s.prec || (rp == s.prec && !s.rightAssoc));
}

}  // namespace detail

// Minimal-parenthesis rendering that the parser reads back to the same tree.
template <Language L>
std::string toString(const BasicFormula<L>& f) {
  std::string out;
  detail::render(f, out);
  return out;
}

template <Language L>
std::ostream& operator<<(std::ostream& os, const BasicFormula<L>& f) {
  return os << toString(f);
}

}  // namespace hl
