#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "hl/error.hpp"
#include "hl/syntax.hpp"

namespace hl {

namespace detail {

template <Language L>
class Parser {
 public:
  using F = BasicFormula<L>;
  static constexpr bool kSto = std::same_as<L, StoLanguage>;

  explicit Parser(std::string_view text) : s_(text) {}

  F parseAll() {
    F f = parseImp();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }
  [[noreturn]] void failAt(std::size_t at, const std::string& what) const { throw SyntaxError(at, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  // The strict-implication arrow is only legal in the intuitionistic language.
  bool acceptSto() {
    if (!peek("~>")) return false;
    if (!kSto) fail("'~>' is not part of the bimodal language");
    pos_ += 2;
    return true;
  }

  F parseImp() {
    F l = parseOr();
    if (accept("->")) return F::imp(l, parseImp());
    return l;
  }
  F parseOr() {
    F l = parseAnd();
    while (accept("|")) l = F::disj(l, parseAnd());
    return l;
  }
  F parseAnd() {
    F l = parseStoLevel();
    while (accept("&")) l = F::conj(l, parseStoLevel());
    return l;
  }
  F parseStoLevel() {
    F l = parseUnary();
    if constexpr (kSto) {
      if (acceptSto()) return F::sto(l, parseStoLevel());
    } else {
      if (peek("~>")) fail("'~>' is not part of the bimodal language");
    }
    return l;
  }
  F parseUnary() {
    skip();
    const std::size_t at = pos_;
    if (peek("~>")) fail("missing left operand of '~>'");
    if (accept("~")) return F::neg(parseUnary());
    if constexpr (kSto) {
      if (accept("[]")) return F::box(parseUnary());
      if (peek("[i]") || peek("[m]") || peek("<i>") || peek("<m>"))
        failAt(at, "bimodal operator in the intuitionistic language");
    } else {
      if (accept("[i]")) return F::boxI(parseUnary());
      if (accept("[m]")) return F::boxM(parseUnary());
      if (accept("<i>")) return F::diaI(parseUnary());
      if (accept("<m>")) return F::diaM(parseUnary());
      if (peek("[]")) failAt(at, "'[]' is not part of the bimodal language");
    }
    return parseAtomic();
  }
  F parseAtomic() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept("(")) {
      F f = parseImp();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    const char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_' || s_[end] == '\''))
        ++end;
      std::string id(s_.substr(pos_, end - pos_));
      pos_ = end;
      if (id == "T") return F::top();
      if (id == "F") return F::bot();
      return F::atom(std::move(id));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parseSto(std::string_view text) { return detail::Parser<StoLanguage>(text).parseAll(); }
inline BiFormula parseBi(std::string_view text) { return detail::Parser<BiLanguage>(text).parseAll(); }

template <Language L>
BasicFormula<L> parse(std::string_view text) { return detail::Parser<L>(text).parseAll(); }

}  // namespace hl
