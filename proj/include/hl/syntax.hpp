#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace hl {

// Intuitionistic language with strict implication. Negation and the box
// are abbreviations and never appear as nodes.
struct StoLanguage {
  enum class Op : std::uint8_t { Atom, Top, Bot, And, Or, Imp, Sto };
  static constexpr int arity(Op op) {
    switch (op) {
      case Op::Atom: case Op::Top: case Op::Bot: return 0;
      default: return 2;
    }
  }
};

// Classical bimodal language with boxes [i] and [m].
struct BiLanguage {
  enum class Op : std::uint8_t { Atom, Top, Bot, And, Or, Imp, Not, BoxI, BoxM };
  static constexpr int arity(Op op) {
    switch (op) {
      case Op::Atom: case Op::Top: case Op::Bot: return 0;
      case Op::Not: case Op::BoxI: case Op::BoxM: return 1;
      default: return 2;
    }
  }
};

template <class L>
concept Language = requires {
  typename L::Op;
  { L::arity(L::Op::Atom) } -> std::convertible_to<int>;
};

// Immutable, structurally compared formula tree with shared subterms.
template <Language Lang>
class BasicFormula {
 public:
  using Op = typename Lang::Op;
  using language = Lang;

  BasicFormula() : BasicFormula(top()) {}

  static BasicFormula atom(std::string name) { return make(Op::Atom, std::move(name), {}, {}); }
  static BasicFormula top() {
    static const BasicFormula t = make(Op::Top, {}, {}, {});
    return t;
  }
  static BasicFormula bot() {
    static const BasicFormula f = make(Op::Bot, {}, {}, {});
    return f;
  }
  static BasicFormula conj(BasicFormula a, BasicFormula b) { return make(Op::And, {}, a.node_, b.node_); }
  static BasicFormula disj(BasicFormula a, BasicFormula b) { return make(Op::Or, {}, a.node_, b.node_); }
  static BasicFormula imp(BasicFormula a, BasicFormula b) { return make(Op::Imp, {}, a.node_, b.node_); }

  static BasicFormula sto(BasicFormula a, BasicFormula b)
    requires std::same_as<Lang, StoLanguage>
  { return make(Op::Sto, {}, a.node_, b.node_); }
  static BasicFormula box(BasicFormula a)
    requires std::same_as<Lang, StoLanguage>
  { return sto(top(), std::move(a)); }

  static BasicFormula neg(BasicFormula a) {
    if constexpr (std::same_as<Lang, StoLanguage>)
      return imp(std::move(a), bot());
    else
      return make(Op::Not, {}, a.node_, {});
  }
  static BasicFormula boxI(BasicFormula a)
    requires std::same_as<Lang, BiLanguage>
  { return make(Op::BoxI, {}, a.node_, {}); }
  static BasicFormula boxM(BasicFormula a)
    requires std::same_as<Lang, BiLanguage>
  { return make(Op::BoxM, {}, a.node_, {}); }
  static BasicFormula diaI(BasicFormula a)
    requires std::same_as<Lang, BiLanguage>
  { return neg(boxI(neg(std::move(a)))); }
  static BasicFormula diaM(BasicFormula a)
    requires std::same_as<Lang, BiLanguage>
  { return neg(boxM(neg(std::move(a)))); }

  // Generic constructor from an operator and its children.
  static BasicFormula node(Op op, const std::vector<BasicFormula>& kids, std::string name = {}) {
    switch (Lang::arity(op)) {
      case 0:
        if (op == Op::Atom) return atom(std::move(name));
        return op == Op::Top ? top() : bot();
      case 1: return make(op, {}, kids.at(0).node_, {});
      default: return make(op, {}, kids.at(0).node_, kids.at(1).node_);
    }
  }

  Op op() const { return node_->op; }
  int arity() const { return Lang::arity(node_->op); }
  const std::string& name() const { return node_->name; }
  BasicFormula lhs() const { return BasicFormula(node_->kids[0]); }
  BasicFormula rhs() const { return BasicFormula(node_->kids[1]); }
  BasicFormula operand() const { return lhs(); }
  BasicFormula child(int i) const { return BasicFormula(node_->kids[static_cast<std::size_t>(i)]); }
  std::size_t hash() const noexcept { return node_->hash; }
  int size() const { return node_->size; }
  bool is(Op o) const { return node_->op == o; }

  friend bool operator==(const BasicFormula& a, const BasicFormula& b) { return equal(a.node_.get(), b.node_.get()); }

  // Total order used for canonical containers: by hash, then structure.
  friend bool operator<(const BasicFormula& a, const BasicFormula& b) { return compare(a.node_.get(), b.node_.get()) < 0; }

 private:
  struct Node {
    Op op;
    std::string name;
    std::array<std::shared_ptr<const Node>, 2> kids;
    std::size_t hash;
    int size;
  };

  explicit BasicFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static BasicFormula make(Op op, std::string name, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b) {
    std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x9e3779b97f4a7c15ULL;
    int size = 1;
    if (op == Op::Atom) h ^= std::hash<std::string>{}(name) + 0x632be59bd9b4e019ULL;
    for (const auto* k : {a.get(), b.get()}) {
      if (!k) continue;
      h = (h ^ k->hash) * 0x100000001b3ULL + (h << 6) + (h >> 2);
      size += k->size;
    }
    auto n = std::make_shared<const Node>(Node{op, std::move(name), {std::move(a), std::move(b)}, h, size});
    return BasicFormula(std::move(n));
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->op != b->op || a->size != b->size) return false;
    if (a->op == Op::Atom) return a->name == b->name;
    return equal(a->kids[0].get(), b->kids[0].get()) && equal(a->kids[1].get(), b->kids[1].get());
  }

  static int compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (a->op == Op::Atom) return a->name.compare(b->name);
    for (int i = 0; i < 2; ++i)
      if (int c = compare(a->kids[i].get(), b->kids[i].get())) return c;
    return 0;
  }

  std::shared_ptr<const Node> node_;
};

using Formula = BasicFormula<StoLanguage>;
using BiFormula = BasicFormula<BiLanguage>;

template <Language L>
struct FormulaHash {
  std::size_t operator()(const BasicFormula<L>& f) const noexcept { return f.hash(); }
};

// Post-order, first occurrence, structural duplicates removed.
template <Language L>
std::vector<BasicFormula<L>> subformulas(const BasicFormula<L>& phi) {
  std::vector<BasicFormula<L>> out;
  std::unordered_map<BasicFormula<L>, int, FormulaHash<L>> seen;
  std::function<void(const BasicFormula<L>&)> go = [&](const BasicFormula<L>& f) {
    if (seen.count(f)) return;
    for (int i = 0; i < f.arity(); ++i) go(f.child(i));
    if (seen.emplace(f, static_cast<int>(out.size())).second) out.push_back(f);
  };
  go(phi);
  return out;
}

// Sorted atom names.
template <Language L>
std::vector<std::string> atomsOf(const BasicFormula<L>& phi) {
  std::set<std::string> names;
  for (const auto& f : subformulas(phi))
    if (f.is(L::Op::Atom)) names.insert(f.name());
  return {names.begin(), names.end()};
}

template <Language L>
using Substitution = std::map<std::string, BasicFormula<L>>;

// Simultaneous substitution; atoms outside the map are kept.
template <Language L>
BasicFormula<L> substitute(const BasicFormula<L>& phi, const Substitution<L>& sigma) {
  using F = BasicFormula<L>;
  if (phi.is(L::Op::Atom)) {
    auto it = sigma.find(phi.name());
    return it == sigma.end() ? phi : it->second;
  }
  if (phi.arity() == 0) return phi;
  std::vector<F> kids;
  for (int i = 0; i < phi.arity(); ++i) kids.push_back(substitute(phi.child(i), sigma));
  return F::node(phi.op(), kids);
}

}  // namespace hl
