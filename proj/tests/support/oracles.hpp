#pragma once

// Brute-force reference implementations. Nothing here uses the library's
// relation, set or evaluation code, so agreement is meaningful.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hl/syntax.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Formula trees

struct Node {
  std::string op;  // atom top bot and or imp sto not boxi boxm
  std::string name;
  std::vector<Node> kids;
  friend bool operator==(const Node&, const Node&) = default;
};

inline Node leaf(std::string op, std::string name = "") { return {std::move(op), std::move(name), {}}; }
inline Node un(std::string op, Node a) { return {std::move(op), "", {std::move(a)}}; }
inline Node bin(std::string op, Node a, Node b) { return {std::move(op), "", {std::move(a), std::move(b)}}; }

template <hl::Language L>
Node fromLibrary(const hl::BasicFormula<L>& f) {
  using Op = typename L::Op;
  Node n;
  switch (f.op()) {
    case Op::Atom: return leaf("atom", f.name());
    case Op::Top: return leaf("top");
    case Op::Bot: return leaf("bot");
    case Op::And: n.op = "and"; break;
    case Op::Or: n.op = "or"; break;
    case Op::Imp: n.op = "imp"; break;
    default: break;
  }
  if constexpr (std::same_as<L, hl::StoLanguage>) {
    if (f.op() == Op::Sto) n.op = "sto";
  } else {
    if (f.op() == Op::Not) n.op = "not";
    if (f.op() == Op::BoxI) n.op = "boxi";
    if (f.op() == Op::BoxM) n.op = "boxm";
  }
  for (int i = 0; i < f.arity(); ++i) n.kids.push_back(fromLibrary(f.child(i)));
  return n;
}

// Reference recursive-descent parser written against the grammar directly.
class RefParser {
 public:
  RefParser(std::string text, bool bi) : s_(std::move(text)), bi_(bi) {}

  Node parse() {
    Node n = imp();
    skip();
    if (i_ != s_.size()) throw std::runtime_error("trailing input");
    return n;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) == 0) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  Node imp() {
    Node l = disj();
    if (eat("->")) return bin("imp", l, imp());
    return l;
  }
  Node disj() {
    Node l = conj();
    while (eat("|")) l = bin("or", l, conj());
    return l;
  }
  Node conj() {
    Node l = sto();
    while (eat("&")) l = bin("and", l, sto());
    return l;
  }
  Node sto() {
    Node l = unary();
    if (!bi_ && eat("~>")) return bin("sto", l, sto());
    return l;
  }
  Node unary() {
    skip();
    // "~>" is binary, so a lone "~" must not be followed by '>'.
    if (s_.compare(i_, 1, "~") == 0 && s_.compare(i_, 2, "~>") != 0) {
      ++i_;
      Node a = unary();
      return bi_ ? un("not", a) : bin("imp", a, leaf("bot"));
    }
    if (!bi_ && eat("[]")) return bin("sto", leaf("top"), unary());
    if (bi_ && eat("[i]")) return un("boxi", unary());
    if (bi_ && eat("[m]")) return un("boxm", unary());
    if (bi_ && eat("<i>")) return un("not", un("boxi", un("not", unary())));
    if (bi_ && eat("<m>")) return un("not", un("boxm", un("not", unary())));
    if (eat("(")) {
      Node n = imp();
      if (!eat(")")) throw std::runtime_error("missing )");
      return n;
    }
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
      ++i_;
    if (b == i_) throw std::runtime_error("expected atom");
    std::string id = s_.substr(b, i_ - b);
    if (id == "T") return leaf("top");
    if (id == "F") return leaf("bot");
    return leaf("atom", id);
  }

  std::string s_;
  bool bi_;
  std::size_t i_ = 0;
};

// Every binary node and every unary node fully parenthesised.
inline std::string printFull(const Node& n) {
  if (n.op == "atom") return n.name;
  if (n.op == "top") return "T";
  if (n.op == "bot") return "F";
  if (n.op == "not") return "(~" + printFull(n.kids[0]) + ")";
  if (n.op == "boxi") return "([i]" + printFull(n.kids[0]) + ")";
  if (n.op == "boxm") return "([m]" + printFull(n.kids[0]) + ")";
  static const std::map<std::string, std::string> sym{{"and", "&"}, {"or", "|"}, {"imp", "->"}, {"sto", "~>"}};
  return "(" + printFull(n.kids[0]) + " " + sym.at(n.op) + " " + printFull(n.kids[1]) + ")";
}

inline std::set<std::string> atoms(const Node& n) {
  std::set<std::string> out;
  std::function<void(const Node&)> go = [&](const Node& m) {
    if (m.op == "atom") out.insert(m.name);
    for (const auto& k : m.kids) go(k);
  };
  go(n);
  return out;
}

// ---------------------------------------------------------------------------
// Relations as boolean matrices

using Rel = std::vector<std::vector<bool>>;
using Set = std::vector<bool>;

inline Rel emptyRel(int n) { return Rel(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false)); }

inline Rel relFromBits(int n, std::uint64_t bits) {
  Rel r = emptyRel(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) r[x][y] = (bits >> (x * n + y)) & 1;
  return r;
}

inline bool reflexive(const Rel& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    if (!r[x][x]) return false;
  return true;
}
inline bool transitive(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (r[x][y] && r[y][z] && !r[x][z]) return false;
  return true;
}
inline bool antisymmetric(const Rel& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && r[x][y] && r[y][x]) return false;
  return true;
}
// a;b within c
inline bool composesInto(const Rel& a, const Rel& b, const Rel& c) {
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (a[x][y] && b[y][z] && !c[x][z]) return false;
  return true;
}
inline bool subset(const Rel& a, const Rel& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (a[x][y] && !b[x][y]) return false;
  return true;
}

inline Set setFromBits(int n, std::uint64_t bits) {
  Set s(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) s[x] = (bits >> x) & 1;
  return s;
}
inline std::uint64_t bitsOf(const Set& s) {
  std::uint64_t b = 0;
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s[x]) b |= std::uint64_t{1} << x;
  return b;
}

inline bool upClosed(const Rel& r, const Set& s) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      if (s[x] && r[x][y] && !s[y]) return false;
  return true;
}

// Up-closed sets in ascending bit order.
inline std::vector<Set> upsets(const Rel& r) {
  const int n = static_cast<int>(r.size());
  std::vector<Set> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
    if (upClosed(r, setFromBits(n, b))) out.push_back(setFromBits(n, b));
  return out;
}
inline std::vector<Set> allSets(int n) {
  std::vector<Set> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.push_back(setFromBits(n, b));
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise forcing

struct Model {
  int n = 0;
  Rel r1, r2;  // preceq / R_i and sqsubset / R_m
  std::map<std::string, Set> val;
};

// Intuitionistic clauses for imp when `classical` is false, classical ones
// otherwise.
inline bool forces(const Model& m, int w, const Node& f, bool classical) {
  if (f.op == "atom") {
    auto it = m.val.find(f.name);
    return it != m.val.end() && it->second[w];
  }
  if (f.op == "top") return true;
  if (f.op == "bot") return false;
  auto at = [&](int v, int k) { return forces(m, v, f.kids[k], classical); };
  if (f.op == "and") return at(w, 0) && at(w, 1);
  if (f.op == "or") return at(w, 0) || at(w, 1);
  if (f.op == "not") return !at(w, 0);
  auto all = [&](const Rel& r, auto&& cond) {
    for (int v = 0; v < m.n; ++v)
      if (r[w][v] && !cond(v)) return false;
    return true;
  };
  if (f.op == "boxi") return all(m.r1, [&](int v) { return at(v, 0); });
  if (f.op == "boxm") return all(m.r2, [&](int v) { return at(v, 0); });
  auto arrow = [&](int v) { return !at(v, 0) || at(v, 1); };
  if (f.op == "sto") return all(m.r2, arrow);
  if (f.op == "imp") return classical ? arrow(w) : all(m.r1, arrow);
  throw std::logic_error("unknown op " + f.op);
}

inline Set truthSet(const Model& m, const Node& f, bool classical) {
  Set s(static_cast<std::size_t>(m.n));
  for (int w = 0; w < m.n; ++w) s[w] = forces(m, w, f, classical);
  return s;
}

struct Validity {
  bool valid = true;
  std::map<std::string, Set> valuation;
  int world = -1;
};

// First refuting valuation with the alphabetically first atom most
// significant and candidate sets in ascending bit order.
inline Validity frameValid(int n, const Rel& r1, const Rel& r2, const Node& f, const std::vector<Set>& candidates,
                           bool classical) {
  const auto atomSet = atoms(f);
  const std::vector<std::string> as(atomSet.begin(), atomSet.end());
  const std::size_t k = as.size();
  std::vector<std::size_t> idx(k, 0);
  Model m{n, r1, r2, {}};
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) m.val[as[i]] = candidates[idx[i]];
    const Set t = truthSet(m, f, classical);
    for (int w = 0; w < n; ++w)
      if (!t[w]) return {false, m.val, w};
    std::size_t i = k;
    while (i > 0 && ++idx[i - 1] == candidates.size()) idx[--i] = 0;
    if (i == 0) return {};
  }
}

// ---------------------------------------------------------------------------
// Frame enumeration by generate-and-test

struct Pair {
  Rel r1, r2;
  friend bool operator<(const Pair& a, const Pair& b) { return std::tie(a.r1, a.r2) < std::tie(b.r1, b.r2); }
  friend bool operator==(const Pair&, const Pair&) = default;
};

inline bool isStoFrame(const Rel& le, const Rel& sq) {
  return reflexive(le) && transitive(le) && antisymmetric(le) && composesInto(le, sq, sq);
}
inline bool isS4KFrame(const Rel& ri) { return reflexive(ri) && transitive(ri); }

template <class Keep>
std::set<Pair> allPairs(int n, Keep&& keep) {
  std::set<Pair> out;
  const std::uint64_t lim = std::uint64_t{1} << (n * n);
  for (std::uint64_t a = 0; a < lim; ++a) {
    Rel r1 = relFromBits(n, a);
    if (!reflexive(r1) || !transitive(r1)) continue;
    for (std::uint64_t b = 0; b < lim; ++b) {
      Rel r2 = relFromBits(n, b);
      if (keep(r1, r2)) out.insert({r1, std::move(r2)});
    }
  }
  return out;
}

// Lexicographically least encoding over all relabellings.
inline std::vector<bool> canonical(const Pair& p) {
  const int n = static_cast<int>(p.r1.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<bool>> best;
  do {
    std::vector<bool> code;
    for (const Rel* r : {&p.r1, &p.r2})
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) code.push_back((*r)[perm[x]][perm[y]]);
    if (!best || code < *best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

// ---------------------------------------------------------------------------
// Finite lattices given by an order matrix

struct Lattice {
  int n = 0;
  Rel le;
  int meet(int a, int b) const { return bound(a, b, true); }
  int join(int a, int b) const { return bound(a, b, false); }
  int top() const {
    for (int a = 0; a < n; ++a) {
      bool ok = true;
      for (int b = 0; b < n; ++b) ok = ok && le[b][a];
      if (ok) return a;
    }
    return -1;
  }
  int bottom() const {
    for (int a = 0; a < n; ++a) {
      bool ok = true;
      for (int b = 0; b < n; ++b) ok = ok && le[a][b];
      if (ok) return a;
    }
    return -1;
  }

 private:
  // Greatest lower / least upper bound by scanning all elements.
  int bound(int a, int b, bool lower) const {
    for (int c = 0; c < n; ++c) {
      const bool isBound = lower ? le[c][a] && le[c][b] : le[a][c] && le[b][c];
      if (!isBound) continue;
      bool best = true;
      for (int d = 0; d < n; ++d) {
        const bool other = lower ? le[d][a] && le[d][b] : le[a][d] && le[b][d];
        if (other && !(lower ? le[d][c] : le[c][d])) best = false;
      }
      if (best) return c;
    }
    return -1;
  }
};

inline std::vector<std::uint64_t> primeFilters(const Lattice& l) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 1; b + 1 < (std::uint64_t{1} << l.n); ++b) {
    auto in = [&](int a) { return ((b >> a) & 1) != 0; };
    bool ok = true;
    for (int a = 0; a < l.n && ok; ++a)
      for (int c = 0; c < l.n && ok; ++c) {
        if (in(a) && l.le[a][c] && !in(c)) ok = false;
        if (in(a) && in(c) && !in(l.meet(a, c))) ok = false;
        if (in(l.join(a, c)) && !in(a) && !in(c)) ok = false;
      }
    if (ok) out.push_back(b);
  }
  return out;
}

// Elements that are not bottom and not the join of two strictly smaller ones.
inline int joinIrreducibles(const Lattice& l) {
  int count = 0;
  for (int a = 0; a < l.n; ++a) {
    if (a == l.bottom()) continue;
    bool reducible = false;
    for (int b = 0; b < l.n; ++b)
      for (int c = 0; c < l.n; ++c)
        if (b != a && c != a && l.join(b, c) == a) reducible = true;
    if (!reducible) ++count;
  }
  return count;
}

inline int heytingImp(const Lattice& l, int a, int b) {
  int best = -1;
  for (int c = 0; c < l.n; ++c)
    if (l.le[l.meet(a, c)][b] && (best < 0 || l.le[best][c])) best = c;
  return best;
}

// C1-C4 on a full table.
inline bool strictLaws(const Lattice& l, const std::vector<std::vector<int>>& s) {
  const int t = l.top();
  for (int a = 0; a < l.n; ++a) {
    if (s[a][a] != t) return false;
    for (int b = 0; b < l.n; ++b)
      for (int c = 0; c < l.n; ++c) {
        if (l.meet(s[a][b], s[a][c]) != s[a][l.meet(b, c)]) return false;
        if (l.meet(s[a][c], s[b][c]) != s[l.join(a, b)][c]) return false;
        if (!l.le[l.meet(s[a][b], s[b][c])][s[a][c]]) return false;
      }
  }
  return true;
}

// Number of strict implications on l by trying every table.
inline std::uint64_t countStrictTables(const Lattice& l) {
  const int cells = l.n * l.n;
  std::uint64_t total = 1, count = 0;
  for (int i = 0; i < cells; ++i) total *= static_cast<std::uint64_t>(l.n);
  std::vector<std::vector<int>> s(static_cast<std::size_t>(l.n), std::vector<int>(static_cast<std::size_t>(l.n)));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int a = 0; a < l.n; ++a)
      for (int b = 0; b < l.n; ++b) {
        s[a][b] = static_cast<int>(c % static_cast<std::uint64_t>(l.n));
        c /= static_cast<std::uint64_t>(l.n);
      }
    if (strictLaws(l, s)) ++count;
  }
  return count;
}

// Relations R on the prime-filter poset with (subset);R within R.
inline std::uint64_t countCoherentOnDual(const Lattice& l) {
  const auto pf = primeFilters(l);
  const int k = static_cast<int>(pf.size());
  Rel order = emptyRel(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) order[i][j] = (pf[i] & ~pf[j]) == 0;
  std::uint64_t count = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << (k * k)); ++b)
    if (composesInto(order, relFromBits(k, b), relFromBits(k, b))) ++count;
  return count;
}

}  // namespace oracle
