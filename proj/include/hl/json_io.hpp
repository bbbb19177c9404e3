#pragma once

// JSON formats for frames, models, algebras and formulas (nlohmann/json).

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hl/algebra.hpp"
#include "hl/error.hpp"
#include "hl/frames.hpp"
#include "hl/print.hpp"
#include "hl/semantics.hpp"

namespace hl::io {

using json = nlohmann::ordered_json;

struct RawModel {
  RawFrame frame;
  Valuation valuation;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string asString(const json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a string");
  return j.get<std::string>();
}

class Names {
 public:
  explicit Names(const std::vector<std::string>& worlds) : worlds_(worlds) {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (!index_.emplace(worlds[i], static_cast<int>(i)).second)
        throw Error(ErrorKind::InvalidInput, "duplicate world '" + worlds[i] + "'");
  }
  int at(const json& j) const {
    const std::string s = asString(j, "world reference");
    auto it = index_.find(s);
    if (it == index_.end()) throw Error(ErrorKind::InvalidInput, "unknown world '" + s + "'");
    return it->second;
  }
  WorldSet set(const json& j) const {
    if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "world set must be an array");
    WorldSet s;
    for (const auto& w : j) s.insert(at(w));
    return s;
  }
  json setJson(WorldSet s) const {
    json a = json::array();
    for (int x : s) a.push_back(worlds_[static_cast<std::size_t>(x)]);
    return a;
  }

 private:
  const std::vector<std::string>& worlds_;
  std::map<std::string, int> index_;
};

inline std::vector<std::pair<int, int>> pairs(const json& j, const Names& names) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "relation must be an array of pairs");
  std::vector<std::pair<int, int>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::InvalidInput, "relation entries must be pairs");
    out.emplace_back(names.at(p[0]), names.at(p[1]));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frames

inline RawFrame rawFrameFromJson(const json& j) {
  RawFrame r;
  const std::string kind = detail::asString(detail::field(j, "kind"), "kind");
  if (kind == "sto") r.kind = FrameKind::Sto;
  else if (kind == "s4k") r.kind = FrameKind::S4K;
  else throw Error(ErrorKind::InvalidInput, "kind must be \"sto\" or \"s4k\"");
  const json& ws = detail::field(j, "worlds");
  if (!ws.is_array() || ws.empty()) throw Error(ErrorKind::InvalidInput, "worlds must be a non-empty array");
  for (const auto& w : ws) r.worlds.push_back(detail::asString(w, "world name"));
  if (r.worlds.size() > 20) throw Error(ErrorKind::BoundTooLarge, "frames are limited to 20 worlds");
  const detail::Names names(r.worlds);
  r.rel1 = detail::pairs(detail::field(j, "rel1"), names);
  r.rel2 = detail::pairs(detail::field(j, "rel2"), names);
  if (j.contains("admissible")) {
    const json& a = j.at("admissible");
    if (!a.is_array()) throw Error(ErrorKind::InvalidInput, "admissible must be an array of world lists");
    std::vector<WorldSet> sets;
    for (const auto& s : a) sets.push_back(names.set(s));
    r.admissible = std::move(sets);
  }
  return r;
}

inline json toJson(const RawFrame& r) {
  const detail::Names names(r.worlds);
  json j;
  j["kind"] = r.kind == FrameKind::Sto ? "sto" : "s4k";
  j["worlds"] = r.worlds;
  for (const auto& [key, rel] : {std::pair{"rel1", &r.rel1}, std::pair{"rel2", &r.rel2}}) {
    json a = json::array();
    for (auto [x, y] : *rel) a.push_back(json::array({r.worlds[x], r.worlds[y]}));
    j[key] = std::move(a);
  }
  if (r.admissible) {
    json a = json::array();
    for (auto s : *r.admissible) a.push_back(names.setJson(s));
    j["admissible"] = std::move(a);
  }
  return j;
}

inline RawFrame toRaw(const StoFrame& f) {
  return {FrameKind::Sto, f.worlds(), f.preceq().pairs(), f.sqsubset().pairs(), std::nullopt};
}
inline RawFrame toRaw(const S4KFrame& f) { return {FrameKind::S4K, f.worlds(), f.ri().pairs(), f.rm().pairs(), std::nullopt}; }
inline RawFrame toRaw(const GeneralStoFrame& g) {
  RawFrame r = toRaw(g.frame());
  r.admissible = g.admissible();
  return r;
}
inline RawFrame toRaw(const GeneralS4KFrame& g) {
  RawFrame r = toRaw(g.frame());
  r.admissible = g.admissible();
  return r;
}
inline RawFrame toRaw(const AnyFrame& f) {
  return std::visit([](const auto& x) { return toRaw(x); }, f);
}

template <class F>
json frameToJson(const F& f) { return toJson(toRaw(f)); }

// ---------------------------------------------------------------------------
// Models

inline RawModel rawModelFromJson(const json& j) {
  RawModel m{rawFrameFromJson(j), {}};
  if (j.contains("valuation")) {
    const json& v = j.at("valuation");
    if (!v.is_object()) throw Error(ErrorKind::InvalidInput, "valuation must be an object");
    const detail::Names names(m.frame.worlds);
    for (const auto& [atom, set] : v.items()) m.valuation[atom] = names.set(set);
  }
  return m;
}

inline json toJson(const RawModel& m) {
  json j = toJson(m.frame);
  const detail::Names names(m.frame.worlds);
  json v = json::object();
  for (const auto& [atom, set] : m.valuation) v[atom] = names.setJson(set);
  j["valuation"] = std::move(v);
  return j;
}

inline RawModel toRaw(const StoModel& m) {
  RawModel r{toRaw(m.frame()), m.valuation()};
  r.frame.admissible = m.admissible();
  return r;
}
inline RawModel toRaw(const BiModel& m) {
  RawModel r{toRaw(m.frame()), m.valuation()};
  r.frame.admissible = m.admissible();
  return r;
}
template <class M>
json modelToJson(const M& m) { return toJson(toRaw(m)); }

// ---------------------------------------------------------------------------
// Algebras

inline RawAlgebra rawAlgebraFromJson(const json& j) {
  RawAlgebra a;
  const json& es = detail::field(j, "elements");
  if (!es.is_array()) throw Error(ErrorKind::InvalidInput, "elements must be an array");
  for (const auto& e : es) a.elements.push_back(detail::asString(e, "element"));
  for (const auto& p : detail::field(j, "leq")) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::InvalidInput, "leq entries must be pairs");
    a.leq.emplace_back(detail::asString(p[0], "element"), detail::asString(p[1], "element"));
  }
  for (const auto& t : detail::field(j, "sto")) {
    if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::InvalidInput, "sto entries must be triples");
    a.sto.emplace_back(detail::asString(t[0], "element"), detail::asString(t[1], "element"),
                       detail::asString(t[2], "element"));
  }
  return a;
}

inline json toJson(const RawAlgebra& a) {
  json j;
  j["elements"] = a.elements;
  json leq = json::array(), sto = json::array();
  for (const auto& [x, y] : a.leq) leq.push_back(json::array({x, y}));
  for (const auto& [x, y, z] : a.sto) sto.push_back(json::array({x, y, z}));
  j["leq"] = std::move(leq);
  j["sto"] = std::move(sto);
  return j;
}

inline json algebraToJson(const HLAlgebra& a) { return toJson(toRaw(a.tables())); }

// ---------------------------------------------------------------------------
// Formulas

template <Language L>
json formulaToJson(const BasicFormula<L>& f) {
  using Op = typename L::Op;
  static const std::map<Op, const char*> names = [] {
    std::map<Op, const char*> m{{Op::Atom, "atom"}, {Op::Top, "top"}, {Op::Bot, "bot"},
                                {Op::And, "and"},   {Op::Or, "or"},   {Op::Imp, "imp"}};
    if constexpr (std::same_as<L, StoLanguage>) {
      m[Op::Sto] = "sto";
    } else {
      m[Op::Not] = "not";
      m[Op::BoxI] = "box_i";
      m[Op::BoxM] = "box_m";
    }
    return m;
  }();
  json j;
  j["op"] = names.at(f.op());
  if (f.is(Op::Atom)) j["name"] = f.name();
  if (f.arity() > 0) {
    json args = json::array();
    for (int i = 0; i < f.arity(); ++i) args.push_back(formulaToJson(f.child(i)));
    j["args"] = std::move(args);
  }
  return j;
}

inline std::string worldList(const std::vector<std::string>& worlds, WorldSet s) { return setToString(worlds, s); }

inline json setJson(const std::vector<std::string>& worlds, WorldSet s) {
  json a = json::array();
  for (int x : s) a.push_back(worlds[static_cast<std::size_t>(x)]);
  return a;
}

inline json valuationJson(const std::vector<std::string>& worlds, const Valuation& v) {
  json j = json::object();
  for (const auto& [atom, s] : v) j[atom] = setJson(worlds, s);
  return j;
}

}  // namespace hl::io
