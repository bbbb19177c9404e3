#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hl/hl.hpp"

namespace {

using hl::io::json;

enum Exit { kOk = 0, kRefuted = 1, kUsage = 2 };

struct Common {
  bool json = false;
  int jobs = 1;
  int maxAtoms = hl::kDefaultMaxAtoms;
  std::string lang;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hl::Error(hl::ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json readJson(const std::string& path) {
  try {
    return json::parse(readFile(path));
  } catch (const json::parse_error& e) {
    throw hl::Error(hl::ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Frame file loaded into the matching validated structure.
struct Loaded {
  hl::RawFrame raw;
  std::optional<hl::GeneralStoFrame> sto;
  std::optional<hl::GeneralS4KFrame> s4k;
  bool general = false;
};

Loaded loadFrame(const hl::RawFrame& raw, bool close) {
  Loaded l{raw, std::nullopt, std::nullopt, raw.admissible.has_value()};
  if (raw.kind == hl::FrameKind::Sto) {
    auto f = close ? hl::stoClosure(raw) : hl::validateSto(raw);
    l.sto = raw.admissible ? hl::GeneralStoFrame::validate(f, *raw.admissible) : hl::GeneralStoFrame::full(f);
  } else {
    if (close) throw hl::Error(hl::ErrorKind::KindMismatch, "--close applies to sto frames only");
    auto f = hl::validateS4K(raw);
    l.s4k = raw.admissible ? hl::GeneralS4KFrame::validate(f, *raw.admissible) : hl::GeneralS4KFrame::full(f);
  }
  return l;
}

bool wantsBi(const Common& c, hl::FrameKind kind) {
  if (c.lang.empty()) return kind == hl::FrameKind::S4K;
  return c.lang == "bi";
}

void requireLang(const Common& c, hl::FrameKind kind) {
  if (wantsBi(c, kind) != (kind == hl::FrameKind::S4K))
    throw hl::Error(hl::ErrorKind::KindMismatch, "formula language does not match the frame kind");
}

json validityJson(const std::vector<std::string>& worlds, const hl::ValidityResult& r) {
  json j;
  j["valid"] = r.valid;
  if (!r.valid) {
    j["world"] = worlds[static_cast<std::size_t>(r.world)];
    j["valuation"] = hl::io::valuationJson(worlds, r.counterValuation);
  }
  return j;
}

int reportValidity(const Common& c, const std::vector<std::string>& worlds, const hl::ValidityResult& r) {
  if (c.json) {
    emit(validityJson(worlds, r));
  } else if (r.valid) {
    std::cout << "valid\n";
  } else {
    std::cout << "refuted at " << worlds[static_cast<std::size_t>(r.world)] << "\n";
    std::cout << "countervaluation: " << hl::valuationToString(worlds, r.counterValuation) << "\n";
  }
  return r.valid ? kOk : kRefuted;
}

std::string formulaText(const hl::AnyFormula& f) {
  return std::visit([](const auto& x) { return hl::toString(x); }, f);
}

// ---------------------------------------------------------------------------

int cmdParse(const Common& c, const std::string& text) {
  const auto f = hl::resolveAny(text, c.lang == "bi");
  if (c.json)
    emit(std::visit([](const auto& x) { return json(hl::io::formulaToJson(x)); }, f));
  else
    std::cout << formulaText(f) << "\n";
  return kOk;
}

int cmdEval(const Common& c, const std::string& modelPath, const std::string& text) {
  const auto raw = hl::io::rawModelFromJson(readJson(modelPath));
  const auto l = loadFrame(raw.frame, false);
  requireLang(c, raw.frame.kind);
  hl::WorldSet set;
  if (l.sto) {
    const hl::StoModel m = l.general ? hl::StoModel(*l.sto, raw.valuation) : hl::StoModel(l.sto->frame(), raw.valuation);
    set = hl::truthSet(m, hl::resolveFormula(text));
  } else {
    const hl::BiModel m = l.general ? hl::BiModel(*l.s4k, raw.valuation) : hl::BiModel(l.s4k->frame(), raw.valuation);
    set = hl::truthSetBi(m, hl::resolveBiFormula(text));
  }
  if (c.json) {
    json j;
    j["truth_set"] = hl::io::setJson(raw.frame.worlds, set);
    emit(j);
  } else {
    std::cout << hl::setToString(raw.frame.worlds, set) << "\n";
  }
  return kOk;
}

int cmdValid(const Common& c, const std::string& framePath, const std::string& text, bool close) {
  const auto l = loadFrame(hl::io::rawFrameFromJson(readJson(framePath)), close);
  requireLang(c, l.raw.kind);
  const hl::ValidityOptions opt{c.maxAtoms};
  if (l.sto) return reportValidity(c, l.sto->frame().worlds(), hl::frameValid(*l.sto, hl::resolveFormula(text), opt));
  return reportValidity(c, l.s4k->frame().worlds(), hl::frameValidBi(*l.s4k, hl::resolveBiFormula(text), opt));
}

int cmdTranslate(const Common& c, const std::string& text) {
  const auto t = hl::gmt(hl::resolveFormula(text));
  if (c.json)
    emit(hl::io::formulaToJson(t));
  else
    std::cout << hl::toString(t) << "\n";
  return kOk;
}

int cmdRho(const Common& c, const std::string& framePath) {
  const auto l = loadFrame(hl::io::rawFrameFromJson(readJson(framePath)), false);
  if (!l.s4k) throw hl::Error(hl::ErrorKind::KindMismatch, "rho expects an s4k frame");
  const auto g = hl::rhoHat(*l.s4k);
  auto raw = hl::io::toRaw(g);
  if (!l.general) raw.admissible.reset();
  emit(hl::io::toJson(raw));
  (void)c;
  return kOk;
}

int cmdSigma(const Common& c, const std::string& framePath, bool close) {
  const auto l = loadFrame(hl::io::rawFrameFromJson(readJson(framePath)), close);
  if (!l.sto) throw hl::Error(hl::ErrorKind::KindMismatch, "sigma expects a sto frame");
  emit(hl::io::frameToJson(hl::sigmaHat(*l.sto)));
  (void)c;
  return kOk;
}

int printReport(const Common& c, const std::string& what, const hl::CheckReport& r) {
  if (c.json) {
    json j;
    j["check"] = what;
    j["ok"] = r.ok;
    j["failures"] = r.failures;
    emit(j);
  } else {
    std::cout << what << ": " << (r.ok ? "ok" : "FAILED") << "\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
  }
  return r.ok ? kOk : kRefuted;
}

int cmdRoundtrip(const Common& c, const std::string& framePath, const std::string& algebraPath, bool close) {
  if (framePath.empty() == algebraPath.empty())
    throw hl::Error(hl::ErrorKind::InvalidInput, "roundtrip needs exactly one of --frame or --algebra");
  if (!algebraPath.empty())
    return printReport(c, "algebra round trip",
                       hl::roundTripAlgebra(hl::validateAlgebra(hl::io::rawAlgebraFromJson(readJson(algebraPath)))));
  const auto l = loadFrame(hl::io::rawFrameFromJson(readJson(framePath)), close);
  if (!l.sto) throw hl::Error(hl::ErrorKind::KindMismatch, "roundtrip expects a sto frame");
  hl::CheckReport all = hl::rhoSigmaIdentity(*l.sto);
  for (auto& f : all.failures) f = "rho(sigma(G)): " + f;
  const auto dual = hl::roundTripFrame(*l.sto);
  for (const auto& f : dual.failures) all.fail("frame duality: " + f);
  return printReport(c, "frame round trip", all);
}

int cmdDecide(const Common& c, const std::string& axiomsPath, const std::string& goal, int maxSize) {
  const auto gamma = axiomsPath.empty() ? std::vector<hl::Formula>{} : hl::parseAxiomList(readFile(axiomsPath));
  hl::SearchOptions opt;
  opt.jobs = c.jobs;
  opt.validity.maxAtoms = c.maxAtoms;
  const auto r = hl::countermodelSearch(gamma, hl::resolveFormula(goal), maxSize, opt);
  if (const auto* hit = std::get_if<hl::Refuted<hl::StoModel>>(&r)) {
    if (c.json) {
      json j;
      j["result"] = "refuted";
      j["size"] = hit->size;
      j["world"] = hit->model.frame().name(hit->world);
      j["model"] = hl::io::modelToJson(hit->model);
      emit(j);
    } else {
      std::cout << "refuted on " << hit->size << " worlds at " << hit->model.frame().name(hit->world) << "\n";
      std::cout << hl::io::modelToJson(hit->model).dump(2) << "\n";
    }
    return kRefuted;
  }
  if (c.json) {
    json j;
    j["result"] = "no countermodel";
    j["max_size"] = maxSize;
    emit(j);
  } else {
    std::cout << "no countermodel up to size " << maxSize << "\n";
  }
  return kOk;
}

template <class M>
json outcomeJson(const hl::SearchOutcome<M>& r) {
  json j;
  if (const auto* hit = std::get_if<hl::Refuted<M>>(&r)) {
    j["refuted"] = true;
    j["size"] = hit->size;
    j["model"] = hl::io::modelToJson(hit->model);
  } else {
    j["refuted"] = false;
  }
  return j;
}

template <class M>
std::string outcomeText(const hl::SearchOutcome<M>& r) {
  if (const auto* hit = std::get_if<hl::Refuted<M>>(&r)) return "refuted on " + std::to_string(hit->size) + " worlds";
  return "no countermodel up to size " + std::to_string(std::get<hl::NoCountermodelUpTo>(r).maxSize);
}

int cmdBridge(const Common& c, const std::string& axiomsPath, const std::string& goal, int maxSize) {
  const auto gamma = axiomsPath.empty() ? std::vector<hl::Formula>{} : hl::parseAxiomList(readFile(axiomsPath));
  hl::SearchOptions opt;
  opt.jobs = c.jobs;
  opt.validity.maxAtoms = c.maxAtoms;
  const auto r = hl::deriveViaTranslation(gamma, hl::resolveFormula(goal), maxSize, opt);
  if (c.json) {
    json j;
    j["agree"] = r.agree();
    j["intuitionistic"] = outcomeJson(r.sto);
    j["bimodal"] = outcomeJson(r.bimodal);
    if (r.witnessTransfers) j["witness_transfers"] = *r.witnessTransfers;
    emit(j);
  } else {
    std::cout << "intuitionistic: " << outcomeText(r.sto) << "\n";
    std::cout << "bimodal: " << outcomeText(r.bimodal) << "\n";
    if (r.witnessTransfers) std::cout << "rho of bimodal witness refutes goal: " << (*r.witnessTransfers ? "yes" : "no") << "\n";
    std::cout << (r.agree() ? "agree" : "DISAGREE") << "\n";
  }
  return r.agree() ? kOk : kRefuted;
}

int cmdCorrespond(const Common& c, const std::string& text, const std::string& condName, int maxSize) {
  auto cond = hl::FrameCondition::parse(condName);
  if (!cond) throw hl::Error(hl::ErrorKind::InvalidInput, "unknown frame condition '" + condName + "'");
  const bool bi = !c.lang.empty() ? c.lang == "bi" : cond->appliesTo() == hl::FrameKind::S4K;
  const auto axiom = hl::resolveAny(text, bi);
  hl::SearchOptions opt;
  opt.validity.maxAtoms = c.maxAtoms;
  const auto r = hl::correspondenceCheck(axiom, *cond, maxSize, opt);
  if (c.json) {
    json j;
    j["verified"] = r.verified;
    j["frames_checked"] = r.framesChecked;
    if (!r.verified) {
      j["direction"] = hl::directionName(r.direction);
      j["frame"] = hl::io::toJson(hl::io::toRaw(*r.frame));
    }
    emit(j);
  } else if (r.verified) {
    std::cout << "verified on " << r.framesChecked << " frames up to size " << maxSize << "\n";
  } else {
    std::cout << "counterexample: " << hl::directionName(r.direction) << "\n";
    std::cout << hl::io::toJson(hl::io::toRaw(*r.frame)).dump(2) << "\n";
  }
  return r.verified ? kOk : kRefuted;
}

int cmdDualize(const Common& c, const std::string& algebraPath) {
  const auto a = hl::validateAlgebra(hl::io::rawAlgebraFromJson(readJson(algebraPath)));
  emit(hl::io::frameToJson(hl::dualFrame(a).frame));
  (void)c;
  return kOk;
}

int cmdAlgebraCheck(const Common& c, const std::string& algebraPath) {
  const auto tables = hl::toTables(hl::io::rawAlgebraFromJson(readJson(algebraPath)));
  const auto vs = hl::HLAlgebra::violations(tables);
  if (c.json) {
    json j;
    j["valid"] = vs.empty();
    json list = json::array();
    for (const auto& v : vs) {
      json e;
      e["kind"] = hl::errorKindName(v.kind);
      if (!v.law.empty()) e["law"] = v.law;
      e["witness"] = v.witness;
      list.push_back(std::move(e));
    }
    j["violations"] = std::move(list);
    emit(j);
  } else if (vs.empty()) {
    std::cout << "valid HL-algebra with " << tables.elements.size() << " elements\n";
  } else {
    for (const auto& v : vs) std::cout << v.describe() << "\n";
  }
  return vs.empty() ? kOk : kRefuted;
}

int cmdMinimize(const Common& c, const std::string& modelPath, const std::string& text) {
  const auto raw = hl::io::rawModelFromJson(readJson(modelPath));
  const auto l = loadFrame(raw.frame, false);
  if (!l.s4k) throw hl::Error(hl::ErrorKind::KindMismatch, "minimize expects an s4k model");
  const hl::BiModel m = l.general ? hl::BiModel(*l.s4k, raw.valuation) : hl::BiModel(l.s4k->frame(), raw.valuation);
  const auto phi = hl::resolveBiFormula(text);
  const auto x = hl::buildXOmega(m, phi);
  const auto ext = hl::cofinalExtension(m, phi, x);
  const auto sub = hl::restrictModel(m, ext.states);
  auto out = hl::io::toRaw(sub.model);
  out.frame.admissible = sub.admissible;
  const auto report = hl::verifySubmodelTruth(m, ext.states, phi);
  if (c.json) {
    json j;
    j["model"] = hl::io::toJson(out);
    j["x_omega"] = hl::io::setJson(raw.frame.worlds, x.states);
    j["submodel_truth"] = report.ok();
    j["trace"] = hl::traceToString(ext.trace, m.frame());
    emit(j);
  } else {
    std::cout << hl::io::toJson(out).dump(2) << "\n";
    std::cout << "# X_omega = " << hl::setToString(raw.frame.worlds, x.states) << "\n";
    std::istringstream trace(hl::traceToString(ext.trace, m.frame()));
    for (std::string line; std::getline(trace, line);) std::cout << "# " << line << "\n";
    std::cout << "# submodel truth: " << (report.ok() ? "ok" : "FAILED") << "\n";
  }
  return report.ok() ? kOk : kRefuted;
}

int cmdEnumerate(const Common& c, int size, const std::string& kindName, const std::vector<std::string>& filterNames,
                 bool countOnly, bool dedup) {
  if (kindName != "sto" && kindName != "s4k") throw hl::Error(hl::ErrorKind::InvalidInput, "--kind must be sto or s4k");
  const auto kind = kindName == "sto" ? hl::FrameKind::Sto : hl::FrameKind::S4K;
  std::vector<hl::FrameCondition> filters;
  for (const auto& n : filterNames) {
    auto f = hl::FrameCondition::parse(n);
    if (!f) throw hl::Error(hl::ErrorKind::InvalidInput, "unknown frame condition '" + n + "'");
    filters.push_back(*f);
  }
  hl::EnumerationOptions opt;
  opt.dedup = dedup;
  std::uint64_t count = 0;
  json frames = json::array();
  auto visit = [&](const auto& f) {
    ++count;
    if (!countOnly) {
      if (c.json)
        frames.push_back(hl::io::frameToJson(f));
      else
        std::cout << hl::io::frameToJson(f).dump() << "\n";
    }
    return true;
  };
  if (kind == hl::FrameKind::Sto)
    hl::forEachStoFrame(size, filters, visit, opt);
  else
    hl::forEachS4KFrame(size, filters, visit, opt);
  if (countOnly) {
    if (c.json) {
      json j;
      j["count"] = count;
      emit(j);
    } else {
      std::cout << count << "\n";
    }
  } else if (c.json) {
    emit(frames);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heyting-Lewis logic toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json, "Structured output");
  app.add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-atoms", common.maxAtoms, "Refuse formulas with more atoms")->check(CLI::NonNegativeNumber);
  app.add_option("--lang", common.lang, "Formula language")->check(CLI::IsMember({"sto", "bi"}));

  std::string formula, frame, model, algebra, axioms, goal, condition, kind = "sto";
  std::vector<std::string> filters;
  int maxSize = 3, size = 1;
  bool close = false, countOnly = false, dedup = false;

  auto* parse = app.add_subcommand("parse", "Parse and print a formula");
  parse->add_option("formula", formula)->required();
  auto* eval = app.add_subcommand("eval", "Truth set of a formula in a model");
  eval->add_option("--model", model)->required();
  eval->add_option("--formula", formula)->required();
  auto* valid = app.add_subcommand("valid", "Frame validity with a countervaluation");
  valid->add_option("--frame", frame)->required();
  valid->add_option("--formula", formula)->required();
  valid->add_flag("--close", close, "Close the strict relation under coherence first");
  auto* translate = app.add_subcommand("translate", "Bimodal translation of a formula");
  translate->add_option("formula", formula)->required();
  auto* rho = app.add_subcommand("rho", "Intuitionistic frame of an s4k frame");
  rho->add_option("--frame", frame)->required();
  auto* sigma = app.add_subcommand("sigma", "Bimodal general frame of a sto frame");
  sigma->add_option("--frame", frame)->required();
  sigma->add_flag("--close", close);
  auto* roundtrip = app.add_subcommand("roundtrip", "Duality round trips");
  roundtrip->add_option("--frame", frame);
  roundtrip->add_option("--algebra", algebra);
  roundtrip->add_flag("--close", close);
  auto* decide = app.add_subcommand("decide", "Bounded countermodel search");
  decide->add_option("--axioms", axioms, "Axiom file");
  decide->add_option("--goal", goal)->required();
  decide->add_option("--max-size", maxSize)->check(CLI::Range(1, 8));
  auto* bridge = app.add_subcommand("bridge", "Cross-check the search against the bimodal side");
  bridge->add_option("--axioms", axioms, "Axiom file");
  bridge->add_option("--goal", goal)->required();
  bridge->add_option("--max-size", maxSize)->check(CLI::Range(1, 8));
  auto* correspond = app.add_subcommand("correspond", "Axiom versus frame condition");
  correspond->add_option("--formula", formula)->required();
  correspond->add_option("--condition", condition)->required();
  correspond->add_option("--max-size", maxSize)->check(CLI::Range(1, 8));
  auto* dualize = app.add_subcommand("dualize", "Prime filter frame of an algebra");
  dualize->add_option("--algebra", algebra)->required();
  auto* algebraCheck = app.add_subcommand("algebra-check", "Validate an algebra");
  algebraCheck->add_option("--algebra", algebra)->required();
  auto* minimize = app.add_subcommand("minimize", "Finite submodel construction");
  minimize->add_option("--model", model)->required();
  minimize->add_option("--formula", formula)->required();
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate frames");
  enumerate->add_option("--size", size)->required()->check(CLI::Range(1, 8));
  enumerate->add_option("--kind", kind)->check(CLI::IsMember({"sto", "s4k"}));
  enumerate->add_option("--filter", filters);
  enumerate->add_flag("--count-only", countOnly);
  enumerate->add_flag("--dedup", dedup);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*parse) return cmdParse(common, formula);
    if (*eval) return cmdEval(common, model, formula);
    if (*valid) return cmdValid(common, frame, formula, close);
    if (*translate) return cmdTranslate(common, formula);
    if (*rho) return cmdRho(common, frame);
    if (*sigma) return cmdSigma(common, frame, close);
    if (*roundtrip) return cmdRoundtrip(common, frame, algebra, close);
    if (*decide) return cmdDecide(common, axioms, goal, maxSize);
    if (*bridge) return cmdBridge(common, axioms, goal, maxSize);
    if (*correspond) return cmdCorrespond(common, formula, condition, maxSize);
    if (*dualize) return cmdDualize(common, algebra);
    if (*algebraCheck) return cmdAlgebraCheck(common, algebra);
    if (*minimize) return cmdMinimize(common, model, formula);
    if (*enumerate) return cmdEnumerate(common, size, kind, filters, countOnly, dedup);
  } catch (const hl::Error& e) {
    if (e.violations().empty()) {
      std::cerr << "error: " << hl::errorKindName(e.kind()) << ": " << e.what() << "\n";
    } else {
      std::cerr << "error: invalid input\n";
      for (const auto& v : e.violations()) std::cerr << "  " << v.describe() << "\n";
    }
    return kUsage;
  }
  return kUsage;
}
