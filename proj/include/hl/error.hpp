#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hl {

enum class ErrorKind {
  Syntax,
  InvalidInput,
  NotPoset,
  NotPreorder,
  CoherenceViolation,
  NotUpset,
  AdmissibleNotClosed,
  KindMismatch,
  BoundTooLarge,
  BhlRequired,
  TooManyAtoms,
  InvalidValuation,
  NotLattice,
  NotDistributive,
  NoHeytingImp,
  CAxiomViolation,
  NotDescriptive,
  PreconditionFailed,
  NotRefuted,
  RmNotTransitive,
};

inline std::string_view errorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotPoset: return "NotPoset";
    case ErrorKind::NotPreorder: return "NotPreorder";
    case ErrorKind::CoherenceViolation: return "CoherenceViolation";
    case ErrorKind::NotUpset: return "NotUpset";
    case ErrorKind::AdmissibleNotClosed: return "AdmissibleNotClosed";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::BhlRequired: return "BhlRequired";
    case ErrorKind::TooManyAtoms: return "TooManyAtoms";
    case ErrorKind::InvalidValuation: return "InvalidValuation";
    case ErrorKind::NotLattice: return "NotLattice";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NoHeytingImp: return "NoHeytingImp";
    case ErrorKind::CAxiomViolation: return "CAxiomViolation";
    case ErrorKind::NotDescriptive: return "NotDescriptive";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotRefuted: return "NotRefuted";
    case ErrorKind::RmNotTransitive: return "RmNotTransitive";
  }
  return "Unknown";
}

// One violated law. `law` names the specific rule (e.g. "C4", "reflexive"),
// `witness` the offending elements by name.
struct Violation {
  ErrorKind kind;
  std::string law;
  std::vector<std::string> witness;

  std::string describe() const {
    std::string s(errorKindName(kind));
    if (!law.empty()) s += "[" + law + "]";
    s += "(";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) s += ",";
      s += witness[i];
    }
    return s + ")";
  }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<Violation> violations = {})
      : std::runtime_error(message), kind_(kind), violations_(std::move(violations)) {}

  static Error fromViolations(std::vector<Violation> vs) {
    std::string msg;
    for (const auto& v : vs) {
      if (!msg.empty()) msg += "; ";
      msg += v.describe();
    }
    ErrorKind k = vs.front().kind;
    return Error(k, msg, std::move(vs));
  }

  ErrorKind kind() const { return kind_; }
  const std::vector<Violation>& violations() const { return violations_; }

  bool has(ErrorKind k, std::string_view law = {}) const {
    for (const auto& v : violations_)
      if (v.kind == k && (law.empty() || v.law == law)) return true;
    return false;
  }

 private:
  ErrorKind kind_;
  std::vector<Violation> violations_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::Syntax, "syntax error at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace hl
