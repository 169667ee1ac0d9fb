#pragma once

#include <stdexcept>
#include <string>

namespace siglab {

/// Machine-readable failure categories.  The CLI maps these onto process
/// exit codes: validation problems (bad input data) exit with 2,
/// certificate problems (a computation that ran but failed its own
/// verification) with 3, and resource caps with 4.
enum class ErrorKind {
  // validation (exit 2)
  TypeClash,
  DanglingVertex,
  NotACycle,
  NotClosed,
  GradingMismatch,
  NotChainMap,
  PairAxiomFailure,
  UnknownCorpus,
  BadInput,
  // certificate (exit 3)
  DualityFailure,
  SymmetrizationDegenerate,
  NotInvertible,
  NotEquivalence,
  CertificateFailure,
  DegreeLimit,
  // resource (exit 4)
  ResourceLimit,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::TypeClash: return "TypeClash";
    case ErrorKind::DanglingVertex: return "DanglingVertex";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::GradingMismatch: return "GradingMismatch";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::PairAxiomFailure: return "PairAxiomFailure";
    case ErrorKind::UnknownCorpus: return "UnknownCorpus";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::DualityFailure: return "DualityFailure";
    case ErrorKind::SymmetrizationDegenerate: return "SymmetrizationDegenerate";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotEquivalence: return "NotEquivalence";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
    case ErrorKind::DegreeLimit: return "DegreeLimit";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  /// CLI exit code for this failure category.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::TypeClash:
      case ErrorKind::DanglingVertex:
      case ErrorKind::NotACycle:
      case ErrorKind::NotClosed:
      case ErrorKind::GradingMismatch:
      case ErrorKind::NotChainMap:
      case ErrorKind::PairAxiomFailure:
      case ErrorKind::UnknownCorpus:
      case ErrorKind::BadInput:
        return 2;
      case ErrorKind::ResourceLimit:
        return 4;
      default:
        return 3;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace siglab
