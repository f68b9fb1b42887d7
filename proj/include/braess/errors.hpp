#pragma once

#include <stdexcept>
#include <string>

namespace braess {

// Machine-checkable failure codes. Every thrown Error carries exactly one.
enum class Errc {
  InvalidArgument,
  EdgeAlreadyPresent,
  EdgeAbsent,
  WouldIsolateNode,
  ConnectivityRetriesExhausted,
  ParseError,
  SelfLoopRejected,
  DuplicateEdgeRejected,
  ZeroDegreeNode,
  GraphTooLargeForDense,
  GraphTooLargeForEnumeration,
  DisconnectedInput,
  NoCandidates,
  AllCandidatesFiltered,
  InvalidPlan,
  DegenerateSplit,
  ZeroVectorRow,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::EdgeAlreadyPresent: return "EdgeAlreadyPresent";
    case Errc::EdgeAbsent: return "EdgeAbsent";
    case Errc::WouldIsolateNode: return "WouldIsolateNode";
    case Errc::ConnectivityRetriesExhausted: return "ConnectivityRetriesExhausted";
    case Errc::ParseError: return "ParseError";
    case Errc::SelfLoopRejected: return "SelfLoopRejected";
    case Errc::DuplicateEdgeRejected: return "DuplicateEdgeRejected";
    case Errc::ZeroDegreeNode: return "ZeroDegreeNode";
    case Errc::GraphTooLargeForDense: return "GraphTooLargeForDense";
    case Errc::GraphTooLargeForEnumeration: return "GraphTooLargeForEnumeration";
    case Errc::DisconnectedInput: return "DisconnectedInput";
    case Errc::NoCandidates: return "NoCandidates";
    case Errc::AllCandidatesFiltered: return "AllCandidatesFiltered";
    case Errc::InvalidPlan: return "InvalidPlan";
    case Errc::DegenerateSplit: return "DegenerateSplit";
    case Errc::ZeroVectorRow: return "ZeroVectorRow";
  }
  return "UnknownError";
}

}  // namespace braess
