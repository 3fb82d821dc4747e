#include "nlgbidi/error.hpp"

namespace nlgbidi {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyTerm: return "EmptyTerm";
    case Errc::EmptyTripleSet: return "EmptyTripleSet";
    case Errc::MalformedTriple: return "MalformedTriple";
    case Errc::EmptyOutput: return "EmptyOutput";
    case Errc::ReferenceIndexOutOfRange: return "ReferenceIndexOutOfRange";
    case Errc::InvalidBindingValue: return "InvalidBindingValue";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::DuplicateBinding: return "DuplicateBinding";
    case Errc::MalformedDocument: return "MalformedDocument";
    case Errc::EmptyGold: return "EmptyGold";
    case Errc::BothEmpty: return "BothEmpty";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::MixedReportKinds: return "MixedReportKinds";
    case Errc::EmptyBase: return "EmptyBase";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::IoFailure: return "IoFailure";
    case Errc::SchemaViolation: return "SchemaViolation";
    case Errc::SplitCountMismatch: return "SplitCountMismatch";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

MalformedTriple::MalformedTriple(std::string segment, std::size_t index)
    : Error(Errc::MalformedTriple,
            "malformed triple at segment " + std::to_string(index) + ": '" +
                segment + "'"),
      segment_(std::move(segment)),
      index_(index) {}

SchemaViolation::SchemaViolation(std::size_t line, std::string field,
                                 const std::string& detail)
    : Error(Errc::SchemaViolation, "line " + std::to_string(line) + ", field '" +
                                       field + "': " + detail),
      line_(line),
      field_(std::move(field)) {}

}  // namespace nlgbidi
