#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nlgbidi {

enum class Errc {
  EmptyTerm,
  EmptyTripleSet,
  MalformedTriple,
  EmptyOutput,
  ReferenceIndexOutOfRange,
  InvalidBindingValue,
  UnboundVariable,
  DuplicateBinding,
  MalformedDocument,
  EmptyGold,
  BothEmpty,
  EmptyInput,
  MixedReportKinds,
  EmptyBase,
  EmptyCorpus,
  IoFailure,
  SchemaViolation,
  SplitCountMismatch,
  InvalidConfig,
};

std::string_view errc_name(Errc code) noexcept;

// Base of every error raised by the toolkit. The code identifies the
// failure class; the message carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// A serialized segment that did not split into exactly three terms.
class MalformedTriple : public Error {
 public:
  MalformedTriple(std::string segment, std::size_t index);

  const std::string& segment() const noexcept { return segment_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::string segment_;
  std::size_t index_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string var)
      : Error(Errc::UnboundVariable, "unbound variable $" + var),
        var_(std::move(var)) {}

  const std::string& var() const noexcept { return var_; }

 private:
  std::string var_;
};

// Corpus line that does not follow the record schema. Lines are 1-based.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::size_t line, std::string field, const std::string& detail);

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace nlgbidi
