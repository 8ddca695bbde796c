#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ofs {

enum class ErrorCode {
  Config,
  Io,
  MalformedRow,
  UnknownLabel,
  EmptyClass,
  BadMagic,
  BadHeader,
  TruncatedFile,
  TrailingBytes,
  NonFiniteValue,
  EmptyIntersection,
  DimensionMismatch,
  IdMismatch,
  DuplicateId,
  MemberOrderMismatch,
  EmptyVocabulary,
  NonFiniteLoss,
};

/// Broad class of an error; the CLI maps these to exit codes 2, 3 and 4.
enum class ErrorCategory { Config, Data, Numeric };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ofs
