#include "ofs/error.hpp"

namespace ofs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::TrailingBytes: return "TrailingBytes";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MemberOrderMismatch: return "MemberOrderMismatch";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
  }
  return "Error";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return ErrorCategory::Config;
    case ErrorCode::NonFiniteLoss: return ErrorCategory::Numeric;
    default: return ErrorCategory::Data;
  }
}

}  // namespace ofs
