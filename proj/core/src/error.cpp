#include "subtok/error.hpp"

namespace subtok {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDecode: return "decode error";
    case ErrorCode::kIo: return "I/O error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kEmptyCorpus: return "empty corpus";
    case ErrorCode::kConsistency: return "consistency error";
    case ErrorCode::kCoverage: return "coverage error";
    case ErrorCode::kUnprunable: return "unprunable token";
    case ErrorCode::kStagnation: return "pruning stagnated";
    case ErrorCode::kUndefinedRate: return "undefined rate";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace subtok
