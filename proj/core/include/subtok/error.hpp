#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subtok {

enum class ErrorCode {
  kInvalidArgument,
  kDecode,
  kIo,
  kParse,
  kEmptyCorpus,
  kConsistency,
  kCoverage,
  kUnprunable,
  kStagnation,
  kUndefinedRate,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. what() carries the full message,
// prefixed with the error category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the category prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace subtok
