// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_ERROR_HPP_
#define SIGNREC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace signrec {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kFormat,
  kEmptyDataset,
  kUsage,
  kMissingModality,
  kMismatch,
  kNumerical,
  kInternal,
};

const char* error_code_name(ErrorCode code);

/// All fatal conditions raised by the library are reported as signrec::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, const std::string& message,
                    ErrorCode code = ErrorCode::kInvalidArgument) {
  if (!condition) fail(code, message);
}

}  // namespace signrec

#endif  // SIGNREC_ERROR_HPP_
