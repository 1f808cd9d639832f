// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/error.hpp"

namespace signrec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kEmptyDataset: return "empty dataset";
    case ErrorCode::kUsage: return "usage error";
    case ErrorCode::kMissingModality: return "missing modality";
    case ErrorCode::kMismatch: return "model/data mismatch";
    case ErrorCode::kNumerical: return "numerical error";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace signrec
