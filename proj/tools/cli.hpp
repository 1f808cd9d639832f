// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SIGNREC_TOOLS_CLI_HPP_
#define SIGNREC_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace signrec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitMissingModality = 3,
  kExitMismatch = 4,
};

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace signrec::cli

#endif  // SIGNREC_TOOLS_CLI_HPP_
