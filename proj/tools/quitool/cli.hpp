#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qui/errors.hpp"

namespace qui::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerificationFailure = 2, kProtocolFailure = 3 };

/// Exit code reported for a qui::Error of the given kind.
int exit_code_for(ErrorCode code) noexcept;

/// Runs quitool with `args` (program name excluded). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qui::cli
