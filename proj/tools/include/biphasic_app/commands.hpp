#pragma once

#include <iosfwd>
#include <string>

#include "biphasic_app/config.hpp"

namespace biphasic::app {

enum ExitCode { kOk = 0, kConfigError = 1, kSolverFailure = 2 };

/// Runs one subcommand (check-params, solve, mms, coercivity, dependence,
/// truncation). Reports go to `out`, warnings and errors to `err`.
int run(const std::string& subcommand, const std::string& config_path, std::ostream& out,
        std::ostream& err);

}  // namespace biphasic::app
