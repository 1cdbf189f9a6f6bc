#pragma once

#include <string>
#include <vector>

#include "rmt/config.hpp"

namespace rmt {

/// Parses argv into a validated invocation. Throws UsageError / ConfigError.
Invocation parse_and_validate(const std::vector<std::string>& args);

/// Runs the invocation and writes its reports under inv.out_dir.
/// Returns 0 on success, 1 when an assertion-mode check fails.
int dispatch(const Invocation& inv);

/// Full CLI entry point: parse, dispatch, map errors to exit codes
/// (2 usage, 3 config, 4 numerical) with one machine-readable diagnostic
/// line on stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace rmt
