#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "semiclass/cli/config.hpp"
#include "semiclass/error.hpp"

namespace semiclass::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kBudget = 3, kUsage = 64 };

const std::vector<std::string>& subcommands();

int exit_code_for(ErrorKind kind);

/// Runs one experiment. The artifact goes to cfg.out (stdout when empty);
/// the JSON summary goes to `summary_out`.
int run(const ExperimentConfig& cfg, std::ostream& artifact_out, std::ostream& summary_out, std::ostream& err);

/// Full command-line entry: parses flags over an optional --config file.
int main_entry(int argc, char** argv);

}  // namespace semiclass::cli
