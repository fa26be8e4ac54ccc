#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcf {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEvaluation = 2;

// Entry point of the qcf tool. `args` excludes the program name.
// Subcommands: eval, contract, classify, verdict, scan, catalog.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qcf
