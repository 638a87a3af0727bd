#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndc::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kNotHermitian = 2,
    kCertifiedOutOrWitness = 3,
    kEmpirical = 4,
    kUsage = 64,
    kSoftware = 70,
};

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndc::cli
