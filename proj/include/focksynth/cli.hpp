#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace focksynth {

/// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

/// Verification thresholds used by `synth` and `verify`.
inline constexpr double kVerifyFidelity = 1e-9;  ///< pass when |overlap| >= 1 - this
inline constexpr double kVerifyPhase = 1e-6;     ///< max |arg overlap - recorded phase|

/// Subcommands: synth, verify, bench, noon. Run with --help for flags.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace focksynth
