#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace esg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Runs the command line `args` (args[0] is the program name). Results go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV for `reproduce --figure n` with the bundled calibrations, or with
/// `paramsOverride` applied to every series when non-empty.
std::string figure_csv(int figure, const std::string& paramsOverride = {});

}  // namespace esg::cli
