#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace ternassert::cli {

enum ExitCode : int {
    kOk = 0,
    kAssertionError = 1,
    kUsageError = 2,
    kSimulationError = 3,
};

/// Runs one command line (args excludes the program name). Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a+bi" with six significant digits; magnitudes below 1e-12 print as 0.
std::string format_amplitude(std::complex<double> a);

}  // namespace ternassert::cli
