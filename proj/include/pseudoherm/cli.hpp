#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pseudoherm::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 2,
    domain_error = 3,
};

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// printf("%.17g"), with "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double x);

}  // namespace pseudoherm::cli
