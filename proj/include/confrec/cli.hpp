#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace confrec {

/// Exit codes: 0 success, 1 invalid input data or failed run, 2 output not
/// writable. Usage errors return CLI11's parse-error codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitOutputError = 2;

/// Entry point behind the `confrec` executable. `args` excludes the program
/// name. Data goes to `out` or the --out file; diagnostics go to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace confrec
