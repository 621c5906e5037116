#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bprt::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kNotCertified = 2,
};

/// Runs one command line (args[0] is the program name). Machine output goes
/// to `out` unless redirected with --out; human summaries and diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from BASIS_PERTURB_THREADS; 0 (auto) when unset or invalid.
unsigned threads_from_env();

}  // namespace bprt::cli
