#pragma once

#include <iosfwd>

namespace qcst::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kInternal = 3,
};

/// Entry point shared by the executable and the tests. Writes reports to
/// `out` and diagnostics to `err`; never calls std::exit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcst::cli
