#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcst/qc.hpp"

namespace qcst::verify {

struct CheckResult {
  std::string suite;
  std::string check;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

enum class Fault { None, RiemannSign };

struct Options {
  /// Runs every suite whose name starts with this prefix; empty runs all.
  std::string suite;
  double tol = kDefaultTol;
  /// Mutation hook: corrupts the jet pipeline output seen by the suites.
  Fault fault = Fault::None;
};

const std::vector<std::string>& suite_names();

/// Throws BadParameter when the prefix matches no suite.
std::vector<CheckResult> run(const Options& options);

/// `PASS|FAIL <suite>.<check> <measured> <bound>`
std::string format(const CheckResult& r);

}  // namespace qcst::verify
