// Named verification suites, one per acceptance criterion. Shared by the
// command-line `verify` subcommand and the acceptance test binary.

#pragma once

#include "hcm/eisenstein.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hcm {

struct VerifyFailure {
  std::string inputs;
  std::string expected;
  std::string got;
};

struct VerifySuiteReport {
  static constexpr std::size_t kMaxRecorded = 20;

  std::string suite;
  std::string summary;
  std::int64_t checks = 0;
  std::int64_t failed = 0;
  std::vector<VerifyFailure> failures;  // at most kMaxRecorded
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool passed() const { return failed == 0; }
  int exit_status() const { return passed() ? 0 : 1; }
  // Counts one check; records a failure when `ok` is false.
  void check(bool ok, const std::string& inputs, const std::string& expected, const std::string& got);
};

struct VerifyOptions {
  int threads = 1;
  Interpretation interp;
};

const std::vector<std::string>& verify_suite_names();
// Throws std::invalid_argument for an unknown name.
VerifySuiteReport run_verify_suite(const std::string& name, const VerifyOptions& options = {});
std::vector<VerifySuiteReport> run_all_suites(const VerifyOptions& options = {});

// Pairs (m, M), M <= max_M, whose residuals stay below 1e-6 for n <= max_n.
std::vector<std::pair<std::int64_t, std::int64_t>> vanishing_pairs(std::int64_t max_M, std::int64_t max_n,
                                                                   const Interpretation& interp, int threads = 1);

}  // namespace hcm
