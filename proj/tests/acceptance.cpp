// One line per acceptance criterion, then how each interpretation reading
// fares on the residual classification. Exit status 0 iff every criterion passes.

#include "hcm/verify.hpp"

#include <cstdio>
#include <set>

using namespace hcm;

int main() {
  VerifyOptions options;
  options.threads = 4;
  int failed = 0;
  int index = 0;
  for (const auto& name : verify_suite_names()) {
    const auto rep = run_verify_suite(name, options);
    ++index;
    std::printf("%s %2d %-18s %s (%lld checks, %.2f s)\n", rep.passed() ? "PASS" : "FAIL", index, rep.suite.c_str(),
                rep.summary.c_str(), static_cast<long long>(rep.checks), rep.seconds);
    for (const auto& f : rep.failures) {
      std::printf("       %s: expected %s, got %s\n", f.inputs.c_str(), f.expected.c_str(), f.got.c_str());
    }
    if (!rep.passed()) ++failed;
  }

  std::set<std::pair<std::int64_t, std::int64_t>> expected;
  for (std::int64_t M = 1; M <= 9; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      if (M <= 5 || (M == 8 && (m == 2 || m == 6))) expected.insert({m, M});
    }
  }
  std::printf("readings (residual classification, M <= 9, n <= 100):\n");
  for (auto eta0 : {Eta0Reading::OddPart, Eta0Reading::HatOddPart, Eta0Reading::TildeOddPart, Eta0Reading::One}) {
    for (auto phi : {PhiReading::Tilde, PhiReading::Star}) {
      for (auto psi : {PsiReading::Corrected, PsiReading::AsPrinted}) {
        const Interpretation interp{eta0, phi, psi};
        const auto got = vanishing_pairs(9, 100, interp, 4);
        const std::set<std::pair<std::int64_t, std::int64_t>> got_set(got.begin(), got.end());
        std::printf("  %-40s %s (%zu vanishing pairs)\n", interp.describe().c_str(),
                    got_set == expected ? "matches" : "differs", got_set.size());
      }
    }
  }
  std::printf("%d of %d criteria failed\n", failed, index);
  return failed == 0 ? 0 : 1;
}
