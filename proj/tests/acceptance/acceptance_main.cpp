// Acceptance gate: runs every criterion and prints one pass/fail line per
// clause. Exit status is the number of failing clauses.

#include <cstdio>
#include <cstdlib>

#include "dissim/harness/verify.hpp"

int main(int argc, char** argv) {
  dissim::VerifyOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) opt.tolerance_scale = std::strtod(argv[2], nullptr);

  const auto results = dissim::run_acceptance(opt);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-32s measured=%-12.6g tolerance=%-12.6g %s\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.measured, r.tolerance, r.note.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu clauses, %d failure(s)\n", results.size(), failures);
  return failures;
}
