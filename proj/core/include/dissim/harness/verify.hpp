#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dissim {

struct VerifyOptions {
  std::uint64_t seed = 12345;
  /// Multiplies every tolerance; values below 1 tighten the gates to
  /// expose marginal criteria.
  double tolerance_scale = 1.0;
};

struct CriterionResult {
  std::string id;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Runs the full acceptance suite; one entry per checked clause.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt);

/// `criterion,measured,tolerance,pass` lines with header.
std::string format_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace dissim
