#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinscreen/spin_domain.hpp"

namespace spinscreen::cli {

struct CheckResult {
  std::string name;
  double measured = 0;
  double threshold = 0;
  /// "<=" or ">="
  std::string relation = "<=";
  bool pass = false;
  std::string detail;
};

struct VerifyConfig {
  ScreenParams params;
  std::size_t random_cases = 200;
  std::uint64_t seed = 20240611;
  std::optional<std::string> golden;
  std::map<std::string, double> tolerance;
};

struct Suite {
  std::string name;
  std::function<std::vector<CheckResult>(const VerifyConfig&)> run;
};

const std::vector<Suite>& suites();

/// Looks up an override, falling back to the default.
double tolerance(const VerifyConfig& cfg, const std::string& key, double fallback);

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {});
CheckResult at_least(std::string name, double measured, double threshold, std::string detail = {});

/// Golden-value check; throws InvalidArgument when the file cannot be parsed.
std::vector<CheckResult> golden_checks(const std::string& path);

struct NineJSweep {
  std::size_t stencils = 100;
  int max_two_j = 8;
  std::optional<int> two_h;
  std::uint64_t seed = 7;
};

/// Random admissible stencils for the 9j recurrence. Empty when the filter
/// admits none.
std::vector<std::array<int, 9>> ninej_stencils(const NineJSweep& sweep);

}  // namespace spinscreen::cli
