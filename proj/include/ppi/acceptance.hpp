#pragma once

// The acceptance suite as a library so the acceptance binary and the CLI
// self-test share one implementation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ppi/numkit.hpp"

namespace ppi::acceptance {

enum class Scale { smoke, desk };

struct Config {
  std::uint64_t seed = 42;
  Scale scale = Scale::desk;
  Tol tol{};
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;                      // one-line summary of the worst case
  std::map<std::string, double> metrics;   // named residuals and counts
  double seconds = 0;
};

inline constexpr int kCriteria = 11;

CriterionResult run_criterion(int id, const Config& cfg);
std::vector<CriterionResult> run_all(const Config& cfg);

/// "smoke" or "desk"; throws BadSpec otherwise.
Scale parse_scale(const std::string& s);
const char* scale_name(Scale s);

}  // namespace ppi::acceptance
