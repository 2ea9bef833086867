#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ocmc::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

// Runs the full acceptance suite. Randomized criteria derive their instances
// deterministically from `seed`.
std::vector<CriterionResult> run_all(std::uint64_t seed = kDefaultSeed);

// One line per criterion plus a summary; returns true iff every criterion
// passed. Timings are omitted when byte-stable output matters.
bool report(const std::vector<CriterionResult>& results, std::ostream& os,
            bool show_timings = true);

}  // namespace ocmc::acceptance
