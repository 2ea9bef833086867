// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Seed can be overridden with a single argument.

#include <cstdlib>
#include <iostream>

#include "ocmc/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = ocmc::acceptance::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  auto results = ocmc::acceptance::run_all(seed);
  return ocmc::acceptance::report(results, std::cout) ? 0 : 1;
}
