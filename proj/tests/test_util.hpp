#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ocmc/ctl.hpp"
#include "ocmc/ocp.hpp"

namespace testutil {

// splitmix64; keeps generated instances identical across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool coin() { return next() & 1; }
};

inline ocmc::CtlFormula random_core_formula(Rng& rng, int depth,
                                            const std::vector<std::string>& atoms) {
  using namespace ocmc;
  if (depth == 0 || rng.below(100) < 35) return prop(atoms[rng.below(atoms.size())]);
  switch (rng.below(7)) {
    case 0:
    case 1: return neg(random_core_formula(rng, depth - 1, atoms));
    case 2:
      return conj(random_core_formula(rng, depth - 1, atoms),
                  random_core_formula(rng, depth - 1, atoms));
    case 3:
    case 4: return exists_next(random_core_formula(rng, depth - 1, atoms));
    case 5:
      return exists_until(random_core_formula(rng, depth - 1, atoms),
                          random_core_formula(rng, depth - 1, atoms));
    default:
      return exists_weak_until(random_core_formula(rng, depth - 1, atoms),
                               random_core_formula(rng, depth - 1, atoms));
  }
}

// Any-connective formula (sugar included), for parser/expansion tests.
inline ocmc::CtlFormula random_formula(Rng& rng, int depth,
                                       const std::vector<std::string>& atoms) {
  using namespace ocmc;
  if (depth == 0 || rng.below(100) < 30) {
    switch (rng.below(5)) {
      case 0: return top();
      case 1: return bot();
      default: return prop(atoms[rng.below(atoms.size())]);
    }
  }
  switch (rng.below(11)) {
    case 0: return neg(random_formula(rng, depth - 1, atoms));
    case 1:
      return conj(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
    case 2:
      return disj(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
    case 3:
      return implies(random_formula(rng, depth - 1, atoms),
                     random_formula(rng, depth - 1, atoms));
    case 4: return exists_next(random_formula(rng, depth - 1, atoms));
    case 5: return forall_next(random_formula(rng, depth - 1, atoms));
    case 6: return exists_finally(random_formula(rng, depth - 1, atoms));
    case 7: return exists_globally(random_formula(rng, depth - 1, atoms));
    case 8:
      return exists_until(random_formula(rng, depth - 1, atoms),
                          random_formula(rng, depth - 1, atoms));
    default:
      return exists_weak_until(random_formula(rng, depth - 1, atoms),
                               random_formula(rng, depth - 1, atoms));
  }
}

inline ocmc::OneCounterProcess random_unit_ocp(Rng& rng, int max_locations = 3) {
  int nloc = 1 + static_cast<int>(rng.below(max_locations));
  std::vector<std::string> locs;
  for (int i = 0; i < nloc; ++i) locs.push_back("l" + std::to_string(i));
  std::map<std::string, std::vector<std::string>> props;
  for (const char* p : {"a", "b"}) {
    std::vector<std::string> on;
    for (const std::string& l : locs)
      if (rng.coin()) on.push_back(l);
    props[p] = on;
  }
  std::vector<ocmc::TransitionRule> pos, zero;
  int npos = 1 + static_cast<int>(rng.below(6));
  for (int i = 0; i < npos; ++i)
    pos.push_back({static_cast<int>(rng.below(nloc)), static_cast<long long>(rng.below(3)) - 1,
                   static_cast<int>(rng.below(nloc))});
  int nzero = static_cast<int>(rng.below(4));
  for (int i = 0; i < nzero; ++i)
    zero.push_back({static_cast<int>(rng.below(nloc)), static_cast<long long>(rng.below(2)),
                    static_cast<int>(rng.below(nloc))});
  return ocmc::OneCounterProcess(locs, props, zero, pos);
}

}  // namespace testutil
