#pragma once

#include <cstdint>
#include <vector>

#include "ocmc/bigint.hpp"

namespace ocmc {

// Exact representation of an ultimately periodic subset of the naturals:
// membership of n < threshold comes from `prefix`, membership of n >=
// threshold repeats with `period` via residues[(n - threshold) % period].
// Values are immutable; the canonical (minimal) form is produced by
// normalized(), not enforced on construction.
class UltimatelyPeriodicSet {
 public:
  // prefix must have `threshold` entries, residues `period` entries,
  // period >= 1. Entries are 0/1.
  UltimatelyPeriodicSet(std::uint64_t threshold, std::uint64_t period,
                        std::vector<char> prefix, std::vector<char> residues);

  static UltimatelyPeriodicSet empty_set();
  static UltimatelyPeriodicSet full_set();

  bool member(const BigInt& n) const;
  bool member(std::uint64_t n) const { return member(BigInt(n)); }

  std::uint64_t threshold() const { return threshold_; }
  std::uint64_t period() const { return period_; }
  const std::vector<char>& prefix() const { return prefix_; }
  const std::vector<char>& residues() const { return residues_; }

  // Unique minimal representative: smallest period (a divisor of the
  // current one) first, then the shortest prefix. Membership is unchanged.
  UltimatelyPeriodicSet normalized() const;

 private:
  std::uint64_t threshold_;
  std::uint64_t period_;
  std::vector<char> prefix_;
  std::vector<char> residues_;
};

// Pointwise boolean algebra. Results are normalized.
UltimatelyPeriodicSet unite(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);
UltimatelyPeriodicSet intersect(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);
UltimatelyPeriodicSet complement(const UltimatelyPeriodicSet& a);

// Semantic set equality (independent of representation).
bool equal(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);

}  // namespace ocmc
