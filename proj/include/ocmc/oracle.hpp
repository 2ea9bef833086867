#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocmc/bigint.hpp"
#include "ocmc/ctl.hpp"
#include "ocmc/ocp.hpp"

namespace ocmc {

// Kleene three-valued truth.
enum class Tv3 : unsigned char { False = 0, Unknown = 1, True = 2 };

inline Tv3 kleene_not(Tv3 v) {
  return static_cast<Tv3>(2 - static_cast<int>(v));
}
inline Tv3 kleene_and(Tv3 a, Tv3 b) { return a < b ? a : b; }

// Sound three-valued evaluation on the counter-truncated system: states
// (location, v) for v in [0, ceiling] plus one absorbing Frontier state that
// every counter overshoot is redirected to. The Frontier carries no
// information (every formula is Unknown there), so definite verdicts at real
// states agree with the semantics on the full infinite system.
//
// Labels every subformula once; verdicts for all states of the ceiling window
// can then be read off.
class TruncatedEval {
 public:
  // `f` must be in core form. Ceilings are state counts, so they must be
  // modest; callers pick them per use.
  TruncatedEval(const OneCounterProcess& ocp, const CtlFormula& f, std::uint64_t ceiling);

  Tv3 value(int location, std::uint64_t counter) const;
  Tv3 value(const std::string& location, std::uint64_t counter) const;

  std::uint64_t ceiling() const { return ceiling_; }
  const OneCounterProcess& process() const { return ocp_; }

 private:
  std::vector<Tv3> label(const CtlFormula& f);
  std::size_t state_of(int loc, std::uint64_t v) const {
    return static_cast<std::size_t>(loc) * (ceiling_ + 1) + v;
  }

  OneCounterProcess ocp_;
  std::uint64_t ceiling_;
  std::size_t frontier_;  // index of the Frontier pseudo-state
  std::vector<std::vector<std::size_t>> succ_, pred_;
  std::unordered_map<const void*, std::vector<Tv3>> memo_;
  std::vector<Tv3> root_;
};

// Single-point query. n must not exceed the ceiling.
Tv3 eval3(const OneCounterProcess& ocp, const CtlFormula& core_f, const std::string& location,
          const BigInt& n, std::uint64_t ceiling);

// Doubles the ceiling from initial_ceiling until the verdict is definite;
// throws IndefiniteError if still Unknown at max_ceiling.
bool eval_definite(const OneCounterProcess& ocp, const CtlFormula& core_f,
                   const std::string& location, const BigInt& n,
                   std::uint64_t initial_ceiling, std::uint64_t max_ceiling);

// Default cap for iterative deepening; the CLI can override it.
inline constexpr std::uint64_t kDefaultMaxCeiling = std::uint64_t{1} << 16;

}  // namespace ocmc
