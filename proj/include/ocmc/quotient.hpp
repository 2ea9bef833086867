#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ocmc/bigint.hpp"
#include "ocmc/ctl.hpp"
#include "ocmc/ocp.hpp"
#include "ocmc/periodic_set.hpp"

namespace ocmc {

// Parameters of the finite abstraction for one process/formula pair:
//   k       number of control locations
//   K       LCM(1..k)         (1 when k = 0)
//   K_phi   K^left_until_depth(f), the period of all satisfaction sets
//   B       2 * |f| * k^2 * K_phi, below which counters are kept exact
//   band_lo B + 1, first counter value of the periodic band
// Computed on the expanded (core) formula, in exact arithmetic.
struct BoundParams {
  std::uint64_t k;
  BigInt K;
  BigInt K_phi;
  BigInt B;
  BigInt band_lo;
};

BoundParams bound_params(const OneCounterProcess& ocp, const CtlFormula& core_f);

BigInt lcm_upto(std::uint64_t k);

// Finite graph over (location, v) with v in [0, band_lo + K_phi): counters
// below band_lo behave exactly; the band [band_lo, band_lo + K_phi) carries
// one full period, and +1 steps off its top wrap down by exactly K_phi.
class QuotientSystem {
 public:
  QuotientSystem(const OneCounterProcess& ocp, const BoundParams& bp);

  std::uint64_t band_lo() const { return band_lo_; }
  std::uint64_t period() const { return period_; }
  std::uint64_t width() const { return width_; }  // band_lo + period
  std::size_t state_count() const { return succ_.size(); }
  const OneCounterProcess& process() const { return ocp_; }

  std::size_t state_of(int loc, std::uint64_t v) const {
    return static_cast<std::size_t>(loc) * width_ + v;
  }
  const std::vector<std::vector<std::size_t>>& successors() const { return succ_; }
  const std::vector<std::vector<std::size_t>>& predecessors() const { return pred_; }

 private:
  OneCounterProcess ocp_;
  std::uint64_t band_lo_, period_, width_;
  std::vector<std::vector<std::size_t>> succ_, pred_;
};

// Builds the quotient for (ocp, expanded f). Throws UnsupportedInputError
// for non-unit-step processes (use the truncation oracle for those) and when
// the abstraction would not fit in memory.
QuotientSystem build_quotient(const OneCounterProcess& ocp, const BoundParams& bp);

// Satisfaction sets per control location, as normalized ultimately periodic
// sets. Accepts sugared input (expands internally).
std::map<std::string, UltimatelyPeriodicSet> label(const OneCounterProcess& ocp,
                                                   const CtlFormula& f);

// Decides (location, n) |= f without materializing counter n: only n's
// residue in the band enters. n may be arbitrarily large.
bool check(const OneCounterProcess& ocp, const CtlFormula& f, const std::string& location,
           const BigInt& n);

}  // namespace ocmc
