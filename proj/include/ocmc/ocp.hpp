#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocmc/bigint.hpp"

namespace ocmc {

// One transition rule; whether it is a zero-mode or positive-mode rule is
// determined by which rule set of the process it belongs to. Locations are
// stored as indices into the owning process's location list.
struct TransitionRule {
  int source;
  long long effect;
  int target;

  friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

// Finite control of a one-counter process: locations, proposition labeling
// and the two rule sets (applicable at counter zero / at positive counter).
// Immutable after construction; safe to share across threads.
class OneCounterProcess {
 public:
  // Validates and canonicalizes:
  //  - location ids unique, everything referenced is declared,
  //  - zero-mode effects nonnegative,
  //  - the reserved proposition name must not be labeled,
  //  - duplicate rules collapse (rule sets are sets).
  // Throws InputError on violations.
  OneCounterProcess(std::vector<std::string> locations,
                    std::map<std::string, std::vector<std::string>> propositions,
                    std::vector<TransitionRule> zero_rules,
                    std::vector<TransitionRule> positive_rules);

  const std::vector<std::string>& locations() const { return locations_; }
  int location_count() const { return static_cast<int>(locations_.size()); }

  // Index of a declared location; throws InputError for unknown names.
  int location_index(std::string_view name) const;
  const std::string& location_name(int index) const { return locations_.at(index); }

  // Proposition name -> sorted location indices. Ordered map so iteration
  // is deterministic.
  const std::map<std::string, std::vector<int>>& propositions() const { return props_; }
  bool labels(const std::string& prop_name, int location) const;

  const std::vector<TransitionRule>& zero_rules() const { return zero_rules_; }
  const std::vector<TransitionRule>& positive_rules() const { return positive_rules_; }

 private:
  std::vector<std::string> locations_;
  std::unordered_map<std::string, int> index_;
  std::map<std::string, std::vector<int>> props_;
  std::vector<TransitionRule> zero_rules_, positive_rules_;
};

// A state of the induced infinite transition system.
struct State {
  int location;
  BigInt counter;  // >= 0

  friend bool operator==(const State&, const State&) = default;
};

// Helper for assembling processes by name; gadget constructors and the text
// format parser use this.
class OcpBuilder {
 public:
  OcpBuilder& location(std::string id);
  OcpBuilder& label(const std::string& prop_name, const std::string& location_id);
  OcpBuilder& zero_rule(const std::string& src, long long effect, const std::string& dst);
  OcpBuilder& positive_rule(const std::string& src, long long effect, const std::string& dst);
  bool has_location(const std::string& id) const;
  OneCounterProcess build() const;

 private:
  int index_of(const std::string& id) const;  // throws InputError when unknown
  std::vector<std::string> locations_;
  std::unordered_map<std::string, int> index_;
  std::map<std::string, std::vector<std::string>> props_;
  std::vector<TransitionRule> zero_, positive_;
};

// All one-step successors of `s`: zero-mode rules when the counter is zero,
// positive-mode rules (with targets clamped out when they would go negative)
// otherwise. Sorted by (target location, effect). Throws InputError if the
// state's location is out of range.
std::vector<State> successors(const OneCounterProcess& ocp, const State& s);

// True iff every zero-mode rule also occurs as a positive-mode rule.
bool is_ocn(const OneCounterProcess& ocp);

// True iff all effects are in {-1, 0, +1}.
bool is_unit_step(const OneCounterProcess& ocp);

// Text format, one directive per line, '#' starts a comment:
//   loc <id> [<id> ...]
//   prop <name> <loc> [<loc> ...]
//   t0 <src> <delta> <dst>     zero-mode rule
//   tp <src> <delta> <dst>     positive-mode rule
OneCounterProcess parse_ocp(std::string_view text);
std::string format_ocp(const OneCounterProcess& ocp);

}  // namespace ocmc
