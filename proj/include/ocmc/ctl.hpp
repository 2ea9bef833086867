#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace ocmc {

// Proposition name reserved for the tautology/contradiction used when
// rewriting sugared operators into the core grammar. No system may label it,
// and the formula parser rejects it, so its extension is empty everywhere.
inline constexpr std::string_view kReservedProp = "_tt";

enum class CtlKind {
  // core connectives
  Prop,
  Not,
  And,
  ExistsNext,
  ExistsUntil,
  ExistsWeakUntil,
  // sugar, kept as written until expand() is called
  Or,
  Implies,
  ForallNext,
  ExistsFinally,
  ExistsGlobally,
  True,
  False,
};

// Immutable formula tree with shared subterms. Copies are cheap and
// safe to share across threads.
class CtlFormula {
 public:
  CtlKind kind() const;
  bool is(CtlKind k) const { return kind() == k; }

  // Prop only.
  const std::string& prop_name() const;

  // Unary operand / left operand of a binary connective.
  CtlFormula left() const;
  // Right operand of a binary connective.
  CtlFormula right() const;

  bool operator==(const CtlFormula& other) const;
  bool operator!=(const CtlFormula& other) const { return !(*this == other); }

  // Stable identity of the underlying node, usable as a memo key while
  // this formula (or any copy) is alive.
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit CtlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static CtlFormula make(CtlKind k, std::string atom,
                         std::shared_ptr<const Node> lhs,
                         std::shared_ptr<const Node> rhs);
  std::shared_ptr<const Node> node_;

  friend CtlFormula prop(std::string name);
  friend CtlFormula neg(CtlFormula f);
  friend CtlFormula conj(CtlFormula a, CtlFormula b);
  friend CtlFormula disj(CtlFormula a, CtlFormula b);
  friend CtlFormula implies(CtlFormula a, CtlFormula b);
  friend CtlFormula exists_next(CtlFormula f);
  friend CtlFormula forall_next(CtlFormula f);
  friend CtlFormula exists_until(CtlFormula a, CtlFormula b);
  friend CtlFormula exists_weak_until(CtlFormula a, CtlFormula b);
  friend CtlFormula exists_finally(CtlFormula f);
  friend CtlFormula exists_globally(CtlFormula f);
  friend CtlFormula top();
  friend CtlFormula bot();
};

struct CtlFormula::Node {
  CtlKind kind;
  std::string atom;                       // Prop
  std::shared_ptr<const Node> lhs, rhs;   // children where applicable
};

inline CtlKind CtlFormula::kind() const { return node_->kind; }

CtlFormula prop(std::string name);
CtlFormula neg(CtlFormula f);
CtlFormula conj(CtlFormula a, CtlFormula b);
CtlFormula disj(CtlFormula a, CtlFormula b);
CtlFormula implies(CtlFormula a, CtlFormula b);
CtlFormula exists_next(CtlFormula f);
CtlFormula forall_next(CtlFormula f);
CtlFormula exists_until(CtlFormula a, CtlFormula b);
CtlFormula exists_weak_until(CtlFormula a, CtlFormula b);
CtlFormula exists_finally(CtlFormula f);
CtlFormula exists_globally(CtlFormula f);
CtlFormula top();
CtlFormula bot();

// True iff the tree uses only core connectives.
bool is_core(const CtlFormula& f);

// Rewrite sugar into the core grammar:
//   a|b = !(!a & !b),  AX a = !EX !a,  a->b = !a | b (then expanded),
//   EF a = E[(p|!p) U a],  EG a = E[a W (p&!p)],  with p the reserved
//   proposition. Identity on formulas that are already core (the very same
//   nodes are returned, so expansion is idempotent).
CtlFormula expand(const CtlFormula& f);

// Size measure on core formulas: |p|=1, |!f|=|EX f|=|f|+1, binary
// connectives add their operands plus one. Throws ContractViolation on
// sugared input; callers expand first.
std::int64_t formula_size(const CtlFormula& f);

// Nesting depth counting only descents into the left argument of an
// until/weak-until; governs the period of satisfaction sets. Core only.
int left_until_depth(const CtlFormula& f);

// Concrete syntax:
//   atoms are identifiers; true, false; !f; f & g; f | g; f -> g;
//   EX f; AX f; EF f; EG f; E[ f U g ]; E[ f W g ]; parentheses.
// Precedence: unary > & > | > ->. Rejects the reserved proposition.
CtlFormula parse_formula(std::string_view text);
std::string format_formula(const CtlFormula& f);

}  // namespace ocmc
