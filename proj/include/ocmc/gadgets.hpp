#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ocmc/bigint.hpp"
#include "ocmc/ctl.hpp"
#include "ocmc/ocp.hpp"

namespace ocmc {

// ---------------------------------------------------------------------------
// Small immutable boolean formula tree, parameterized by the leaf/variable
// type (plain index for QBF matrices, prime/residue pair for the Chinese
// remainder encoding).

template <typename VarT>
class BoolTree {
 public:
  enum class Kind { Var, Not, And, Or };

  static BoolTree leaf(VarT v) {
    return BoolTree(std::make_shared<Node>(Node{Kind::Var, std::move(v), nullptr, nullptr}));
  }
  static BoolTree negation(BoolTree a) {
    return BoolTree(std::make_shared<Node>(Node{Kind::Not, {}, a.node_, nullptr}));
  }
  static BoolTree conjunction(BoolTree a, BoolTree b) {
    return BoolTree(std::make_shared<Node>(Node{Kind::And, {}, a.node_, b.node_}));
  }
  static BoolTree disjunction(BoolTree a, BoolTree b) {
    return BoolTree(std::make_shared<Node>(Node{Kind::Or, {}, a.node_, b.node_}));
  }

  Kind kind() const { return node_->kind; }
  const VarT& variable() const { return node_->var; }
  BoolTree left() const { return BoolTree(node_->lhs); }
  BoolTree right() const { return BoolTree(node_->rhs); }

 private:
  struct Node {
    Kind kind;
    VarT var;
    std::shared_ptr<const Node> lhs, rhs;
  };
  explicit BoolTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Fixed OCN and the formula families interpreted over it.

// The ten-location OCN whose propositions coincide with its locations
// (t, tbar, q0..q3, f, g, p0, p1). Unit-step, and a net: every zero-mode
// rule is also a positive-mode rule.
OneCounterProcess fixed_ocn();

// Family expressing counter divisibility by 2^i over fixed_ocn(): holds at
// (t, n) iff 2^i divides n and at (tbar, n) iff it does not. i >= 1.
CtlFormula div_formula(int i);

// Family expressing "bit i of the counter is set" at (tbar, n). i >= 1.
CtlFormula bit_formula(int i);

// ---------------------------------------------------------------------------
// QBF and its reduction to model checking fixed_ocn().

enum class Quant : unsigned char { Exists, ForAll };

using QbfMatrix = BoolTree<int>;  // leaves are variable indices 1..var_count

// Prenex quantified boolean formula. quantifiers[0] is outermost and binds
// x_{var_count}; quantifiers[j] binds x_{var_count - j}.
struct Qbf {
  int var_count;
  std::vector<Quant> quantifiers;
  QbfMatrix matrix;
};

// Formula that holds at (tbar, 0) of fixed_ocn() iff the QBF is valid.
// The quantifier for x_i contributes one next-step (existential or
// universal) plus a counter climb of 2^{i-1} when x_i is set.
CtlFormula qbf_to_ctl(const Qbf& alpha);

// Brute-force validity by quantifier recursion; var_count <= 20.
bool qbf_eval(const Qbf& alpha);

// Text format: optional '#' comments, a header `p qbf <k>`, one quantifier
// line `e <i>` or `a <i>` per variable outermost-first (i = k down to 1),
// then the matrix as one expression line over x1..xk with ! & | and parens.
Qbf parse_qbf(std::string_view text);

// ---------------------------------------------------------------------------
// Primes, Chinese remainder representation, binary strings.

// The first m primes.
std::vector<long long> primes_unary(int m);

// Residues of one number modulo the first m primes; the assignment sets
// variable (i, r) exactly when M mod p_i = r.
struct CrrAssignment {
  std::vector<long long> primes;
  std::vector<long long> remainders;  // remainders[i-1] = M mod p_i

  bool value(int prime_index, long long residue) const {
    return remainders.at(prime_index - 1) == residue;
  }
};

// Requires 0 <= M < product of the first m primes.
CrrAssignment crr(int m, const BigInt& M);

// m-character binary representation of M, most significant bit first.
// Requires 0 <= M <= 2^m - 1.
std::string binary_string(int m, const BigInt& M);

// Variable "the counter is congruent `residue` modulo the `prime_index`-th
// prime" (prime_index is 1-based).
struct CrrVar {
  int prime_index;
  long long residue;
  friend bool operator==(const CrrVar&, const CrrVar&) = default;
};

using CrrExpr = BoolTree<CrrVar>;

// Boolean formula over residue variables of the first `prime_count` primes.
struct CrrFormula {
  int prime_count;
  std::vector<long long> primes;
  CrrExpr expr;
};

CrrFormula make_crr_formula(int m, CrrExpr expr);  // validates leaf ranges

bool negation_free(const CrrFormula& f);

// Push negations to the leaves, then replace each negated variable (i, r)
// by the disjunction of the other residues modulo p_i. Semantics over
// genuine-number assignments is unchanged.
CrrFormula eliminate_negations(const CrrFormula& f);

// Reference semantics of a formula under an assignment.
bool crr_eval(const CrrFormula& f, const CrrAssignment& a);

// Text format: a header `p crr <m>` and one expression line whose atoms are
// x<i>_<r>, e.g. `x1_0 & (x2_1 | !x2_2)`.
CrrFormula parse_crr_formula(std::string_view text);

// ---------------------------------------------------------------------------
// The counter-testing OCN of a negation-free formula. A path from (in, M)
// to (out, M) on which every state satisfies fixed_ef_formula() exists iff
// the formula evaluates to 1 under the residues of M.

// alpha -> EX (beta & EF !EX gamma); alpha marks variable entry points,
// beta the division loops, gamma the sink.
CtlFormula fixed_ef_formula();

struct CrrGadget {
  OneCounterProcess ocp;
  std::string in_location;
  std::string out_location;
};

// Requires a negation-free formula (ContractViolation otherwise). Division
// locations for all prime_count primes are always materialized.
CrrGadget build_ocn_of_formula(const CrrFormula& f);

// Decides existence of the constrained path for one 0 <= M < prod p_i by
// explicit search below counter M (all effects in the gadget are <= 0),
// with the per-state formula check done by the truncation oracle.
bool phi_path_exists(const CrrFormula& f, const BigInt& M);

// ---------------------------------------------------------------------------
// NFAs over {0,1} and the serialized composition.

struct Nfa {
  int state_count = 0;
  int initial = 0;
  std::vector<int> finals;                        // sorted, unique
  std::vector<std::array<int, 3>> transitions;    // {src, symbol, dst}
};

void validate_nfa(const Nfa& a);

// Subset simulation over the word (characters '0'/'1').
bool nfa_accepts(const Nfa& a, std::string_view word);

// Text format, '#' comments:
//   states <n>      states are 0..n-1
//   init <i>
//   final <i> [...]
//   t <src> <0|1> <dst>
Nfa parse_nfa(std::string_view text);

// The word F(crr(0)) F(crr(1)) ... F(crr(2^m - 1)) for m = f.prime_count.
std::string serialized_word(const CrrFormula& f);

// The goal formula: the conjunction over i of variable (i, 2^m mod p_i),
// satisfied by residue tuples of exactly the counter value 2^m.
CrrFormula default_goal_formula(int m);

// One copy of the gadget for (f and not g) per 1-labeled NFA transition and
// of (not f and not g) per 0-labeled transition, wired along the automaton;
// final states feed a copy of the gadget for g whose out location carries a
// fresh proposition rho. Starting at (start_location, 0), the returned
// formula E[ phi U rho ] holds iff the automaton accepts serialized_word(f).
struct SerializedReduction {
  OneCounterProcess ocp;
  std::string start_location;
  CtlFormula formula;
};

SerializedReduction compose_serialized(const CrrFormula& f, const CrrFormula& g, const Nfa& a);
SerializedReduction compose_serialized(const CrrFormula& f, const Nfa& a);  // default goal

}  // namespace ocmc
