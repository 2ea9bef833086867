#include <doctest.h>

#include <set>

#include "ocmc/errors.hpp"
#include "ocmc/gadgets.hpp"
#include "ocmc/oracle.hpp"
#include "test_util.hpp"

using namespace ocmc;

namespace {

bool oracle_true(const OneCounterProcess& o, const CtlFormula& f, const std::string& loc,
                 std::uint64_t n, std::uint64_t ceiling) {
  Tv3 v = eval3(o, expand(f), loc, n, ceiling);
  REQUIRE(v != Tv3::Unknown);
  return v == Tv3::True;
}

CrrExpr random_crr_expr(testutil::Rng& rng, const std::vector<long long>& primes, int budget,
                        bool allow_negation) {
  if (budget <= 0 || rng.below(100) < 35) {
    int i = 1 + static_cast<int>(rng.below(primes.size()));
    long long p = primes[static_cast<std::size_t>(i - 1)];
    return CrrExpr::leaf({i, static_cast<long long>(rng.below(static_cast<std::uint64_t>(p)))});
  }
  std::uint64_t pick = rng.below(allow_negation ? 3 : 2);
  if (allow_negation && pick == 2)
    return CrrExpr::negation(random_crr_expr(rng, primes, budget - 1, allow_negation));
  int lhs = budget / 2;
  CrrExpr l = random_crr_expr(rng, primes, lhs, allow_negation);
  CrrExpr r = random_crr_expr(rng, primes, budget - 1 - lhs, allow_negation);
  return pick == 0 ? CrrExpr::conjunction(l, r) : CrrExpr::disjunction(l, r);
}

}  // namespace

TEST_CASE("the fixed net is a unit-step net with ten locations") {
  OneCounterProcess net = fixed_ocn();
  CHECK(net.location_count() == 10);
  CHECK(is_ocn(net));
  CHECK(is_unit_step(net));
  for (const std::string& l : net.locations()) CHECK(net.labels(l, net.location_index(l)));
}

TEST_CASE("counting characterizations of divisibility and bits") {
  // the arithmetic facts the two formula families encode; they certify the
  // expected values used by the lemma-style suites
  for (std::uint64_t n = 0; n <= 1024; ++n) {
    for (int i = 1; i <= 8; ++i) {
      std::uint64_t low = std::uint64_t{1} << (i - 1);
      std::uint64_t count = n / low;  // multiples of 2^{i-1} in [1, n]
      bool div_high = n % (low * 2) == 0;
      bool div_low = n % low == 0;
      CHECK(div_high == (div_low && count % 2 == 0));
      bool bit = (n >> (i - 1)) & 1;
      CHECK(bit == (count % 2 == 1));
    }
  }
}

TEST_CASE("divisibility formulas hold at zero for every index") {
  OneCounterProcess net = fixed_ocn();
  for (int i = 1; i <= 6; ++i) CHECK(oracle_true(net, div_formula(i), "t", 0, 16));
}

TEST_CASE("divisibility instances split by location") {
  OneCounterProcess net = fixed_ocn();
  CHECK(oracle_true(net, div_formula(2), "t", 4, 10));
  CHECK_FALSE(oracle_true(net, div_formula(2), "t", 2, 10));
  CHECK(oracle_true(net, div_formula(2), "tbar", 2, 10));
}

TEST_CASE("formula families grow linearly") {
  auto sz = [](int i) { return formula_size(expand(div_formula(i))); };
  CHECK(sz(6) - sz(5) == sz(5) - sz(4));
  CHECK(sz(5) - sz(4) == sz(4) - sz(3));
  auto bz = [](int i) { return formula_size(expand(bit_formula(i))); };
  CHECK(bz(6) - bz(5) == bz(5) - bz(4));
}

TEST_CASE("family constructors reject nonpositive indices") {
  CHECK_THROWS_AS(div_formula(0), InputError);
  CHECK_THROWS_AS(bit_formula(0), InputError);
  CHECK_THROWS_AS(bit_formula(-3), InputError);
}

TEST_CASE("bit instances") {
  OneCounterProcess net = fixed_ocn();
  CHECK(oracle_true(net, bit_formula(1), "tbar", 5, 12));
  CHECK_FALSE(oracle_true(net, bit_formula(1), "tbar", 4, 12));
  CHECK(oracle_true(net, bit_formula(3), "tbar", 4, 12));
  for (int i = 1; i <= 6; ++i) CHECK_FALSE(oracle_true(net, bit_formula(i), "tbar", 0, 16));
}

TEST_CASE("QBF validity by brute force") {
  QbfMatrix x1 = QbfMatrix::leaf(1);
  CHECK(qbf_eval({1, {Quant::Exists}, x1}));
  CHECK_FALSE(qbf_eval({1, {Quant::ForAll}, x1}));
  QbfMatrix both = QbfMatrix::disjunction(
      QbfMatrix::conjunction(QbfMatrix::leaf(1), QbfMatrix::leaf(2)),
      QbfMatrix::conjunction(QbfMatrix::negation(QbfMatrix::leaf(1)),
                             QbfMatrix::negation(QbfMatrix::leaf(2))));
  CHECK(qbf_eval({2, {Quant::ForAll, Quant::Exists}, both}));
  CHECK_THROWS_AS(qbf_eval({21, std::vector<Quant>(21, Quant::Exists), x1}), InputError);
  CHECK_THROWS_AS(qbf_eval({1, {Quant::Exists}, QbfMatrix::leaf(2)}), InputError);
}

TEST_CASE("the reduction formula matches brute-force validity") {
  OneCounterProcess net = fixed_ocn();
  QbfMatrix x1 = QbfMatrix::leaf(1);
  CHECK(oracle_true(net, qbf_to_ctl({1, {Quant::Exists}, x1}), "tbar", 0, 16));
  CHECK_FALSE(oracle_true(net, qbf_to_ctl({1, {Quant::ForAll}, x1}), "tbar", 0, 16));
  QbfMatrix both = QbfMatrix::disjunction(
      QbfMatrix::conjunction(QbfMatrix::leaf(1), QbfMatrix::leaf(2)),
      QbfMatrix::conjunction(QbfMatrix::negation(QbfMatrix::leaf(1)),
                             QbfMatrix::negation(QbfMatrix::leaf(2))));
  Qbf alpha{2, {Quant::ForAll, Quant::Exists}, both};
  CHECK(qbf_eval(alpha));
  CHECK(oracle_true(net, qbf_to_ctl(alpha), "tbar", 0, 32));
}

TEST_CASE("random reductions agree with brute force") {
  testutil::Rng rng(71);
  OneCounterProcess net = fixed_ocn();
  for (int trial = 0; trial < 15; ++trial) {
    int k = 1 + static_cast<int>(rng.below(3));
    std::vector<Quant> quantifiers;
    for (int i = 0; i < k; ++i)
      quantifiers.push_back(rng.coin() ? Quant::Exists : Quant::ForAll);
    std::function<QbfMatrix(int)> grow = [&](int budget) -> QbfMatrix {
      if (budget <= 0 || rng.below(100) < 30)
        return QbfMatrix::leaf(1 + static_cast<int>(rng.below(k)));
      switch (rng.below(3)) {
        case 0: return QbfMatrix::negation(grow(budget - 1));
        case 1: return QbfMatrix::conjunction(grow(budget / 2), grow(budget - 1 - budget / 2));
        default: return QbfMatrix::disjunction(grow(budget / 2), grow(budget - 1 - budget / 2));
      }
    };
    Qbf alpha{k, std::move(quantifiers), grow(6)};
    CHECK(oracle_true(net, qbf_to_ctl(alpha), "tbar", 0, 64) == qbf_eval(alpha));
  }
}

TEST_CASE("QBF text format parses and validates") {
  Qbf alpha = parse_qbf("# comment\np qbf 2\na 2\ne 1\n(x1 & x2) | !x1\n");
  CHECK(alpha.var_count == 2);
  CHECK(alpha.quantifiers[0] == Quant::ForAll);
  CHECK(alpha.quantifiers[1] == Quant::Exists);
  CHECK(qbf_eval(alpha));

  CHECK_THROWS_AS(parse_qbf("p qbf 2\ne 1\na 2\nx1\n"), ParseError);  // wrong order
  CHECK_THROWS_AS(parse_qbf("p qbf 1\ne 1\nx2\n"), ParseError);       // unbound variable
  CHECK_THROWS_AS(parse_qbf("p qbf 1\ne 1\n"), ParseError);           // missing matrix
  CHECK_THROWS_AS(parse_qbf("p qbf 0\n"), ParseError);
}

TEST_CASE("prime and representation utilities") {
  CHECK(primes_unary(3) == std::vector<long long>{2, 3, 5});
  CHECK(primes_unary(0).empty());

  CrrAssignment a = crr(2, 4);
  CHECK(a.remainders == std::vector<long long>{0, 1});
  CHECK(a.value(1, 0));
  CHECK(a.value(2, 1));
  CHECK_FALSE(a.value(2, 2));
  CHECK_THROWS_AS(crr(2, 6), InputError);
  CHECK_THROWS_AS(crr(2, BigInt(-1)), InputError);

  CHECK(binary_string(3, 5) == "101");
  CHECK(binary_string(1, 0) == "0");
  CHECK(binary_string(4, 15) == "1111");
  CHECK_THROWS_AS(binary_string(3, 8), InputError);
}

TEST_CASE("negation elimination rewrites variables by residue complement") {
  CrrFormula f1 = make_crr_formula(2, CrrExpr::negation(CrrExpr::leaf({1, 0})));
  CrrFormula e1 = eliminate_negations(f1);
  CHECK(negation_free(e1));
  CHECK(e1.expr.kind() == CrrExpr::Kind::Var);
  CHECK(e1.expr.variable() == CrrVar{1, 1});

  CrrFormula f2 = make_crr_formula(2, CrrExpr::negation(CrrExpr::leaf({2, 1})));
  CrrFormula e2 = eliminate_negations(f2);
  CHECK(e2.expr.kind() == CrrExpr::Kind::Or);
  CHECK(e2.expr.left().variable() == CrrVar{2, 0});
  CHECK(e2.expr.right().variable() == CrrVar{2, 2});

  CrrFormula plain = make_crr_formula(2, CrrExpr::conjunction(CrrExpr::leaf({1, 1}),
                                                              CrrExpr::leaf({2, 2})));
  CHECK(negation_free(plain));
  CHECK(negation_free(eliminate_negations(plain)));
}

TEST_CASE("negation elimination preserves semantics over genuine numbers") {
  testutil::Rng rng(73);
  for (int m : {2, 3}) {
    std::vector<long long> primes = primes_unary(m);
    BigInt prod = 1;
    for (long long p : primes) prod *= p;
    for (int trial = 0; trial < 40; ++trial) {
      CrrFormula f = make_crr_formula(m, random_crr_expr(rng, primes, 6, true));
      CrrFormula e = eliminate_negations(f);
      CHECK(negation_free(e));
      for (BigInt M = 0; M < prod; ++M)
        CHECK(crr_eval(f, crr(m, M)) == crr_eval(e, crr(m, M)));
    }
  }
}

TEST_CASE("the gadget of a single variable has the expected shape") {
  CrrFormula f = make_crr_formula(2, CrrExpr::leaf({1, 0}));
  CrrGadget g = build_ocn_of_formula(f);
  CHECK(g.ocp.location_count() == 5);  // in, out, two division loops, sink
  CHECK(is_ocn(g.ocp));
  CHECK_THROWS_AS(build_ocn_of_formula(make_crr_formula(2, CrrExpr::negation(CrrExpr::leaf({1, 0})))),
                  ContractViolation);
}

TEST_CASE("the path formula holds vacuously off the variable entries") {
  CrrFormula f = make_crr_formula(2, CrrExpr::leaf({1, 0}));
  CrrGadget g = build_ocn_of_formula(f);
  for (std::uint64_t c = 0; c <= 4; ++c) {
    CHECK(oracle_true(g.ocp, fixed_ef_formula(), "div2", c, 6));
    CHECK(oracle_true(g.ocp, fixed_ef_formula(), "div3", c, 6));
    CHECK(oracle_true(g.ocp, fixed_ef_formula(), "out0", c, 6));
  }
}

TEST_CASE("the path formula tests congruence at variable entries") {
  CHECK(left_until_depth(expand(fixed_ef_formula())) == 1);
  for (long long pi : {1, 2}) {
    std::vector<long long> primes = primes_unary(2);
    long long p = primes[static_cast<std::size_t>(pi - 1)];
    for (long long r = 0; r < p; ++r) {
      CrrFormula f = make_crr_formula(2, CrrExpr::leaf({static_cast<int>(pi), r}));
      CrrGadget g = build_ocn_of_formula(f);
      for (std::uint64_t n = 0; n <= 20; ++n) {
        bool want = (static_cast<long long>(n) % p) == r;
        CHECK(oracle_true(g.ocp, fixed_ef_formula(), g.in_location, n, 24) == want);
      }
    }
  }
}

TEST_CASE("path existence instances") {
  CrrFormula f = make_crr_formula(2, CrrExpr::leaf({1, 0}));
  for (std::uint64_t M = 0; M <= 5; ++M)
    CHECK(phi_path_exists(f, M) == (M % 2 == 0));

  CrrFormula g = make_crr_formula(2, CrrExpr::conjunction(CrrExpr::leaf({1, 0}),
                                                          CrrExpr::leaf({2, 1})));
  CHECK(phi_path_exists(g, 4));
  CHECK_FALSE(phi_path_exists(g, 2));
  CHECK_THROWS_AS(phi_path_exists(g, 6), InputError);
}

TEST_CASE("path existence equals direct evaluation on random formulas") {
  testutil::Rng rng(79);
  for (int m : {2, 3}) {
    std::vector<long long> primes = primes_unary(m);
    BigInt prod = 1;
    for (long long p : primes) prod *= p;
    for (int trial = 0; trial < 10; ++trial) {
      CrrFormula f = make_crr_formula(m, random_crr_expr(rng, primes, 5, false));
      for (BigInt M = 0; M < prod; ++M)
        CHECK(phi_path_exists(f, M) == crr_eval(f, crr(m, M)));
    }
  }
}

TEST_CASE("NFA acceptance by subset simulation") {
  Nfa contains_one;
  contains_one.state_count = 2;
  contains_one.initial = 0;
  contains_one.finals = {1};
  contains_one.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  CHECK(nfa_accepts(contains_one, "1010"));
  CHECK_FALSE(nfa_accepts(contains_one, "0000"));
  CHECK_FALSE(nfa_accepts(contains_one, ""));

  Nfa no_finals;
  no_finals.state_count = 1;
  CHECK_FALSE(nfa_accepts(no_finals, ""));
  CHECK_THROWS_AS(nfa_accepts(contains_one, "102"), InputError);
}

TEST_CASE("NFA acceptance agrees with explicit path enumeration") {
  testutil::Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    Nfa a;
    a.state_count = 1 + static_cast<int>(rng.below(3));
    a.initial = 0;
    for (int s = 0; s < a.state_count; ++s)
      if (rng.coin()) a.finals.push_back(s);
    int nt = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < nt; ++i)
      a.transitions.push_back({static_cast<int>(rng.below(a.state_count)),
                               static_cast<int>(rng.below(2)),
                               static_cast<int>(rng.below(a.state_count))});
    std::string w;
    int len = static_cast<int>(rng.below(7));
    for (int i = 0; i < len; ++i) w.push_back(rng.coin() ? '1' : '0');

    // brute force: follow every path
    std::function<bool(int, std::size_t)> walk = [&](int s, std::size_t pos) -> bool {
      if (pos == w.size())
        return std::find(a.finals.begin(), a.finals.end(), s) != a.finals.end();
      for (const auto& t : a.transitions)
        if (t[0] == s && t[1] == w[pos] - '0' && walk(t[2], pos + 1)) return true;
      return false;
    };
    CHECK(nfa_accepts(a, w) == walk(a.initial, 0));
  }
}

TEST_CASE("NFA text format") {
  Nfa a = parse_nfa("# two states\nstates 2\ninit 0\nfinal 1\nt 0 1 1\nt 1 0 1\n");
  CHECK(a.state_count == 2);
  CHECK(nfa_accepts(a, "10"));
  CHECK_THROWS_AS(parse_nfa("init 0\n"), ParseError);
  CHECK_THROWS_AS(parse_nfa("states 1\nt 0 2 0\n"), ParseError);
}

TEST_CASE("the goal formula pins the counter to a power of two") {
  CrrFormula g = default_goal_formula(2);
  CHECK(g.expr.kind() == CrrExpr::Kind::And);
  CHECK(g.expr.left().variable() == CrrVar{1, 0});   // 4 mod 2
  CHECK(g.expr.right().variable() == CrrVar{2, 1});  // 4 mod 3
  for (BigInt M = 0; M < 6; ++M)
    CHECK(crr_eval(g, crr(2, M)) == (M == 4));
}

TEST_CASE("serialized words read off the formula at consecutive counters") {
  CrrFormula f = make_crr_formula(2, CrrExpr::leaf({1, 0}));
  CHECK(serialized_word(f) == "1010");
}

TEST_CASE("composition decides acceptance of the serialized word") {
  Nfa contains_one;
  contains_one.state_count = 2;
  contains_one.initial = 0;
  contains_one.finals = {1};
  contains_one.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};

  CrrFormula even = make_crr_formula(2, CrrExpr::leaf({1, 0}));
  SerializedReduction red = compose_serialized(even, contains_one);
  CHECK(oracle_true(red.ocp, red.formula, red.start_location, 0, 7));

  // unsatisfiable formula: the word is 0000 and the automaton rejects it
  CrrFormula nothing = make_crr_formula(2, CrrExpr::conjunction(CrrExpr::leaf({1, 0}),
                                                                CrrExpr::leaf({1, 1})));
  CHECK(serialized_word(nothing) == "0000");
  SerializedReduction red0 = compose_serialized(nothing, contains_one);
  CHECK_FALSE(oracle_true(red0.ocp, red0.formula, red0.start_location, 0, 7));

  CrrFormula other = make_crr_formula(3, CrrExpr::leaf({1, 0}));
  CHECK_THROWS_AS(compose_serialized(even, other, contains_one), InputError);
}

TEST_CASE("CRR formula text format") {
  CrrFormula f = parse_crr_formula("p crr 2\nx1_0 & (x2_1 | !x2_2)\n");
  CHECK(f.prime_count == 2);
  CHECK_FALSE(negation_free(f));
  CHECK(crr_eval(f, crr(2, 4)));
  CHECK_THROWS_AS(parse_crr_formula("p crr 2\nx1_5\n"), ParseError);
  CHECK_THROWS_AS(parse_crr_formula("p crr 2\nx3_0\n"), ParseError);
  CHECK_THROWS_AS(parse_crr_formula("x1_0\n"), ParseError);
}
