#include "ocmc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ocmc/errors.hpp"
#include "ocmc/gadgets.hpp"
#include "ocmc/oracle.hpp"
#include "ocmc/periodic_set.hpp"
#include "ocmc/quotient.hpp"

namespace ocmc::acceptance {

namespace {

// Deterministic generator (splitmix64); identical instances for a given seed
// on every platform.
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

struct Failure {
  bool failed = false;
  std::string what;
  void hit(const std::string& msg) {
    if (!failed) what = msg;
    failed = true;
  }
};

// --- random instances ------------------------------------------------------

OneCounterProcess random_unit_ocp(Rng& rng) {
  int nloc = 1 + static_cast<int>(rng.below(3));
  std::vector<std::string> locs;
  for (int i = 0; i < nloc; ++i) locs.push_back("l" + std::to_string(i));
  std::map<std::string, std::vector<std::string>> props;
  for (const char* p : {"a", "b"}) {
    std::vector<std::string> on;
    for (const std::string& l : locs)
      if (rng.coin()) on.push_back(l);
    props[p] = on;
  }
  std::vector<TransitionRule> pos, zero;
  int npos = 1 + static_cast<int>(rng.below(6));
  for (int i = 0; i < npos; ++i)
    pos.push_back({static_cast<int>(rng.below(nloc)),
                   static_cast<long long>(rng.below(3)) - 1,
                   static_cast<int>(rng.below(nloc))});
  int nzero = static_cast<int>(rng.below(4));
  for (int i = 0; i < nzero; ++i)
    zero.push_back({static_cast<int>(rng.below(nloc)),
                    static_cast<long long>(rng.below(2)),
                    static_cast<int>(rng.below(nloc))});
  return OneCounterProcess(locs, props, zero, pos);
}

CtlFormula random_core_formula(Rng& rng, int depth) {
  if (depth == 0 || rng.below(100) < 35)
    return prop(rng.coin() ? "a" : "b");
  switch (rng.below(7)) {
    case 0:
    case 1: return neg(random_core_formula(rng, depth - 1));
    case 2: return conj(random_core_formula(rng, depth - 1), random_core_formula(rng, depth - 1));
    case 3:
    case 4: return exists_next(random_core_formula(rng, depth - 1));
    case 5: return exists_until(random_core_formula(rng, depth - 1),
                                random_core_formula(rng, depth - 1));
    default: return exists_weak_until(random_core_formula(rng, depth - 1),
                                      random_core_formula(rng, depth - 1));
  }
}

CtlFormula random_bounded_formula(Rng& rng, std::int64_t max_size, int max_lud) {
  while (true) {
    CtlFormula f = random_core_formula(rng, 3);
    if (formula_size(f) <= max_size && left_until_depth(f) <= max_lud) return f;
  }
}

QbfMatrix random_matrix(Rng& rng, int k, int connective_budget) {
  if (connective_budget <= 0 || rng.below(100) < 30)
    return QbfMatrix::leaf(1 + static_cast<int>(rng.below(k)));
  switch (rng.below(3)) {
    case 0: return QbfMatrix::negation(random_matrix(rng, k, connective_budget - 1));
    case 1: {
      int lhs = connective_budget / 2;
      return QbfMatrix::conjunction(random_matrix(rng, k, lhs),
                                    random_matrix(rng, k, connective_budget - 1 - lhs));
    }
    default: {
      int lhs = connective_budget / 2;
      return QbfMatrix::disjunction(random_matrix(rng, k, lhs),
                                    random_matrix(rng, k, connective_budget - 1 - lhs));
    }
  }
}

Qbf random_qbf(Rng& rng) {
  int k = 1 + static_cast<int>(rng.below(3));
  std::vector<Quant> quantifiers;
  for (int i = 0; i < k; ++i)
    quantifiers.push_back(rng.coin() ? Quant::Exists : Quant::ForAll);
  return Qbf{k, std::move(quantifiers), random_matrix(rng, k, 1 + static_cast<int>(rng.below(8)))};
}

CrrExpr random_crr_expr(Rng& rng, const std::vector<long long>& primes, int budget,
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

Nfa random_nfa(Rng& rng) {
  Nfa a;
  a.state_count = 1 + static_cast<int>(rng.below(4));
  a.initial = 0;
  for (int s = 0; s < a.state_count; ++s)
    if (rng.coin()) a.finals.push_back(s);
  int nt = 1 + static_cast<int>(rng.below(7));
  for (int i = 0; i < nt; ++i)
    a.transitions.push_back({static_cast<int>(rng.below(a.state_count)),
                             static_cast<int>(rng.below(2)),
                             static_cast<int>(rng.below(a.state_count))});
  return a;
}

UltimatelyPeriodicSet random_set(Rng& rng) {
  std::uint64_t t = rng.below(13);
  std::uint64_t k = 1 + rng.below(12);
  std::vector<char> pre(t), res(k);
  for (char& c : pre) c = rng.coin();
  for (char& c : res) c = rng.coin();
  return UltimatelyPeriodicSet(t, k, std::move(pre), std::move(res));
}

// --- criteria ---------------------------------------------------------------

bool divides_pow2(int i, std::uint64_t n) { return n % (std::uint64_t{1} << i) == 0; }
bool bit_of(int i, std::uint64_t n) { return (n >> (i - 1)) & 1; }

CriterionResult run_criterion(int id, const std::string& name, double budget_s,
                              const std::function<void(Failure&, std::string&)>& body) {
  Failure fail;
  std::string stats;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(fail, stats);
  } catch (const Error& e) {
    fail.hit(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_budget = secs < budget_s;
  if (!in_budget && !fail.failed) fail.hit("exceeded time budget");
  std::string detail = fail.failed ? fail.what : stats;
  return {id, name, !fail.failed, detail, secs};
}

CriterionResult criterion_div_family() {
  return run_criterion(1, "divisibility family on the fixed net", 60.0,
                       [](Failure& fail, std::string& stats) {
    OneCounterProcess net = fixed_ocn();
    int points = 0;
    for (int i = 1; i <= 6; ++i) {
      TruncatedEval ev(net, expand(div_formula(i)), 260);
      for (std::uint64_t n = 0; n <= 256; ++n) {
        Tv3 at_t = ev.value("t", n);
        Tv3 at_tbar = ev.value("tbar", n);
        Tv3 want_t = divides_pow2(i, n) ? Tv3::True : Tv3::False;
        Tv3 want_tbar = divides_pow2(i, n) ? Tv3::False : Tv3::True;
        if (at_t != want_t)
          fail.hit("i=" + std::to_string(i) + " n=" + std::to_string(n) + " at t");
        if (at_tbar != want_tbar)
          fail.hit("i=" + std::to_string(i) + " n=" + std::to_string(n) + " at tbar");
        points += 2;
      }
    }
    stats = std::to_string(points) + " verdicts exact";
  });
}

CriterionResult criterion_bit_family() {
  return run_criterion(2, "bit family on the fixed net", 60.0,
                       [](Failure& fail, std::string& stats) {
    OneCounterProcess net = fixed_ocn();
    int points = 0;
    for (int i = 1; i <= 6; ++i) {
      TruncatedEval ev(net, expand(bit_formula(i)), 260);
      for (std::uint64_t n = 0; n <= 256; ++n) {
        Tv3 got = ev.value("tbar", n);
        Tv3 want = bit_of(i, n) ? Tv3::True : Tv3::False;
        if (got != want) fail.hit("i=" + std::to_string(i) + " n=" + std::to_string(n));
        ++points;
      }
    }
    stats = std::to_string(points) + " verdicts exact";
  });
}

CriterionResult criterion_qbf(std::uint64_t seed) {
  return run_criterion(3, "quantified boolean reduction", 120.0,
                       [seed](Failure& fail, std::string& stats) {
    Rng rng(seed ^ 0x9bf1a4u);
    OneCounterProcess net = fixed_ocn();
    for (int trial = 0; trial < 50; ++trial) {
      Qbf alpha = random_qbf(rng);
      bool want = qbf_eval(alpha);
      Tv3 got = eval3(net, expand(qbf_to_ctl(alpha)), "tbar", 0, 64);
      if (got == Tv3::Unknown) {
        fail.hit("trial " + std::to_string(trial) + ": indefinite");
      } else if ((got == Tv3::True) != want) {
        fail.hit("trial " + std::to_string(trial) + ": verdict mismatch");
      }
    }
    stats = "50 formulas agree with brute force";
  });
}

CriterionResult criterion_formula_gadget(std::uint64_t seed) {
  return run_criterion(4, "formula gadget path equivalence", 60.0,
                       [seed](Failure& fail, std::string& stats) {
    Rng rng(seed ^ 0x51ef3cu);
    int points = 0;
    for (int m : {2, 3}) {
      std::vector<long long> primes = primes_unary(m);
      BigInt prod = 1;
      for (long long p : primes) prod *= p;
      for (int trial = 0; trial < 30; ++trial) {
        CrrFormula f =
            make_crr_formula(m, random_crr_expr(rng, primes, 1 + static_cast<int>(rng.below(6)),
                                                /*allow_negation=*/false));
        for (BigInt M = 0; M < prod; ++M) {
          bool via_path = phi_path_exists(f, M);
          bool via_eval = crr_eval(f, crr(m, M));
          if (via_path != via_eval)
            fail.hit("m=" + std::to_string(m) + " trial=" + std::to_string(trial) +
                     " M=" + M.str());
          ++points;
        }
      }
    }
    stats = std::to_string(points) + " (formula, counter) pairs agree";
  });
}

CriterionResult criterion_serialized(std::uint64_t seed) {
  return run_criterion(5, "serialized composition", 120.0,
                       [seed](Failure& fail, std::string& stats) {
    Rng rng(seed ^ 0xc0ffeeu);
    const int m = 2;
    std::vector<long long> primes = primes_unary(m);
    BigInt prod = 1;
    for (long long p : primes) prod *= p;
    const std::uint64_t ceiling = static_cast<std::uint64_t>(prod) + 1;
    for (int trial = 0; trial < 10; ++trial) {
      Nfa a = random_nfa(rng);
      CrrFormula f = make_crr_formula(
          m, random_crr_expr(rng, primes, 1 + static_cast<int>(rng.below(6)), true));
      SerializedReduction red = compose_serialized(f, a);
      bool want = nfa_accepts(a, serialized_word(f));
      Tv3 got = eval3(red.ocp, expand(red.formula), red.start_location, 0, ceiling);
      if (got == Tv3::Unknown) {
        fail.hit("trial " + std::to_string(trial) + ": indefinite");
      } else if ((got == Tv3::True) != want) {
        fail.hit("trial " + std::to_string(trial) + ": verdict mismatch");
      }
    }
    stats = "10 compositions agree with direct acceptance";
  });
}

void engine_agreement(std::uint64_t seed, Failure& fail6, std::string& stats6, Failure& fail7,
                      std::string& stats7) {
  Rng rng(seed ^ 0x715a2bu);
  long long checked = 0, periodic_points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    OneCounterProcess ocp = random_unit_ocp(rng);
    CtlFormula f = random_bounded_formula(rng, 8, 2);
    BoundParams bp = bound_params(ocp, f);
    std::uint64_t band_lo = static_cast<std::uint64_t>(bp.band_lo);
    std::uint64_t period = static_cast<std::uint64_t>(bp.K_phi);
    std::uint64_t ceiling = band_lo + 4 * period;
    TruncatedEval ev(ocp, f, ceiling);
    auto sets = label(ocp, f);
    for (int loc = 0; loc < ocp.location_count(); ++loc) {
      const UltimatelyPeriodicSet& s = sets.at(ocp.location_name(loc));
      for (std::uint64_t n = 0; n <= band_lo + 2 * period; ++n) {
        Tv3 v = ev.value(loc, n);
        if (v == Tv3::Unknown) continue;
        ++checked;
        if (s.member(n) != (v == Tv3::True))
          fail6.hit("trial " + std::to_string(trial) + " location " + ocp.location_name(loc) +
                    " n=" + std::to_string(n));
      }
      for (std::uint64_t n = band_lo; n <= band_lo + 3 * period; ++n) {
        bool here = s.member(n);
        if (here != s.member(n + period))
          fail7.hit("representation not periodic at n=" + std::to_string(n));
        Tv3 v = ev.value(loc, n);
        if (v != Tv3::Unknown && here != (v == Tv3::True))
          fail7.hit("set disagrees with a definite point at n=" + std::to_string(n));
        Tv3 v2 = ev.value(loc, n + period);
        if (v2 != Tv3::Unknown && s.member(n + period) != (v2 == Tv3::True))
          fail7.hit("set disagrees with a definite point at n=" + std::to_string(n + period));
        ++periodic_points;
      }
    }
  }
  stats6 = std::to_string(checked) + " definite points agree across 200 instances";
  stats7 = std::to_string(periodic_points) + " band points periodic and oracle-consistent";
}

CriterionResult criterion_unbounded_witness() {
  return run_criterion(8, "unbounded witness split", 1.0,
                       [](Failure& fail, std::string& stats) {
    OcpBuilder b;
    b.location("q");
    b.zero_rule("q", 1, "q");
    b.positive_rule("q", 1, "q");
    OneCounterProcess climb = b.build();
    CtlFormula always = exists_globally(top());
    for (const BigInt& n : {BigInt(0), BigInt(1), BigInt(1) << 64}) {
      if (!check(climb, always, "q", n)) fail.hit("quotient engine false at n=" + n.str());
    }
    bool indefinite = false;
    try {
      eval_definite(climb, expand(always), "q", 0, 64, 4096);
    } catch (const IndefiniteError&) {
      indefinite = true;
    }
    if (!indefinite) fail.hit("oracle unexpectedly produced a definite verdict");
    stats = "quotient decides, oracle reports indefinite";
  });
}

CriterionResult criterion_lcm_bounds() {
  return run_criterion(9, "LCM growth bounds", 1.0,
                       [](Failure& fail, std::string& stats) {
    for (std::uint64_t k = 9; k <= 15; ++k) {
      BigInt l = lcm_upto(k);
      BigInt lo = BigInt(1) << k;
      BigInt hi = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(k));
      if (l < lo || l > hi) fail.hit("bound violated at k=" + std::to_string(k));
    }
    stats = "k in [9,15] within bounds";
  });
}

CriterionResult criterion_set_algebra(std::uint64_t seed) {
  return run_criterion(10, "set algebra on the determining range", 30.0,
                       [seed](Failure& fail, std::string& stats) {
    Rng rng(seed ^ 0x5e7a19u);
    for (int trial = 0; trial < 500; ++trial) {
      UltimatelyPeriodicSet a = random_set(rng);
      UltimatelyPeriodicSet b = random_set(rng);
      UltimatelyPeriodicSet u = unite(a, b);
      UltimatelyPeriodicSet i = intersect(a, b);
      UltimatelyPeriodicSet ca = complement(a);
      std::uint64_t t = std::max(a.threshold(), b.threshold());
      std::uint64_t lcm = std::lcm(a.period(), b.period());
      for (std::uint64_t n = 0; n <= t + 3 * lcm; ++n) {
        bool an = a.member(n), bn = b.member(n);
        if (u.member(n) != (an || bn)) fail.hit("union wrong at n=" + std::to_string(n));
        if (i.member(n) != (an && bn)) fail.hit("intersection wrong at n=" + std::to_string(n));
        if (ca.member(n) != !an) fail.hit("complement wrong at n=" + std::to_string(n));
      }
      if (!equal(complement(ca), a)) fail.hit("double complement differs");
      if (!equal(complement(u), intersect(ca, complement(b)))) fail.hit("De Morgan fails");
      if (!equal(unite(a, i), a)) fail.hit("absorption fails");
      if (!equal(unite(a, ca), UltimatelyPeriodicSet::full_set())) fail.hit("a or not a isn't full");
      if (!equal(intersect(a, ca), UltimatelyPeriodicSet::empty_set()))
        fail.hit("a and not a isn't empty");
    }
    stats = "500 pairs satisfy the boolean identities";
  });
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_div_family());
  out.push_back(criterion_bit_family());
  out.push_back(criterion_qbf(seed));
  out.push_back(criterion_formula_gadget(seed));
  out.push_back(criterion_serialized(seed));
  {
    Failure fail6, fail7;
    std::string stats6, stats7;
    auto t0 = std::chrono::steady_clock::now();
    try {
      engine_agreement(seed, fail6, stats6, fail7, stats7);
    } catch (const Error& e) {
      fail6.hit(std::string("exception: ") + e.what());
      fail7.hit(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 600.0) fail6.hit("exceeded time budget");
    out.push_back({6, "engine agreement on random systems", !fail6.failed,
                   fail6.failed ? fail6.what : stats6, secs});
    out.push_back({7, "periodicity of labeled sets", !fail7.failed,
                   fail7.failed ? fail7.what : stats7, 0.0});
  }
  out.push_back(criterion_unbounded_witness());
  out.push_back(criterion_lcm_bounds());
  out.push_back(criterion_set_algebra(seed));
  return out;
}

bool report(const std::vector<CriterionResult>& results, std::ostream& os, bool show_timings) {
  bool all = true;
  for (const CriterionResult& r : results) {
    os << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name;
    if (!r.detail.empty()) os << " - " << r.detail;
    if (show_timings) {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(2);
      t << r.seconds;
      os << " (" << t.str() << " s)";
    }
    os << '\n';
    all = all && r.passed;
  }
  os << (all ? "all criteria passed" : "ACCEPTANCE FAILURES PRESENT") << '\n';
  return all;
}

}  // namespace ocmc::acceptance
