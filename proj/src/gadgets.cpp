#include "ocmc/gadgets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "ocmc/errors.hpp"
#include "ocmc/oracle.hpp"

namespace ocmc {

// ---------------------------------------------------------------------------
// Fixed OCN (ten locations, each labeled by its own proposition).

OneCounterProcess fixed_ocn() {
  OcpBuilder b;
  const char* locs[] = {"t", "tbar", "q0", "q1", "q2", "q3", "f", "g", "p0", "p1"};
  for (const char* l : locs) b.location(l);
  for (const char* l : locs) b.label(l, l);

  // positive-mode rules
  b.positive_rule("q1", -1, "q1");
  b.positive_rule("q3", -1, "q3");
  b.positive_rule("q0", -1, "q1");
  b.positive_rule("q1", -1, "q2");
  b.positive_rule("q2", -1, "q3");
  b.positive_rule("q3", -1, "q0");
  b.positive_rule("q0", 0, "t");
  b.positive_rule("t", 0, "q0");
  b.positive_rule("q1", 0, "tbar");
  b.positive_rule("tbar", 0, "q1");
  b.positive_rule("tbar", 0, "q2");
  b.positive_rule("q3", 0, "tbar");
  b.positive_rule("tbar", 0, "q3");
  b.positive_rule("q2", 0, "t");
  b.positive_rule("t", 0, "f");
  b.positive_rule("tbar", -1, "f");
  b.positive_rule("g", -1, "f");
  b.positive_rule("f", -1, "g");
  b.positive_rule("tbar", 1, "p1");
  b.positive_rule("p1", 0, "tbar");
  b.positive_rule("p0", 0, "tbar");
  b.positive_rule("tbar", 0, "p0");
  b.positive_rule("p1", 1, "p1");

  // zero-mode rules (a subset of the positive-mode ones)
  b.zero_rule("t", 0, "q0");
  b.zero_rule("t", 0, "f");
  b.zero_rule("tbar", 1, "p1");
  b.zero_rule("p0", 0, "tbar");
  b.zero_rule("tbar", 0, "p0");
  return b.build();
}

namespace {

CtlFormula either_test() { return disj(prop("t"), prop("tbar")); }

CtlFormula diamond() {
  return disj(disj(disj(prop("q0"), prop("q1")), prop("q2")), prop("q3"));
}

// The shared until: walk down the diamond checking the next-step divisibility
// probe, ending at q0 with counter zero (the only deadlocked q0).
CtlFormula descent_until(const CtlFormula& prev_div) {
  CtlFormula left = conj(diamond(), exists_next(prev_div));
  CtlFormula right = conj(prop("q0"), neg(exists_next(prop("q1"))));
  return exists_until(left, right);
}

}  // namespace

CtlFormula div_formula(int i) {
  if (i < 1) throw InputError("div_formula requires i >= 1");
  // base: bounce between f and g down to the deadlock (f, 0)
  CtlFormula cur =
      conj(either_test(),
           exists_next(conj(prop("f"), exists_finally(conj(prop("f"), neg(exists_next(prop("g"))))))));
  for (int level = 2; level <= i; ++level)
    cur = conj(either_test(), exists_next(descent_until(cur)));
  return cur;
}

CtlFormula bit_formula(int i) {
  if (i < 1) throw InputError("bit_formula requires i >= 1");
  if (i == 1) return div_formula(1);
  CtlFormula mu = descent_until(div_formula(i - 1));
  return conj(prop("tbar"), exists_next(conj(disj(prop("q1"), prop("q2")), mu)));
}

// ---------------------------------------------------------------------------
// QBF.

namespace {

void validate_matrix(const QbfMatrix& m, int var_count) {
  switch (m.kind()) {
    case QbfMatrix::Kind::Var:
      if (m.variable() < 1 || m.variable() > var_count)
        throw InputError("matrix variable x" + std::to_string(m.variable()) +
                         " is not bound (k = " + std::to_string(var_count) + ")");
      return;
    case QbfMatrix::Kind::Not:
      validate_matrix(m.left(), var_count);
      return;
    default:
      validate_matrix(m.left(), var_count);
      validate_matrix(m.right(), var_count);
      return;
  }
}

void validate_qbf(const Qbf& alpha) {
  if (alpha.var_count < 1) throw InputError("QBF needs at least one variable");
  if (static_cast<int>(alpha.quantifiers.size()) != alpha.var_count)
    throw InputError("QBF quantifier count does not match variable count");
  validate_matrix(alpha.matrix, alpha.var_count);
}

CtlFormula substitute_bits(const QbfMatrix& m) {
  switch (m.kind()) {
    case QbfMatrix::Kind::Var:
      return bit_formula(m.variable());
    case QbfMatrix::Kind::Not:
      return neg(substitute_bits(m.left()));
    case QbfMatrix::Kind::And:
      return conj(substitute_bits(m.left()), substitute_bits(m.right()));
    case QbfMatrix::Kind::Or:
      return disj(substitute_bits(m.left()), substitute_bits(m.right()));
  }
  throw ContractViolation("unreachable matrix kind");
}

}  // namespace

CtlFormula qbf_to_ctl(const Qbf& alpha) {
  validate_qbf(alpha);
  const int k = alpha.var_count;
  auto quant_for = [&](int i) { return alpha.quantifiers[static_cast<std::size_t>(k - i)]; };
  CtlFormula p01 = disj(prop("p0"), prop("p1"));
  CtlFormula th = top();  // replaced in the first iteration
  for (int i = 1; i <= k; ++i) {
    CtlFormula body = top();
    if (i == 1) {
      // innermost: one step to p0/p1 decides x1, one more lands on tbar
      // where the matrix is read off the counter bits
      body = exists_next(conj(prop("tbar"), substitute_bits(alpha.matrix)));
    } else {
      // climb the p1 loop up to the next multiple of 2^{i-1}; stopping is
      // only possible where the divisibility flips, which pins the climb
      // to exactly 2^{i-1} when x_i is set (start from p0 adds nothing)
      CtlFormula prev = div_formula(i - 1);
      CtlFormula left = disj(prop("p0"), exists_next(conj(prop("tbar"), prev)));
      CtlFormula right = conj(p01, exists_next(conj(prop("tbar"), conj(neg(prev), th))));
      body = exists_until(left, right);
    }
    CtlFormula inner = quant_for(i) == Quant::Exists ? conj(p01, body) : implies(p01, body);
    th = quant_for(i) == Quant::Exists ? exists_next(inner) : forall_next(inner);
  }
  return th;
}

bool qbf_eval(const Qbf& alpha) {
  validate_qbf(alpha);
  if (alpha.var_count > 20) throw InputError("qbf_eval is exhaustive; k <= 20 required");
  std::vector<char> assignment(static_cast<std::size_t>(alpha.var_count) + 1, 0);
  std::function<bool(const QbfMatrix&)> matrix_value = [&](const QbfMatrix& m) -> bool {
    switch (m.kind()) {
      case QbfMatrix::Kind::Var: return assignment[static_cast<std::size_t>(m.variable())] != 0;
      case QbfMatrix::Kind::Not: return !matrix_value(m.left());
      case QbfMatrix::Kind::And: return matrix_value(m.left()) && matrix_value(m.right());
      case QbfMatrix::Kind::Or: return matrix_value(m.left()) || matrix_value(m.right());
    }
    throw ContractViolation("unreachable matrix kind");
  };
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == 0) return matrix_value(alpha.matrix);
    Quant q = alpha.quantifiers[static_cast<std::size_t>(alpha.var_count - i)];
    assignment[static_cast<std::size_t>(i)] = 1;
    bool with_true = rec(i - 1);
    if (q == Quant::Exists && with_true) return true;
    if (q == Quant::ForAll && !with_true) return false;
    assignment[static_cast<std::size_t>(i)] = 0;
    return rec(i - 1);
  };
  return rec(alpha.var_count);
}

// ---------------------------------------------------------------------------
// Shared mini-parser for boolean expressions (precedence ! > & > |).

namespace {

template <typename VarT>
class BoolParser {
 public:
  using LeafFn = std::function<VarT(const std::string&, std::size_t line)>;

  BoolParser(std::string_view text, std::size_t line, LeafFn leaf)
      : text_(text), line_(line), leaf_(std::move(leaf)) {}

  BoolTree<VarT> parse() {
    BoolTree<VarT> e = parse_or();
    skip_ws();
    if (i_ < text_.size()) throw ParseError("trailing input in expression", line_);
    return e;
  }

 private:
  void skip_ws() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip_ws();
    if (i_ < text_.size() && text_[i_] == c) { ++i_; return true; }
    return false;
  }

  BoolTree<VarT> parse_or() {
    BoolTree<VarT> e = parse_and();
    while (eat('|')) e = BoolTree<VarT>::disjunction(e, parse_and());
    return e;
  }

  BoolTree<VarT> parse_and() {
    BoolTree<VarT> e = parse_unary();
    while (eat('&')) e = BoolTree<VarT>::conjunction(e, parse_unary());
    return e;
  }

  BoolTree<VarT> parse_unary() {
    if (eat('!')) return BoolTree<VarT>::negation(parse_unary());
    if (eat('(')) {
      BoolTree<VarT> e = parse_or();
      if (!eat(')')) throw ParseError("expected ')'", line_);
      return e;
    }
    skip_ws();
    std::size_t start = i_;
    while (i_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
      ++i_;
    if (i_ == start) throw ParseError("expected a variable", line_);
    return BoolTree<VarT>::leaf(leaf_(std::string(text_.substr(start, i_ - start)), line_));
  }

  std::string_view text_;
  std::size_t i_ = 0;
  std::size_t line_;
  LeafFn leaf_;
};

int parse_int_token(const std::string& tok, std::size_t line, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("bad " + std::string(what) + " '" + tok + "'", line);
  return value;
}

// Splits text into (line number, trimmed content) pairs, dropping comments
// and blank lines.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    out.emplace_back(no, line.substr(begin, end - begin + 1));
  }
  return out;
}

}  // namespace

Qbf parse_qbf(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty QBF input");
  std::size_t li = 0;
  {
    std::istringstream hd(lines[0].second);
    std::string p, kind;
    int k;
    if (!(hd >> p >> kind >> k) || p != "p" || kind != "qbf")
      throw ParseError("expected header 'p qbf <k>'", lines[0].first);
    if (k < 1) throw ParseError("variable count must be at least 1", lines[0].first);
    std::vector<Quant> quantifiers;
    ++li;
    for (int expect = k; expect >= 1; --expect) {
      if (li >= lines.size()) throw ParseError("missing quantifier line for x" + std::to_string(expect));
      std::istringstream qs(lines[li].second);
      std::string q;
      std::string idx;
      if (!(qs >> q >> idx) || (q != "e" && q != "a"))
        throw ParseError("expected quantifier line 'e <i>' or 'a <i>'", lines[li].first);
      int i = parse_int_token(idx, lines[li].first, "variable index");
      if (i != expect)
        throw ParseError("quantifier lines must run outermost-first (x" + std::to_string(expect) +
                             " expected, got x" + std::to_string(i) + ")",
                         lines[li].first);
      quantifiers.push_back(q == "e" ? Quant::Exists : Quant::ForAll);
      ++li;
    }
    if (li >= lines.size()) throw ParseError("missing matrix line");
    if (li + 1 != lines.size()) throw ParseError("unexpected input after matrix", lines[li + 1].first);
    auto leaf = [k](const std::string& tok, std::size_t line) -> int {
      if (tok.size() < 2 || tok[0] != 'x')
        throw ParseError("matrix variables look like x3, got '" + tok + "'", line);
      int i = parse_int_token(tok.substr(1), line, "variable index");
      if (i < 1 || i > k) throw ParseError("variable '" + tok + "' out of range", line);
      return i;
    };
    BoolParser<int> parser(lines[li].second, lines[li].first, leaf);
    Qbf alpha{k, std::move(quantifiers), parser.parse()};
    validate_qbf(alpha);
    return alpha;
  }
}

// ---------------------------------------------------------------------------
// Primes / CRR / binary strings.

std::vector<long long> primes_unary(int m) {
  if (m < 0) throw InputError("prime count must be nonnegative");
  std::vector<long long> out;
  long long candidate = 2;
  while (static_cast<int>(out.size()) < m) {
    bool prime = true;
    for (long long d : out) {
      if (d * d > candidate) break;
      if (candidate % d == 0) { prime = false; break; }
    }
    if (prime) out.push_back(candidate);
    ++candidate;
  }
  return out;
}

CrrAssignment crr(int m, const BigInt& M) {
  if (m < 1) throw InputError("crr needs at least one prime");
  CrrAssignment a;
  a.primes = primes_unary(m);
  BigInt prod = 1;
  for (long long p : a.primes) prod *= p;
  if (M < 0 || M >= prod)
    throw InputError("crr argument " + M.str() + " outside [0, " + prod.str() + ")");
  for (long long p : a.primes)
    a.remainders.push_back(static_cast<long long>(M % p));
  return a;
}

std::string binary_string(int m, const BigInt& M) {
  if (m < 1) throw InputError("binary_string needs at least one bit");
  if (M < 0 || M > (BigInt(1) << m) - 1)
    throw InputError("binary_string argument " + M.str() + " outside [0, 2^" +
                     std::to_string(m) + ")");
  std::string out(static_cast<std::size_t>(m), '0');
  for (int bit = m; bit >= 1; --bit)
    if (boost::multiprecision::bit_test(M, static_cast<unsigned>(bit - 1)))
      out[static_cast<std::size_t>(m - bit)] = '1';
  return out;
}

// ---------------------------------------------------------------------------
// CRR formulas.

namespace {

void validate_crr_expr(const CrrExpr& e, const std::vector<long long>& primes) {
  switch (e.kind()) {
    case CrrExpr::Kind::Var: {
      const CrrVar& v = e.variable();
      if (v.prime_index < 1 || v.prime_index > static_cast<int>(primes.size()))
        throw InputError("variable prime index " + std::to_string(v.prime_index) + " out of range");
      long long p = primes[static_cast<std::size_t>(v.prime_index - 1)];
      if (v.residue < 0 || v.residue >= p)
        throw InputError("residue " + std::to_string(v.residue) + " out of range for prime " +
                         std::to_string(p));
      return;
    }
    case CrrExpr::Kind::Not:
      validate_crr_expr(e.left(), primes);
      return;
    default:
      validate_crr_expr(e.left(), primes);
      validate_crr_expr(e.right(), primes);
      return;
  }
}

}  // namespace

CrrFormula make_crr_formula(int m, CrrExpr expr) {
  if (m < 1) throw InputError("CRR formulas need at least one prime");
  CrrFormula f{m, primes_unary(m), std::move(expr)};
  validate_crr_expr(f.expr, f.primes);
  return f;
}

bool negation_free(const CrrFormula& f) {
  std::function<bool(const CrrExpr&)> go = [&](const CrrExpr& e) -> bool {
    switch (e.kind()) {
      case CrrExpr::Kind::Var: return true;
      case CrrExpr::Kind::Not: return false;
      default: return go(e.left()) && go(e.right());
    }
  };
  return go(f.expr);
}

CrrFormula eliminate_negations(const CrrFormula& f) {
  std::function<CrrExpr(const CrrExpr&, bool)> go = [&](const CrrExpr& e,
                                                        bool positive) -> CrrExpr {
    switch (e.kind()) {
      case CrrExpr::Kind::Var: {
        if (positive) return e;
        const CrrVar& v = e.variable();
        long long p = f.primes[static_cast<std::size_t>(v.prime_index - 1)];
        // the negated residue variable becomes the disjunction of all others
        long long first = v.residue == 0 ? 1 : 0;
        CrrExpr out = CrrExpr::leaf({v.prime_index, first});
        for (long long r = first + 1; r < p; ++r) {
          if (r == v.residue) continue;
          out = CrrExpr::disjunction(out, CrrExpr::leaf({v.prime_index, r}));
        }
        return out;
      }
      case CrrExpr::Kind::Not:
        return go(e.left(), !positive);
      case CrrExpr::Kind::And: {
        CrrExpr l = go(e.left(), positive), r = go(e.right(), positive);
        return positive ? CrrExpr::conjunction(l, r) : CrrExpr::disjunction(l, r);
      }
      case CrrExpr::Kind::Or: {
        CrrExpr l = go(e.left(), positive), r = go(e.right(), positive);
        return positive ? CrrExpr::disjunction(l, r) : CrrExpr::conjunction(l, r);
      }
    }
    throw ContractViolation("unreachable expression kind");
  };
  return CrrFormula{f.prime_count, f.primes, go(f.expr, true)};
}

bool crr_eval(const CrrFormula& f, const CrrAssignment& a) {
  if (static_cast<int>(a.primes.size()) < f.prime_count)
    throw InputError("assignment covers fewer primes than the formula uses");
  std::function<bool(const CrrExpr&)> go = [&](const CrrExpr& e) -> bool {
    switch (e.kind()) {
      case CrrExpr::Kind::Var: return a.value(e.variable().prime_index, e.variable().residue);
      case CrrExpr::Kind::Not: return !go(e.left());
      case CrrExpr::Kind::And: return go(e.left()) && go(e.right());
      case CrrExpr::Kind::Or: return go(e.left()) || go(e.right());
    }
    throw ContractViolation("unreachable expression kind");
  };
  return go(f.expr);
}

CrrFormula parse_crr_formula(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.size() != 2) throw ParseError("expected a 'p crr <m>' header and one expression line");
  std::istringstream hd(lines[0].second);
  std::string p, kind;
  int m;
  if (!(hd >> p >> kind >> m) || p != "p" || kind != "crr")
    throw ParseError("expected header 'p crr <m>'", lines[0].first);
  if (m < 1) throw ParseError("prime count must be at least 1", lines[0].first);
  std::vector<long long> primes = primes_unary(m);
  auto leaf = [&](const std::string& tok, std::size_t line) -> CrrVar {
    auto underscore = tok.find('_');
    if (tok.size() < 4 || tok[0] != 'x' || underscore == std::string::npos)
      throw ParseError("CRR variables look like x2_1, got '" + tok + "'", line);
    int i = parse_int_token(tok.substr(1, underscore - 1), line, "prime index");
    int r = parse_int_token(tok.substr(underscore + 1), line, "residue");
    if (i < 1 || i > m) throw ParseError("prime index in '" + tok + "' out of range", line);
    if (r < 0 || r >= primes[static_cast<std::size_t>(i - 1)])
      throw ParseError("residue in '" + tok + "' out of range", line);
    return CrrVar{i, r};
  };
  BoolParser<CrrVar> parser(lines[1].second, lines[1].first, leaf);
  return make_crr_formula(m, parser.parse());
}

// ---------------------------------------------------------------------------
// The counter-testing OCN.

CtlFormula fixed_ef_formula() {
  return implies(prop("alpha"),
                 exists_next(conj(prop("beta"),
                                  exists_finally(neg(exists_next(prop("gamma")))))));
}

namespace {

// Emits one copy of the gadget for `expr` into the builder, all location
// names carrying `prefix`. Returns the in/out locations of the root.
std::pair<std::string, std::string> emit_crr_gadget(OcpBuilder& b, const CrrExpr& expr,
                                                    const std::vector<long long>& primes,
                                                    const std::string& prefix) {
  const std::string bot = prefix + "bot";
  b.location(bot);
  b.label("gamma", bot);
  // the sink must never deadlock: its only successor is itself, so the
  // "no step into the sink" test fails everywhere strictly inside it and
  // holds exactly at the bottom of a division loop
  b.zero_rule(bot, 0, bot);
  b.positive_rule(bot, 0, bot);
  std::vector<std::string> divs;
  for (long long p : primes) {
    std::string d = prefix + "div" + std::to_string(p);
    b.location(d);
    b.label("beta", d);
    b.positive_rule(d, -p, d);
    b.positive_rule(d, -1, bot);
    divs.push_back(d);
  }

  auto both = [&](const std::string& src, long long k, const std::string& dst) {
    b.zero_rule(src, k, dst);
    b.positive_rule(src, k, dst);
  };

  int next_id = 0;
  std::function<std::pair<std::string, std::string>(const CrrExpr&)> emit =
      [&](const CrrExpr& e) -> std::pair<std::string, std::string> {
    int id = next_id++;
    std::string in = prefix + "in" + std::to_string(id);
    std::string out = prefix + "out" + std::to_string(id);
    b.location(in);
    b.location(out);
    switch (e.kind()) {
      case CrrExpr::Kind::Var: {
        const CrrVar& v = e.variable();
        b.label("alpha", in);
        both(in, 0, out);
        const std::string& d = divs[static_cast<std::size_t>(v.prime_index - 1)];
        b.positive_rule(in, -v.residue, d);
        if (v.residue == 0) b.zero_rule(in, 0, d);
        break;
      }
      case CrrExpr::Kind::And: {
        auto [lin, lout] = emit(e.left());
        auto [rin, rout] = emit(e.right());
        both(in, 0, lin);
        both(lout, 0, rin);
        both(rout, 0, out);
        break;
      }
      case CrrExpr::Kind::Or: {
        auto [lin, lout] = emit(e.left());
        auto [rin, rout] = emit(e.right());
        both(in, 0, lin);
        both(in, 0, rin);
        both(lout, 0, out);
        both(rout, 0, out);
        break;
      }
      case CrrExpr::Kind::Not:
        throw ContractViolation("gadget construction requires a negation-free formula");
    }
    return {in, out};
  };
  return emit(expr);
}

}  // namespace

CrrGadget build_ocn_of_formula(const CrrFormula& f) {
  if (!negation_free(f)) throw ContractViolation("build_ocn_of_formula: eliminate negations first");
  OcpBuilder b;
  auto [in, out] = emit_crr_gadget(b, f.expr, f.primes, "");
  return CrrGadget{b.build(), in, out};
}

bool phi_path_exists(const CrrFormula& f, const BigInt& M) {
  CrrGadget g = build_ocn_of_formula(f);
  BigInt prod = 1;
  for (long long p : f.primes) prod *= p;
  if (M < 0 || M >= prod)
    throw InputError("counter " + M.str() + " outside [0, " + prod.str() + ")");
  if (M > (std::uint64_t{1} << 24))
    throw InputError("counter " + M.str() + " too large for explicit path search");
  const std::uint64_t ceiling = static_cast<std::uint64_t>(M);
  TruncatedEval ev(g.ocp, expand(fixed_ef_formula()), ceiling);
  auto holds = [&](int loc, const BigInt& v) {
    return ev.value(loc, static_cast<std::uint64_t>(v)) == Tv3::True;
  };
  int in = g.ocp.location_index(g.in_location);
  int out = g.ocp.location_index(g.out_location);
  if (!holds(in, M)) return false;
  // all effects in the gadget are <= 0, so the search space below M is finite
  auto key = [&](const State& s) {
    return static_cast<std::uint64_t>(s.location) * (ceiling + 1) +
           static_cast<std::uint64_t>(s.counter);
  };
  std::set<std::uint64_t> visited;
  std::deque<State> work;
  State start{in, M};
  visited.insert(key(start));
  work.push_back(start);
  while (!work.empty()) {
    State s = work.front();
    work.pop_front();
    if (s.location == out && s.counter == M) return true;
    for (const State& t : successors(g.ocp, s)) {
      if (!holds(t.location, t.counter)) continue;
      if (visited.insert(key(t)).second) work.push_back(t);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// NFAs and the serialized composition.

void validate_nfa(const Nfa& a) {
  if (a.state_count < 1) throw InputError("NFA needs at least one state");
  auto in_range = [&](int s) { return s >= 0 && s < a.state_count; };
  if (!in_range(a.initial)) throw InputError("NFA initial state out of range");
  for (int f : a.finals)
    if (!in_range(f)) throw InputError("NFA final state out of range");
  for (const auto& t : a.transitions) {
    if (!in_range(t[0]) || !in_range(t[2])) throw InputError("NFA transition state out of range");
    if (t[1] != 0 && t[1] != 1) throw InputError("NFA symbols are 0 or 1");
  }
}

bool nfa_accepts(const Nfa& a, std::string_view word) {
  validate_nfa(a);
  std::vector<char> current(static_cast<std::size_t>(a.state_count), 0);
  current[static_cast<std::size_t>(a.initial)] = 1;
  for (char c : word) {
    if (c != '0' && c != '1') throw InputError("NFA words are over {0,1}");
    int sym = c - '0';
    std::vector<char> next(current.size(), 0);
    for (const auto& t : a.transitions)
      if (t[1] == sym && current[static_cast<std::size_t>(t[0])])
        next[static_cast<std::size_t>(t[2])] = 1;
    current = std::move(next);
  }
  for (int f : a.finals)
    if (current[static_cast<std::size_t>(f)]) return true;
  return false;
}

Nfa parse_nfa(std::string_view text) {
  Nfa a;
  bool have_states = false;
  for (const auto& [no, line] : content_lines(text)) {
    std::istringstream is(line);
    std::string head;
    is >> head;
    if (head == "states") {
      if (!(is >> a.state_count)) throw ParseError("'states' needs a count", no);
      have_states = true;
    } else if (head == "init") {
      if (!(is >> a.initial)) throw ParseError("'init' needs a state", no);
    } else if (head == "final") {
      int f;
      while (is >> f) a.finals.push_back(f);
    } else if (head == "t") {
      int src, sym, dst;
      if (!(is >> src >> sym >> dst)) throw ParseError("'t' needs <src> <0|1> <dst>", no);
      a.transitions.push_back({src, sym, dst});
    } else {
      throw ParseError("unknown directive '" + head + "'", no);
    }
  }
  if (!have_states) throw ParseError("missing 'states' line");
  std::sort(a.finals.begin(), a.finals.end());
  a.finals.erase(std::unique(a.finals.begin(), a.finals.end()), a.finals.end());
  try {
    validate_nfa(a);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  return a;
}

std::string serialized_word(const CrrFormula& f) {
  if (f.prime_count > 20) throw InputError("serialized words are exhaustive; m <= 20 required");
  const int m = f.prime_count;
  BigInt end = BigInt(1) << m;
  std::string w;
  for (BigInt M = 0; M < end; ++M)
    w.push_back(crr_eval(f, crr(m, M)) ? '1' : '0');
  return w;
}

CrrFormula default_goal_formula(int m) {
  if (m < 1) throw InputError("goal formula needs at least one prime");
  std::vector<long long> primes = primes_unary(m);
  BigInt pow2 = BigInt(1) << m;
  CrrExpr e = CrrExpr::leaf({1, static_cast<long long>(pow2 % primes[0])});
  for (int i = 2; i <= m; ++i)
    e = CrrExpr::conjunction(
        e, CrrExpr::leaf({i, static_cast<long long>(pow2 % primes[static_cast<std::size_t>(i - 1)])}));
  return make_crr_formula(m, e);
}

SerializedReduction compose_serialized(const CrrFormula& f, const CrrFormula& g, const Nfa& a) {
  validate_nfa(a);
  if (f.prime_count != g.prime_count || f.primes != g.primes)
    throw InputError("compose_serialized: formulas use mismatched prime sets");
  CrrFormula pass_one =
      eliminate_negations(CrrFormula{f.prime_count, f.primes,
                                     CrrExpr::conjunction(f.expr, CrrExpr::negation(g.expr))});
  CrrFormula pass_zero = eliminate_negations(
      CrrFormula{f.prime_count, f.primes,
                 CrrExpr::conjunction(CrrExpr::negation(f.expr), CrrExpr::negation(g.expr))});
  CrrFormula goal = eliminate_negations(g);

  OcpBuilder b;
  auto state_name = [](int s) { return "s" + std::to_string(s); };
  for (int s = 0; s < a.state_count; ++s) b.location(state_name(s));

  auto both = [&](const std::string& src, long long k, const std::string& dst) {
    b.zero_rule(src, k, dst);
    b.positive_rule(src, k, dst);
  };

  for (std::size_t j = 0; j < a.transitions.size(); ++j) {
    const auto& t = a.transitions[j];
    const CrrFormula& gadget = t[1] == 1 ? pass_one : pass_zero;
    std::string prefix = "u" + std::to_string(j) + "_";
    auto [in, out] = emit_crr_gadget(b, gadget.expr, gadget.primes, prefix);
    both(state_name(t[0]), 0, in);
    both(out, 1, state_name(t[2]));
  }

  auto [goal_in, goal_out] = emit_crr_gadget(b, goal.expr, goal.primes, "goal_");
  for (int fs : a.finals) both(state_name(fs), 0, goal_in);
  b.label("rho", goal_out);

  return SerializedReduction{b.build(), state_name(a.initial),
                             exists_until(fixed_ef_formula(), prop("rho"))};
}

SerializedReduction compose_serialized(const CrrFormula& f, const Nfa& a) {
  return compose_serialized(f, default_goal_formula(f.prime_count), a);
}

}  // namespace ocmc
