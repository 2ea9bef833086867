#include "ocmc/ctl.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <vector>

#include "ocmc/errors.hpp"

namespace ocmc {

const std::string& CtlFormula::prop_name() const {
  if (node_->kind != CtlKind::Prop)
    throw ContractViolation("prop_name() on a non-proposition");
  return node_->atom;
}

CtlFormula CtlFormula::left() const {
  if (!node_->lhs) throw ContractViolation("left() on a leaf formula");
  return CtlFormula(node_->lhs);
}

CtlFormula CtlFormula::right() const {
  if (!node_->rhs) throw ContractViolation("right() on a non-binary formula");
  return CtlFormula(node_->rhs);
}

bool CtlFormula::operator==(const CtlFormula& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CtlKind::Prop:
      return a->atom == b->atom;
    case CtlKind::True:
    case CtlKind::False:
      return true;
    default:
      if (static_cast<bool>(a->rhs) != static_cast<bool>(b->rhs)) return false;
      if (!(CtlFormula(a->lhs) == CtlFormula(b->lhs))) return false;
      return !a->rhs || CtlFormula(a->rhs) == CtlFormula(b->rhs);
  }
}

CtlFormula CtlFormula::make(CtlKind k, std::string atom, std::shared_ptr<const Node> lhs,
                            std::shared_ptr<const Node> rhs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->atom = std::move(atom);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return CtlFormula(std::move(n));
}

CtlFormula prop(std::string name) { return CtlFormula::make(CtlKind::Prop, std::move(name), nullptr, nullptr); }
CtlFormula neg(CtlFormula f) { return CtlFormula::make(CtlKind::Not, {}, f.node_, nullptr); }
CtlFormula conj(CtlFormula a, CtlFormula b) { return CtlFormula::make(CtlKind::And, {}, a.node_, b.node_); }
CtlFormula disj(CtlFormula a, CtlFormula b) { return CtlFormula::make(CtlKind::Or, {}, a.node_, b.node_); }
CtlFormula implies(CtlFormula a, CtlFormula b) { return CtlFormula::make(CtlKind::Implies, {}, a.node_, b.node_); }
CtlFormula exists_next(CtlFormula f) { return CtlFormula::make(CtlKind::ExistsNext, {}, f.node_, nullptr); }
CtlFormula forall_next(CtlFormula f) { return CtlFormula::make(CtlKind::ForallNext, {}, f.node_, nullptr); }
CtlFormula exists_until(CtlFormula a, CtlFormula b) { return CtlFormula::make(CtlKind::ExistsUntil, {}, a.node_, b.node_); }
CtlFormula exists_weak_until(CtlFormula a, CtlFormula b) { return CtlFormula::make(CtlKind::ExistsWeakUntil, {}, a.node_, b.node_); }
CtlFormula exists_finally(CtlFormula f) { return CtlFormula::make(CtlKind::ExistsFinally, {}, f.node_, nullptr); }
CtlFormula exists_globally(CtlFormula f) { return CtlFormula::make(CtlKind::ExistsGlobally, {}, f.node_, nullptr); }
CtlFormula top() { return CtlFormula::make(CtlKind::True, {}, nullptr, nullptr); }
CtlFormula bot() { return CtlFormula::make(CtlKind::False, {}, nullptr, nullptr); }

bool is_core(const CtlFormula& f) {
  switch (f.kind()) {
    case CtlKind::Prop:
      return true;
    case CtlKind::Not:
    case CtlKind::ExistsNext:
      return is_core(f.left());
    case CtlKind::And:
    case CtlKind::ExistsUntil:
    case CtlKind::ExistsWeakUntil:
      return is_core(f.left()) && is_core(f.right());
    default:
      return false;
  }
}

namespace {

// (p | !p) and (p & !p) over the reserved proposition, in core form.
CtlFormula core_tautology() {
  CtlFormula p = prop(std::string(kReservedProp));
  return neg(conj(neg(p), neg(neg(p))));
}

CtlFormula core_contradiction() {
  CtlFormula p = prop(std::string(kReservedProp));
  return conj(p, neg(p));
}

}  // namespace

CtlFormula expand(const CtlFormula& f) {
  switch (f.kind()) {
    case CtlKind::Prop:
      return f;
    case CtlKind::Not: {
      CtlFormula a = expand(f.left());
      return a.id() == f.left().id() ? f : neg(a);
    }
    case CtlKind::ExistsNext: {
      CtlFormula a = expand(f.left());
      return a.id() == f.left().id() ? f : exists_next(a);
    }
    case CtlKind::And:
    case CtlKind::ExistsUntil:
    case CtlKind::ExistsWeakUntil: {
      CtlFormula a = expand(f.left());
      CtlFormula b = expand(f.right());
      if (a.id() == f.left().id() && b.id() == f.right().id()) return f;
      if (f.kind() == CtlKind::And) return conj(a, b);
      if (f.kind() == CtlKind::ExistsUntil) return exists_until(a, b);
      return exists_weak_until(a, b);
    }
    case CtlKind::Or: {
      CtlFormula a = expand(f.left());
      CtlFormula b = expand(f.right());
      return neg(conj(neg(a), neg(b)));
    }
    case CtlKind::Implies: {
      // a -> b  ==  !a | b
      CtlFormula a = expand(f.left());
      CtlFormula b = expand(f.right());
      return neg(conj(neg(neg(a)), neg(b)));
    }
    case CtlKind::ForallNext:
      return neg(exists_next(neg(expand(f.left()))));
    case CtlKind::ExistsFinally:
      return exists_until(core_tautology(), expand(f.left()));
    case CtlKind::ExistsGlobally:
      return exists_weak_until(expand(f.left()), core_contradiction());
    case CtlKind::True:
      return core_tautology();
    case CtlKind::False:
      return core_contradiction();
  }
  throw ContractViolation("unreachable formula kind");
}

std::int64_t formula_size(const CtlFormula& f) {
  switch (f.kind()) {
    case CtlKind::Prop:
      return 1;
    case CtlKind::Not:
    case CtlKind::ExistsNext:
      return 1 + formula_size(f.left());
    case CtlKind::And:
    case CtlKind::ExistsUntil:
    case CtlKind::ExistsWeakUntil:
      return 1 + formula_size(f.left()) + formula_size(f.right());
    default:
      throw ContractViolation("formula_size requires a core formula; expand first");
  }
}

int left_until_depth(const CtlFormula& f) {
  switch (f.kind()) {
    case CtlKind::Prop:
      return 0;
    case CtlKind::Not:
    case CtlKind::ExistsNext:
      return left_until_depth(f.left());
    case CtlKind::And:
      return std::max(left_until_depth(f.left()), left_until_depth(f.right()));
    case CtlKind::ExistsUntil:
    case CtlKind::ExistsWeakUntil:
      return std::max(left_until_depth(f.left()) + 1, left_until_depth(f.right()));
    default:
      throw ContractViolation("left_until_depth requires a core formula; expand first");
  }
}

// ---------------------------------------------------------------------------
// Concrete syntax.

namespace {

struct Token {
  enum Type { Ident, Bang, Amp, Bar, Arrow, LParen, RParen, LBracket, RBracket, End };
  Type type;
  std::string text;
  std::size_t pos;  // 0-based offset into the input
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= text_.size()) {
      tok_ = {Token::End, "", i_};
      return;
    }
    char c = text_[i_];
    auto single = [&](Token::Type t) {
      tok_ = {t, std::string(1, c), i_};
      ++i_;
    };
    switch (c) {
      case '!': single(Token::Bang); return;
      case '&': single(Token::Amp); return;
      case '|': single(Token::Bar); return;
      case '(': single(Token::LParen); return;
      case ')': single(Token::RParen); return;
      case '[': single(Token::LBracket); return;
      case ']': single(Token::RBracket); return;
      case '-':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
          tok_ = {Token::Arrow, "->", i_};
          i_ += 2;
          return;
        }
        throw ParseError("unexpected '-' at position " + std::to_string(i_ + 1));
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
        ++i_;
      tok_ = {Token::Ident, std::string(text_.substr(start, i_ - start)), start};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                     std::to_string(i_ + 1));
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Token tok_{Token::End, "", 0};
};

bool is_keyword(const std::string& s) {
  return s == "true" || s == "false" || s == "EX" || s == "AX" || s == "EF" ||
         s == "EG" || s == "E" || s == "U" || s == "W";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  CtlFormula parse() {
    CtlFormula f = parse_implies();
    if (lex_.peek().type != Token::End)
      throw ParseError("trailing input at position " + std::to_string(lex_.peek().pos + 1));
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(lex_.peek().pos + 1));
  }

  void expect(Token::Type t, const char* what) {
    if (lex_.peek().type != t) fail(std::string("expected ") + what);
    lex_.take();
  }

  CtlFormula parse_implies() {
    CtlFormula lhs = parse_or();
    if (lex_.peek().type == Token::Arrow) {
      lex_.take();
      return implies(lhs, parse_implies());  // right associative
    }
    return lhs;
  }

  CtlFormula parse_or() {
    CtlFormula f = parse_and();
    while (lex_.peek().type == Token::Bar) {
      lex_.take();
      f = disj(f, parse_and());
    }
    return f;
  }

  CtlFormula parse_and() {
    CtlFormula f = parse_unary();
    while (lex_.peek().type == Token::Amp) {
      lex_.take();
      f = conj(f, parse_unary());
    }
    return f;
  }

  CtlFormula parse_unary() {
    const Token& t = lex_.peek();
    if (t.type == Token::Bang) {
      lex_.take();
      return neg(parse_unary());
    }
    if (t.type == Token::LParen) {
      lex_.take();
      CtlFormula f = parse_implies();
      expect(Token::RParen, "')'");
      return f;
    }
    if (t.type == Token::Ident) {
      if (t.text == "EX") { lex_.take(); return exists_next(parse_unary()); }
      if (t.text == "AX") { lex_.take(); return forall_next(parse_unary()); }
      if (t.text == "EF") { lex_.take(); return exists_finally(parse_unary()); }
      if (t.text == "EG") { lex_.take(); return exists_globally(parse_unary()); }
      if (t.text == "true") { lex_.take(); return top(); }
      if (t.text == "false") { lex_.take(); return bot(); }
      if (t.text == "E") {
        lex_.take();
        expect(Token::LBracket, "'['");
        CtlFormula a = parse_implies();
        const Token& mid = lex_.peek();
        if (mid.type != Token::Ident || (mid.text != "U" && mid.text != "W"))
          fail("expected 'U' or 'W'");
        bool weak = mid.text == "W";
        lex_.take();
        CtlFormula b = parse_implies();
        expect(Token::RBracket, "']'");
        return weak ? exists_weak_until(a, b) : exists_until(a, b);
      }
      if (is_keyword(t.text)) fail("keyword '" + t.text + "' is not an atom");
      if (t.text == kReservedProp)
        throw InputError("proposition '" + std::string(kReservedProp) + "' is reserved");
      Token atom = lex_.take();
      return prop(atom.text);
    }
    fail("expected a formula");
  }

  Lexer lex_;
};

// 0 = implies, 1 = or, 2 = and, 3 = unary/atom.
int precedence_of(CtlKind k) {
  switch (k) {
    case CtlKind::Implies: return 0;
    case CtlKind::Or: return 1;
    case CtlKind::And: return 2;
    default: return 3;
  }
}

void print(const CtlFormula& f, int min_prec, std::ostream& os) {
  int prec = precedence_of(f.kind());
  bool parens = prec < min_prec;
  if (parens) os << '(';
  switch (f.kind()) {
    case CtlKind::Prop: os << f.prop_name(); break;
    case CtlKind::True: os << "true"; break;
    case CtlKind::False: os << "false"; break;
    case CtlKind::Not:
      os << '!';
      print(f.left(), 3, os);
      break;
    case CtlKind::ExistsNext:
    case CtlKind::ForallNext:
    case CtlKind::ExistsFinally:
    case CtlKind::ExistsGlobally: {
      const char* op = f.kind() == CtlKind::ExistsNext ? "EX"
                       : f.kind() == CtlKind::ForallNext ? "AX"
                       : f.kind() == CtlKind::ExistsFinally ? "EF" : "EG";
      os << op << ' ';
      print(f.left(), 3, os);
      break;
    }
    case CtlKind::And:
      print(f.left(), 2, os);
      os << " & ";
      print(f.right(), 3, os);
      break;
    case CtlKind::Or:
      print(f.left(), 1, os);
      os << " | ";
      print(f.right(), 2, os);
      break;
    case CtlKind::Implies:
      print(f.left(), 1, os);
      os << " -> ";
      print(f.right(), 0, os);
      break;
    case CtlKind::ExistsUntil:
    case CtlKind::ExistsWeakUntil:
      os << "E[ ";
      print(f.left(), 0, os);
      os << (f.kind() == CtlKind::ExistsUntil ? " U " : " W ");
      print(f.right(), 0, os);
      os << " ]";
      break;
  }
  if (parens) os << ')';
}

}  // namespace

CtlFormula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string format_formula(const CtlFormula& f) {
  std::ostringstream os;
  print(f, 0, os);
  return os.str();
}

}  // namespace ocmc
