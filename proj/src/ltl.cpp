#include "unreal/ltl.hpp"

#include <cctype>
#include <sstream>

namespace unreal {

static LtlPtr mk(LtlKind k, std::string n, LtlPtr l, LtlPtr r) {
  return std::make_shared<Ltl>(k, std::move(n), std::move(l), std::move(r));
}

LtlPtr ltl_true() {
  static LtlPtr t = mk(LtlKind::True, "", nullptr, nullptr);
  return t;
}

LtlPtr ltl_false() {
  static LtlPtr f = mk(LtlKind::False, "", nullptr, nullptr);
  return f;
}

LtlPtr ltl_atom(const std::string &name) {
  return mk(LtlKind::Atom, name, nullptr, nullptr);
}

LtlPtr ltl_natom(const std::string &name) {
  return mk(LtlKind::NegAtom, name, nullptr, nullptr);
}

LtlPtr ltl_and(LtlPtr a, LtlPtr b) {
  if (a->kind == LtlKind::False || b->kind == LtlKind::False) return ltl_false();
  if (a->kind == LtlKind::True) return b;
  if (b->kind == LtlKind::True) return a;
  return mk(LtlKind::And, "", std::move(a), std::move(b));
}

LtlPtr ltl_or(LtlPtr a, LtlPtr b) {
  if (a->kind == LtlKind::True || b->kind == LtlKind::True) return ltl_true();
  if (a->kind == LtlKind::False) return b;
  if (b->kind == LtlKind::False) return a;
  return mk(LtlKind::Or, "", std::move(a), std::move(b));
}

LtlPtr ltl_and(const std::vector<LtlPtr> &xs) {
  LtlPtr acc = ltl_true();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = ltl_and(*it, acc);
  return acc;
}

LtlPtr ltl_or(const std::vector<LtlPtr> &xs) {
  LtlPtr acc = ltl_false();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = ltl_or(*it, acc);
  return acc;
}

LtlPtr ltl_next(LtlPtr a) { return mk(LtlKind::Next, "", std::move(a), nullptr); }

LtlPtr ltl_next_n(LtlPtr a, int n) {
  for (int i = 0; i < n; i++) a = ltl_next(std::move(a));
  return a;
}

LtlPtr ltl_until(LtlPtr a, LtlPtr b) {
  return mk(LtlKind::Until, "", std::move(a), std::move(b));
}

LtlPtr ltl_release(LtlPtr a, LtlPtr b) {
  return mk(LtlKind::Release, "", std::move(a), std::move(b));
}

LtlPtr ltl_globally(LtlPtr a) { return ltl_release(ltl_false(), std::move(a)); }

LtlPtr ltl_eventually(LtlPtr a) { return ltl_until(ltl_true(), std::move(a)); }

LtlPtr ltl_weak_until(LtlPtr a, LtlPtr b) {
  return ltl_or(ltl_globally(a), ltl_until(a, std::move(b)));
}

LtlPtr ltl_implies(LtlPtr a, LtlPtr b) {
  return ltl_or(negate_nnf(a), std::move(b));
}

LtlPtr ltl_iff(LtlPtr a, LtlPtr b) {
  return ltl_or(ltl_and(a, b), ltl_and(negate_nnf(a), negate_nnf(b)));
}

LtlPtr ltl_eq(LtlPtr a, LtlPtr b) { return ltl_iff(std::move(a), std::move(b)); }

LtlPtr negate_nnf(const LtlPtr &f) {
  switch (f->kind) {
    case LtlKind::True: return ltl_false();
    case LtlKind::False: return ltl_true();
    case LtlKind::Atom: return ltl_natom(f->name);
    case LtlKind::NegAtom: return ltl_atom(f->name);
    case LtlKind::And: return ltl_or(negate_nnf(f->lhs), negate_nnf(f->rhs));
    case LtlKind::Or: return ltl_and(negate_nnf(f->lhs), negate_nnf(f->rhs));
    case LtlKind::Next: return ltl_next(negate_nnf(f->lhs));
    case LtlKind::Until: return ltl_release(negate_nnf(f->lhs), negate_nnf(f->rhs));
    case LtlKind::Release: return ltl_until(negate_nnf(f->lhs), negate_nnf(f->rhs));
  }
  throw std::logic_error("bad kind");
}

bool ltl_equal(const LtlPtr &a, const LtlPtr &b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (bool(a->lhs) != bool(b->lhs) || bool(a->rhs) != bool(b->rhs)) return false;
  if (a->lhs && !ltl_equal(a->lhs, b->lhs)) return false;
  if (a->rhs && !ltl_equal(a->rhs, b->rhs)) return false;
  return true;
}

LtlPtr ltl_rename(const LtlPtr &f,
                  const std::function<std::string(const std::string &)> &fn) {
  switch (f->kind) {
    case LtlKind::True:
    case LtlKind::False: return f;
    case LtlKind::Atom: return ltl_atom(fn(f->name));
    case LtlKind::NegAtom: return ltl_natom(fn(f->name));
    case LtlKind::Next: return ltl_next(ltl_rename(f->lhs, fn));
    case LtlKind::And: return ltl_and(ltl_rename(f->lhs, fn), ltl_rename(f->rhs, fn));
    case LtlKind::Or: return ltl_or(ltl_rename(f->lhs, fn), ltl_rename(f->rhs, fn));
    case LtlKind::Until: return ltl_until(ltl_rename(f->lhs, fn), ltl_rename(f->rhs, fn));
    case LtlKind::Release:
      return ltl_release(ltl_rename(f->lhs, fn), ltl_rename(f->rhs, fn));
  }
  throw std::logic_error("bad kind");
}

void ltl_atoms(const LtlPtr &f, std::set<std::string> &out) {
  if (f->kind == LtlKind::Atom || f->kind == LtlKind::NegAtom) {
    out.insert(f->name);
    return;
  }
  if (f->lhs) ltl_atoms(f->lhs, out);
  if (f->rhs) ltl_atoms(f->rhs, out);
}

int ltl_x_depth(const LtlPtr &f) {
  int sub = 0;
  if (f->lhs) sub = std::max(sub, ltl_x_depth(f->lhs));
  if (f->rhs) sub = std::max(sub, ltl_x_depth(f->rhs));
  return f->kind == LtlKind::Next ? sub + 1 : sub;
}

Fragment classify_fragment(const LtlPtr &f) {
  switch (f->kind) {
    case LtlKind::True:
    case LtlKind::False:
    case LtlKind::Atom:
    case LtlKind::NegAtom:
      return Fragment::Both;
    case LtlKind::Next: {
      Fragment s = classify_fragment(f->lhs);
      // X is allowed in both grammars but is a temporal operator.
      if (s == Fragment::Both) return Fragment::Both;
      return s;
    }
    case LtlKind::And:
    case LtlKind::Or: {
      Fragment a = classify_fragment(f->lhs);
      Fragment b = classify_fragment(f->rhs);
      if (a == b) return a;
      if (a == Fragment::Both) return b;
      if (b == Fragment::Both) return a;
      return Fragment::General;
    }
    case LtlKind::Until: {
      Fragment a = classify_fragment(f->lhs);
      Fragment b = classify_fragment(f->rhs);
      bool ok = (a == Fragment::CoSafety || a == Fragment::Both) &&
                (b == Fragment::CoSafety || b == Fragment::Both);
      return ok ? Fragment::CoSafety : Fragment::General;
    }
    case LtlKind::Release: {
      Fragment a = classify_fragment(f->lhs);
      Fragment b = classify_fragment(f->rhs);
      bool ok = (a == Fragment::Safety || a == Fragment::Both) &&
                (b == Fragment::Safety || b == Fragment::Both);
      return ok ? Fragment::Safety : Fragment::General;
    }
  }
  throw std::logic_error("bad kind");
}

const char *fragment_name(Fragment f) {
  switch (f) {
    case Fragment::Safety: return "safety";
    case Fragment::CoSafety: return "co-safety";
    case Fragment::Both: return "boolean";
    case Fragment::General: return "general";
  }
  return "?";
}

// --- parser ------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Ident, LParen, RParen, Bang, AndOp, OrOp, Arrow, DArrow, EqOp, Caret, Num, End };
  Kind kind;
  std::string text;
  int line, column;
};

class Lexer {
public:
  explicit Lexer(const std::string &s) : src(s) {}

  Token next() {
    skip_ws();
    Token t{Token::End, "", line, col};
    if (pos >= src.size()) return t;
    char c = src[pos];
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_'))
        advance();
      t.kind = Token::Ident;
      t.text = src.substr(start, pos - start);
      return t;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) advance();
      t.kind = Token::Num;
      t.text = src.substr(start, pos - start);
      return t;
    }
    switch (c) {
      case '(': advance(); t.kind = Token::LParen; return t;
      case ')': advance(); t.kind = Token::RParen; return t;
      case '!': advance(); t.kind = Token::Bang; return t;
      case '^': advance(); t.kind = Token::Caret; return t;
      case '&':
        if (pos + 1 < src.size() && src[pos + 1] == '&') {
          advance(); advance();
          t.kind = Token::AndOp;
          return t;
        }
        break;
      case '|':
        if (pos + 1 < src.size() && src[pos + 1] == '|') {
          advance(); advance();
          t.kind = Token::OrOp;
          return t;
        }
        break;
      case '-':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          advance(); advance();
          t.kind = Token::Arrow;
          return t;
        }
        break;
      case '<':
        if (pos + 2 < src.size() && src[pos + 1] == '-' && src[pos + 2] == '>') {
          advance(); advance(); advance();
          t.kind = Token::DArrow;
          return t;
        }
        break;
      case '=': advance(); t.kind = Token::EqOp; return t;
    }
    throw LtlParseError(std::string("unexpected character '") + c + "'", line, col);
  }

private:
  void advance() {
    if (src[pos] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }
  void skip_ws() {
    while (pos < src.size() && std::isspace((unsigned char)src[pos])) advance();
  }
  const std::string &src;
  size_t pos = 0;
  int line = 1, col = 1;
};

class Parser {
public:
  explicit Parser(const std::string &s) : lex(s) { tok = lex.next(); }

  LtlPtr parse() {
    LtlPtr f = parse_eq();
    if (tok.kind != Token::End)
      throw LtlParseError("unexpected trailing input", tok.line, tok.column);
    return f;
  }

private:
  // precedence, loosest first: =, <->, ->, ||, &&, U/R/W, unary
  LtlPtr parse_eq() {
    LtlPtr l = parse_iff();
    while (tok.kind == Token::EqOp) {
      eat();
      l = ltl_eq(l, parse_iff());
    }
    return l;
  }
  LtlPtr parse_iff() {
    LtlPtr l = parse_impl();
    while (tok.kind == Token::DArrow) {
      eat();
      l = ltl_iff(l, parse_impl());
    }
    return l;
  }
  LtlPtr parse_impl() {
    LtlPtr l = parse_or();
    if (tok.kind == Token::Arrow) {
      eat();
      return ltl_implies(l, parse_impl());  // right-assoc
    }
    return l;
  }
  LtlPtr parse_or() {
    LtlPtr l = parse_and();
    while (tok.kind == Token::OrOp) {
      eat();
      l = ltl_or(l, parse_and());
    }
    return l;
  }
  LtlPtr parse_and() {
    LtlPtr l = parse_bin();
    while (tok.kind == Token::AndOp) {
      eat();
      l = ltl_and(l, parse_bin());
    }
    return l;
  }
  LtlPtr parse_bin() {
    LtlPtr l = parse_unary();
    if (tok.kind == Token::Ident &&
        (tok.text == "U" || tok.text == "R" || tok.text == "W")) {
      std::string op = tok.text;
      eat();
      LtlPtr r = parse_bin();  // right-assoc
      if (op == "U") return ltl_until(l, r);
      if (op == "R") return ltl_release(l, r);
      return ltl_weak_until(l, r);
    }
    return l;
  }
  LtlPtr parse_unary() {
    if (tok.kind == Token::Bang) {
      eat();
      return negate_nnf(parse_unary());
    }
    if (tok.kind == Token::Ident) {
      if (tok.text == "X") {
        eat();
        int n = 1;
        if (tok.kind == Token::Caret) {
          eat();
          if (tok.kind != Token::Num)
            throw LtlParseError("expected number after '^'", tok.line, tok.column);
          n = std::stoi(tok.text);
          eat();
        }
        return ltl_next_n(parse_unary(), n);
      }
      if (tok.text == "G") {
        eat();
        return ltl_globally(parse_unary());
      }
      if (tok.text == "F") {
        eat();
        return ltl_eventually(parse_unary());
      }
      if (tok.text == "true") {
        eat();
        return ltl_true();
      }
      if (tok.text == "false") {
        eat();
        return ltl_false();
      }
      if (tok.text == "U" || tok.text == "R" || tok.text == "W")
        throw LtlParseError("operator '" + tok.text + "' needs a left operand",
                            tok.line, tok.column);
      LtlPtr a = ltl_atom(tok.text);
      eat();
      return a;
    }
    if (tok.kind == Token::LParen) {
      eat();
      LtlPtr f = parse_eq();
      if (tok.kind != Token::RParen)
        throw LtlParseError("expected ')'", tok.line, tok.column);
      eat();
      return f;
    }
    throw LtlParseError("expected formula", tok.line, tok.column);
  }

  void eat() { tok = lex.next(); }

  Lexer lex;
  Token tok;
};

int prec_of(const LtlPtr &f) {
  switch (f->kind) {
    case LtlKind::Until:
    case LtlKind::Release: return 4;
    case LtlKind::And: return 3;
    case LtlKind::Or: return 2;
    default: return 5;  // atoms, constants, unary
  }
}

void print_rec(const LtlPtr &f, std::ostream &os, int parent_prec) {
  int p = prec_of(f);
  bool paren = p < parent_prec;
  if (paren) os << "(";
  switch (f->kind) {
    case LtlKind::True: os << "true"; break;
    case LtlKind::False: os << "false"; break;
    case LtlKind::Atom: os << f->name; break;
    case LtlKind::NegAtom: os << "!" << f->name; break;
    case LtlKind::Next:
      os << "X ";
      print_rec(f->lhs, os, 5);
      break;
    case LtlKind::And:
      print_rec(f->lhs, os, 3);
      os << " && ";
      print_rec(f->rhs, os, 4);
      break;
    case LtlKind::Or:
      print_rec(f->lhs, os, 2);
      os << " || ";
      print_rec(f->rhs, os, 3);
      break;
    case LtlKind::Until:
      if (f->lhs->kind == LtlKind::True) {
        os << "F ";
        print_rec(f->rhs, os, 5);
      } else {
        print_rec(f->lhs, os, 5);
        os << " U ";
        print_rec(f->rhs, os, 4);
      }
      break;
    case LtlKind::Release:
      if (f->lhs->kind == LtlKind::False) {
        os << "G ";
        print_rec(f->rhs, os, 5);
      } else {
        print_rec(f->lhs, os, 5);
        os << " R ";
        print_rec(f->rhs, os, 4);
      }
      break;
  }
  if (paren) os << ")";
}

}  // namespace

LtlPtr parse_ltl(const std::string &text) { return Parser(text).parse(); }

std::string print_ltl(const LtlPtr &f) {
  std::ostringstream os;
  print_rec(f, os, 0);
  return os.str();
}

bool eval_bounded(const LtlPtr &f, const FiniteTrace &trace, int i, int k) {
  switch (f->kind) {
    case LtlKind::True: return true;
    case LtlKind::False: return false;
    case LtlKind::Atom: return i < k && trace.holds(f->name, i);
    case LtlKind::NegAtom: return i < k && !trace.holds(f->name, i);
    case LtlKind::And:
      return eval_bounded(f->lhs, trace, i, k) && eval_bounded(f->rhs, trace, i, k);
    case LtlKind::Or:
      return eval_bounded(f->lhs, trace, i, k) || eval_bounded(f->rhs, trace, i, k);
    case LtlKind::Next:
      return i + 1 < k && eval_bounded(f->lhs, trace, i + 1, k);
    case LtlKind::Until:
      if (i >= k) return false;
      return eval_bounded(f->rhs, trace, i, k) ||
             (eval_bounded(f->lhs, trace, i, k) && eval_bounded(f, trace, i + 1, k));
    case LtlKind::Release:
      if (i >= k) return true;
      return eval_bounded(f->rhs, trace, i, k) &&
             (eval_bounded(f->lhs, trace, i, k) || eval_bounded(f, trace, i + 1, k));
  }
  throw std::logic_error("bad kind");
}

}  // namespace unreal
