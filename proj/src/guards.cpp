#include "gnet/guards.hpp"

#include <cctype>
#include <limits>

#include "gnet/error.hpp"

namespace gnet {

Expr Expr::literal(Value v) {
  Expr e;
  e.kind = Kind::Literal;
  e.value = std::move(v);
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Condition Condition::always() { return Condition{}; }

Condition Condition::boolean(bool b) {
  Condition c;
  c.kind = Kind::Bool;
  c.flag = b;
  return c;
}

Condition Condition::compare(Expr lhs, CompareOp op, Expr rhs) {
  Condition c;
  c.kind = Kind::Compare;
  c.op = op;
  c.exprs.push_back(std::move(lhs));
  c.exprs.push_back(std::move(rhs));
  return c;
}

Condition Condition::conj(Condition lhs, Condition rhs) {
  Condition c;
  c.kind = Kind::And;
  c.children.push_back(std::move(lhs));
  c.children.push_back(std::move(rhs));
  return c;
}

Condition Condition::disj(Condition lhs, Condition rhs) {
  Condition c;
  c.kind = Kind::Or;
  c.children.push_back(std::move(lhs));
  c.children.push_back(std::move(rhs));
  return c;
}

Condition Condition::negate(Condition operand) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(operand));
  return c;
}

namespace {

enum class Tok {
  End, Ident, Int, String, True, False,
  Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not,
  Plus, Minus, Star, LParen, RParen, Assign, Semi, Comma, LBracket, RBracket,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t number = 0;
  std::size_t pos = 0;
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t at, std::size_t len) {
    out.push_back(Token{k, std::string(src.substr(at, len)), 0, at});
    i = at + len;
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < src.size() && ident_char(static_cast<unsigned char>(src[i]))) ++i;
      std::string word(src.substr(start, i - start));
      Tok k = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
      out.push_back(Token{k, std::move(word), 0, start});
      continue;
    }
    if (std::isdigit(c)) {
      std::int64_t n = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        int d = src[i] - '0';
        if (n > (std::numeric_limits<std::int64_t>::max() - d) / 10)
          throw SyntaxError(start, "integer literal out of range");
        n = n * 10 + d;
        ++i;
      }
      out.push_back(Token{Tok::Int, std::string(src.substr(start, i - start)), n, start});
      continue;
    }
    if (c == '"') {
      std::string s;
      ++i;
      bool closed = false;
      while (i < src.size()) {
        char ch = src[i++];
        if (ch == '"') {
          closed = true;
          break;
        }
        if (ch == '\\') {
          if (i >= src.size()) break;
          ch = src[i++];
        }
        s += ch;
      }
      if (!closed) throw SyntaxError(start, "unterminated string literal");
      out.push_back(Token{Tok::String, std::move(s), 0, start});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "==") { push(Tok::Eq, i, 2); continue; }
    if (two == "!=") { push(Tok::Ne, i, 2); continue; }
    if (two == "<=") { push(Tok::Le, i, 2); continue; }
    if (two == ">=") { push(Tok::Ge, i, 2); continue; }
    if (two == "&&") { push(Tok::And, i, 2); continue; }
    if (two == "||") { push(Tok::Or, i, 2); continue; }
    if (two == ":=") { push(Tok::Assign, i, 2); continue; }
    switch (c) {
      case '<': push(Tok::Lt, i, 1); continue;
      case '>': push(Tok::Gt, i, 1); continue;
      case '!': push(Tok::Not, i, 1); continue;
      case '+': push(Tok::Plus, i, 1); continue;
      case '-': push(Tok::Minus, i, 1); continue;
      case '*': push(Tok::Star, i, 1); continue;
      case '(': push(Tok::LParen, i, 1); continue;
      case ')': push(Tok::RParen, i, 1); continue;
      case ';': push(Tok::Semi, i, 1); continue;
      case ',': push(Tok::Comma, i, 1); continue;
      case '[': push(Tok::LBracket, i, 1); continue;
      case ']': push(Tok::RBracket, i, 1); continue;
      default: break;
    }
    throw SyntaxError(i, std::string("unexpected character '") + src[i] + "'");
  }
  out.push_back(Token{Tok::End, "", 0, src.size()});
  return out;
}

bool is_relop(Tok t) {
  return t == Tok::Eq || t == Tok::Ne || t == Tok::Lt || t == Tok::Le ||
         t == Tok::Gt || t == Tok::Ge;
}

bool is_arith(Tok t) { return t == Tok::Plus || t == Tok::Minus || t == Tok::Star; }

CompareOp relop_of(Tok t) {
  switch (t) {
    case Tok::Eq: return CompareOp::Eq;
    case Tok::Ne: return CompareOp::Ne;
    case Tok::Lt: return CompareOp::Lt;
    case Tok::Le: return CompareOp::Le;
    case Tok::Gt: return CompareOp::Gt;
    default: return CompareOp::Ge;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input '" + peek().text + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(peek().pos, msg);
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

  Condition condition() {
    Condition lhs = conjunction();
    while (accept(Tok::Or)) lhs = Condition::disj(std::move(lhs), conjunction());
    return lhs;
  }

  Condition conjunction() {
    Condition lhs = unary();
    while (accept(Tok::And)) lhs = Condition::conj(std::move(lhs), unary());
    return lhs;
  }

  Condition unary() {
    if (accept(Tok::Not)) return Condition::negate(unary());
    if (peek().kind == Tok::LParen) {
      std::size_t saved = pos_;
      try {
        ++pos_;
        Condition inner = condition();
        expect(Tok::RParen, "')'");
        if (!is_relop(peek().kind) && !is_arith(peek().kind)) return inner;
      } catch (const SyntaxError&) {
      }
      pos_ = saved;
      return comparison();
    }
    if ((peek().kind == Tok::True || peek().kind == Tok::False) &&
        !is_relop(peek(1).kind) && !is_arith(peek(1).kind)) {
      bool b = peek().kind == Tok::True;
      ++pos_;
      return Condition::boolean(b);
    }
    return comparison();
  }

  Condition comparison() {
    Expr lhs = expr();
    if (!is_relop(peek().kind)) fail("expected comparison operator");
    CompareOp op = relop_of(peek().kind);
    ++pos_;
    return Condition::compare(std::move(lhs), op, expr());
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        lhs = Expr::binary(Expr::Kind::Add, std::move(lhs), term());
      } else if (accept(Tok::Minus)) {
        lhs = Expr::binary(Expr::Kind::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = primary();
    while (accept(Tok::Star)) lhs = Expr::binary(Expr::Kind::Mul, std::move(lhs), primary());
    return lhs;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        ++pos_;
        return Expr::literal(t.number);
      }
      case Tok::Minus: {
        if (peek(1).kind != Tok::Int) fail("expected integer after '-'");
        ++pos_;
        std::int64_t n = peek().number;
        ++pos_;
        return Expr::literal(-n);
      }
      case Tok::String: {
        ++pos_;
        return Expr::literal(t.text);
      }
      case Tok::True:
      case Tok::False: {
        ++pos_;
        return Expr::literal(t.kind == Tok::True);
      }
      case Tok::Ident: {
        ++pos_;
        return Expr::var(t.text);
      }
      case Tok::LParen: {
        ++pos_;
        Expr inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected expression");
    }
  }

  ActionSeq action() {
    ActionSeq seq;
    while (!at_end()) {
      if (peek().kind != Tok::Ident) fail("expected assignment target");
      std::string target = peek().text;
      ++pos_;
      expect(Tok::Assign, "':='");
      seq.push_back(Assignment{std::move(target), expr()});
      if (!accept(Tok::Semi)) break;
    }
    return seq;
  }

  Inscription inscription() {
    Inscription out;
    bool bracketed = accept(Tok::LBracket);
    if (!at_end() && peek().kind != Tok::RBracket) {
      out.push_back(expr());
      while (accept(Tok::Comma)) out.push_back(expr());
    }
    if (bracketed) expect(Tok::RBracket, "']'");
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    default: return 3;
  }
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      out += render_value(e.value);
      return;
    case Expr::Kind::Var:
      out += e.name;
      return;
    default:
      break;
  }
  int p = precedence(e.kind);
  const Expr& lhs = e.operands[0];
  const Expr& rhs = e.operands[1];
  bool lp = precedence(lhs.kind) < p;
  bool rp = precedence(rhs.kind) <= p;
  if (lp) out += '(';
  print_expr(lhs, out);
  if (lp) out += ')';
  out += e.kind == Expr::Kind::Add ? " + " : e.kind == Expr::Kind::Sub ? " - " : " * ";
  if (rp) out += '(';
  print_expr(rhs, out);
  if (rp) out += ')';
}

void print_cond(const Condition& c, std::string& out) {
  using K = Condition::Kind;
  switch (c.kind) {
    case K::Always:
      return;
    case K::Bool:
      out += c.flag ? "true" : "false";
      return;
    case K::Compare:
      print_expr(c.exprs[0], out);
      out += ' ';
      out += to_string(c.op);
      out += ' ';
      print_expr(c.exprs[1], out);
      return;
    case K::Not: {
      const Condition& inner = c.children[0];
      bool paren = inner.kind == K::Compare || inner.kind == K::And || inner.kind == K::Or;
      out += '!';
      if (paren) out += '(';
      print_cond(inner, out);
      if (paren) out += ')';
      return;
    }
    case K::And:
    case K::Or: {
      const Condition& lhs = c.children[0];
      const Condition& rhs = c.children[1];
      bool lp = c.kind == K::And && lhs.kind == K::Or;
      bool rp = rhs.kind == K::Or || (c.kind == K::And && rhs.kind == K::And);
      if (lp) out += '(';
      print_cond(lhs, out);
      if (lp) out += ')';
      out += c.kind == K::And ? " && " : " || ";
      if (rp) out += '(';
      print_cond(rhs, out);
      if (rp) out += ')';
      return;
    }
  }
}

[[noreturn]] void mismatch(const std::string& what) { throw Error(Errc::TypeMismatch, what); }

std::int64_t as_int(const Value& v, const char* op) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  mismatch(std::string("operator ") + op + " needs int operands, got " +
           std::string(to_string(type_of(v))));
}

}  // namespace

Condition parse_condition(std::string_view text) {
  Parser p(text);
  if (p.at_end()) return Condition::always();
  Condition c = p.condition();
  p.expect_end();
  return c;
}

ActionSeq parse_action(std::string_view text) {
  Parser p(text);
  ActionSeq a = p.action();
  p.expect_end();
  return a;
}

Expr parse_expression(std::string_view text) {
  Parser p(text);
  Expr e = p.expr();
  p.expect_end();
  return e;
}

Inscription parse_inscription(std::string_view text) {
  Parser p(text);
  Inscription i = p.inscription();
  p.expect_end();
  return i;
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

std::string print(const Expr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

std::string print(const Condition& c) {
  std::string out;
  print_cond(c, out);
  return out;
}

std::string print(const ActionSeq& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += "; ";
    out += a[i].target;
    out += " := ";
    print_expr(a[i].value, out);
  }
  return out;
}

std::string print_inscription(const Inscription& ins) {
  std::string out;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (i) out += ", ";
    print_expr(ins[i], out);
  }
  return out;
}

Value eval(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return e.value;
    case Expr::Kind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw Error(Errc::UnboundVariable, e.name);
      return it->second;
    }
    case Expr::Kind::Add:
      return as_int(eval(e.operands[0], env), "+") + as_int(eval(e.operands[1], env), "+");
    case Expr::Kind::Sub:
      return as_int(eval(e.operands[0], env), "-") - as_int(eval(e.operands[1], env), "-");
    case Expr::Kind::Mul:
      return as_int(eval(e.operands[0], env), "*") * as_int(eval(e.operands[1], env), "*");
  }
  return Value{};
}

bool eval_condition(const Condition& c, const Env& env) {
  using K = Condition::Kind;
  switch (c.kind) {
    case K::Always: return true;
    case K::Bool: return c.flag;
    case K::Not: return !eval_condition(c.children[0], env);
    case K::And: return eval_condition(c.children[0], env) && eval_condition(c.children[1], env);
    case K::Or: return eval_condition(c.children[0], env) || eval_condition(c.children[1], env);
    case K::Compare: break;
  }
  Value lhs = eval(c.exprs[0], env);
  Value rhs = eval(c.exprs[1], env);
  if (lhs.index() != rhs.index()) {
    mismatch("cannot compare " + std::string(to_string(type_of(lhs))) + " with " +
             std::string(to_string(type_of(rhs))));
  }
  if (c.op == CompareOp::Eq) return lhs == rhs;
  if (c.op == CompareOp::Ne) return lhs != rhs;
  if (type_of(lhs) == ValueType::Bool) mismatch("ordering comparison on bool");
  switch (c.op) {
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Gt: return lhs > rhs;
    default: return lhs >= rhs;
  }
}

Env eval_action(const ActionSeq& a, Env env) {
  for (const auto& step : a) {
    Value v = eval(step.value, env);
    env[step.target] = std::move(v);
  }
  return env;
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Var) out.insert(e.name);
  for (const auto& o : e.operands) collect_vars(o, out);
}

std::set<std::string> variables(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

std::set<std::string> variables(const Condition& c) {
  std::set<std::string> out;
  for (const auto& e : c.exprs) collect_vars(e, out);
  for (const auto& ch : c.children) {
    auto sub = variables(ch);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::set<std::string> reads(const ActionSeq& a) {
  std::set<std::string> written;
  std::set<std::string> out;
  for (const auto& step : a) {
    for (const auto& v : variables(step.value)) {
      if (!written.count(v)) out.insert(v);
    }
    written.insert(step.target);
  }
  return out;
}

std::set<std::string> targets(const ActionSeq& a) {
  std::set<std::string> out;
  for (const auto& step : a) out.insert(step.target);
  return out;
}

Expr rename_vars(const Expr& e, const Renaming& r) {
  Expr out = e;
  if (out.kind == Expr::Kind::Var) {
    auto it = r.find(out.name);
    if (it != r.end()) out.name = it->second;
  }
  for (auto& o : out.operands) o = rename_vars(o, r);
  return out;
}

Condition rename_vars(const Condition& c, const Renaming& r) {
  Condition out = c;
  for (auto& e : out.exprs) e = rename_vars(e, r);
  for (auto& ch : out.children) ch = rename_vars(ch, r);
  return out;
}

ActionSeq rename_vars(const ActionSeq& a, const Renaming& r) {
  ActionSeq out = a;
  for (auto& step : out) {
    auto it = r.find(step.target);
    if (it != r.end()) step.target = it->second;
    step.value = rename_vars(step.value, r);
  }
  return out;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& by) {
  if (e.kind == Expr::Kind::Var) {
    auto it = by.find(e.name);
    return it == by.end() ? e : it->second;
  }
  Expr out = e;
  for (auto& o : out.operands) o = substitute(o, by);
  return out;
}

}  // namespace gnet
