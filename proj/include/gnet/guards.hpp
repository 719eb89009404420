#pragma once

// Inscription language shared by transition conditions, transition actions
// and arc inscriptions.
//
//   condition  := or
//   or         := and ('||' and)*
//   and        := unary ('&&' unary)*
//   unary      := '!' unary | '(' or ')' | 'true' | 'false' | compare
//   compare    := expr ('=='|'!='|'<'|'<='|'>'|'>=') expr
//   expr       := term (('+'|'-') term)*
//   term       := primary ('*' primary)*
//   primary    := INT | '-' INT | STRING | 'true' | 'false' | IDENT | '(' expr ')'
//   action     := [assign (';' assign)* [';']]
//   assign     := IDENT ':=' expr
//   inscription:= ['['] [expr (',' expr)*] [']']
//
// The empty condition text denotes the always-true condition.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gnet/value.hpp"

namespace gnet {

struct Expr {
  enum class Kind { Literal, Var, Add, Sub, Mul };

  Kind kind = Kind::Literal;
  Value value = std::int64_t{0};
  std::string name;
  std::vector<Expr> operands;

  static Expr literal(Value v);
  static Expr var(std::string name);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);

  bool is_var() const { return kind == Kind::Var; }

  bool operator==(const Expr&) const = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Condition {
  enum class Kind { Always, Bool, Compare, And, Or, Not };

  Kind kind = Kind::Always;
  bool flag = true;
  CompareOp op = CompareOp::Eq;
  std::vector<Expr> exprs;           // Compare: lhs, rhs
  std::vector<Condition> children;   // And/Or: lhs, rhs; Not: operand

  static Condition always();
  static Condition boolean(bool b);
  static Condition compare(Expr lhs, CompareOp op, Expr rhs);
  static Condition conj(Condition lhs, Condition rhs);
  static Condition disj(Condition lhs, Condition rhs);
  static Condition negate(Condition c);

  bool is_always() const { return kind == Kind::Always; }

  bool operator==(const Condition&) const = default;
};

struct Assignment {
  std::string target;
  Expr value;

  bool operator==(const Assignment&) const = default;
};

using ActionSeq = std::vector<Assignment>;

/// Ordered tuple on an arc. On input arcs every entry is a variable that
/// binds the token field of the same name; on output arcs entries are
/// arbitrary expressions.
using Inscription = std::vector<Expr>;

Condition parse_condition(std::string_view text);
ActionSeq parse_action(std::string_view text);
Expr parse_expression(std::string_view text);
Inscription parse_inscription(std::string_view text);

std::string print(const Expr& e);
std::string print(const Condition& c);
std::string print(const ActionSeq& a);
std::string print_inscription(const Inscription& i);
std::string_view to_string(CompareOp op);

Value eval(const Expr& e, const Env& env);
bool eval_condition(const Condition& c, const Env& env);
/// Applies assignments left to right; later assignments observe earlier ones.
Env eval_action(const ActionSeq& a, Env env);

void collect_vars(const Expr& e, std::set<std::string>& out);
std::set<std::string> variables(const Expr& e);
std::set<std::string> variables(const Condition& c);
/// Variables read before being written by the sequence.
std::set<std::string> reads(const ActionSeq& a);
std::set<std::string> targets(const ActionSeq& a);

using Renaming = std::map<std::string, std::string>;

Expr rename_vars(const Expr& e, const Renaming& r);
Condition rename_vars(const Condition& c, const Renaming& r);
ActionSeq rename_vars(const ActionSeq& a, const Renaming& r);

/// Replaces every variable present in the map with its expression.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& by);

}  // namespace gnet
