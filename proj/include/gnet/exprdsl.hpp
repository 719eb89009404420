#pragma once

// Composition expressions.
//
//   expr   := term ('>>' term)*                 left-associative seq
//   term   := 'empty' | name | '(' expr ')'
//           | 'seq' '(' expr ',' expr ')'   | 'alt' '(' expr ',' expr ')'
//           | 'iter' '(' expr ')'           | 'anyseq' '(' expr ',' expr ')'
//           | 'par' '(' expr ',' expr ')'
//           | 'disc' '(' expr (',' expr)* ';' expr ')'
//           | 'select' '(' expr (',' expr)* ')'
//           | 'refine' '(' expr ',' name ',' name ')'
//           | 'replace' '(' expr ',' expr ',' expr ')'
//   name   := IDENT | STRING
//
// IDENT admits letters, digits, '_', '-', '.' and non-ASCII bytes. A keyword
// is only a keyword when followed by '('. '#' comments run to end of line.

#include <string>
#include <string_view>
#include <vector>

#include "gnet/core.hpp"

namespace gnet {

struct CompositionExpr {
  enum class Kind { Empty, Ref, Seq, Alt, Iter, AnySeq, Par, Disc, Select, Refine, Replace };

  Kind kind = Kind::Empty;
  std::string name;   // Ref: service; Refine: operation
  std::string block;  // Refine
  /// Operands in source order; for Disc the continuation is last.
  std::vector<CompositionExpr> args;

  static CompositionExpr empty() { return {}; }
  static CompositionExpr ref(std::string n) { return {Kind::Ref, std::move(n), {}, {}}; }
  static CompositionExpr node(Kind k, std::vector<CompositionExpr> a) {
    return {k, {}, {}, std::move(a)};
  }

  bool operator==(const CompositionExpr&) const = default;
};

CompositionExpr parse_expr(std::string_view text);
std::string print(const CompositionExpr& e);

WebService eval_expr(const CompositionExpr& e, const Registry& reg);
/// Also appends every intermediate composed service (operands that are not
/// registry entries) to `derived`, innermost first, without duplicates.
WebService eval_expr(const CompositionExpr& e, const Registry& reg, std::vector<WebService>& derived);

}  // namespace gnet
