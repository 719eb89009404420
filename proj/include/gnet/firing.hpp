#pragma once

// Firing rule shared by the G-Net simulator and the flattened net engine.
//
// Tokens flowing through "carrying" places keep every field they picked up;
// a transition's carried record R is the merge of its consumed carrying
// tokens (earlier input arcs win on clashes). The binding is R, overlaid by
// the pattern variables of every input arc, overlaid by the attribute
// environment. Variables read by the transition but still unbound are free
// and are enumerated over their declared domains.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gnet/guards.hpp"
#include "gnet/marking.hpp"

namespace gnet {

struct InputArc {
  std::string place;
  std::vector<std::string> vars;
  bool carries = true;
};

struct OutputArc {
  std::string place;
  std::vector<std::pair<std::string, Expr>> entries;
  bool carries = true;
};

struct Enabling {
  std::string transition;
  Env binding;
  std::vector<Token> consumed;  // one per input arc, in arc order

  bool operator==(const Enabling&) const = default;
  bool operator<(const Enabling& o) const {
    return std::tie(transition, binding, consumed) <
           std::tie(o.transition, o.binding, o.consumed);
  }
};

struct RuleScope {
  /// Names never looked up in tokens: bound from `env` or enumerated.
  std::set<std::string> attributes;
  Env env;
  std::map<std::string, std::vector<Value>> domains;
};

std::map<std::string, Value> carried_record(const std::vector<InputArc>& inputs,
                                            const std::vector<Token>& consumed);

/// All enablings of one transition, sorted and free of duplicates.
std::vector<Enabling> enumerate_bindings(const std::string& transition,
                                         const std::vector<InputArc>& inputs,
                                         const Condition& gate,
                                         const std::set<std::string>& reads,
                                         const Marking& marking, const RuleScope& scope);

/// Carrying outputs start from `carried`; the others hold only their entries.
Token build_output(const OutputArc& arc, const std::map<std::string, Value>& carried,
                   const Env& env);

/// Field name given to the k-th (1-based) output entry that is not a variable.
std::string positional_field(std::size_t k);

}  // namespace gnet
