#include "gnet/firing.hpp"

#include <algorithm>

#include "gnet/error.hpp"

namespace gnet {

std::map<std::string, Value> carried_record(const std::vector<InputArc>& inputs,
                                            const std::vector<Token>& consumed) {
  std::map<std::string, Value> record;
  for (std::size_t i = 0; i < inputs.size() && i < consumed.size(); ++i) {
    if (!inputs[i].carries) continue;
    for (const auto& [k, v] : consumed[i].fields) record.emplace(k, v);
  }
  return record;
}

namespace {

struct Search {
  const std::string& transition;
  const std::vector<InputArc>& inputs;
  const Condition& gate;
  const std::set<std::string>& reads;
  const Marking& marking;
  const RuleScope& scope;
  std::vector<Enabling> out;
  std::vector<Token> chosen;

  void choose(std::size_t i) {
    if (i == inputs.size()) {
      bind();
      return;
    }
    auto it = marking.find(inputs[i].place);
    if (it == marking.end()) return;
    const auto& tokens = it->second;
    for (auto tok = tokens.begin(); tok != tokens.end(); tok = tokens.upper_bound(*tok)) {
      if (tok->pending) continue;
      // The same token may be picked by several arcs only up to its multiplicity.
      std::size_t used = 0;
      for (std::size_t j = 0; j < i; ++j)
        if (inputs[j].place == inputs[i].place && chosen[j] == *tok) ++used;
      if (used >= tokens.count(*tok)) continue;
      chosen.push_back(*tok);
      choose(i + 1);
      chosen.pop_back();
    }
  }

  void bind() {
    Env pattern;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      for (const auto& v : inputs[i].vars) {
        if (scope.attributes.count(v)) continue;
        auto f = chosen[i].fields.find(v);
        if (f == chosen[i].fields.end()) return;
        auto [p, fresh] = pattern.emplace(v, f->second);
        if (!fresh && p->second != f->second) return;
      }
    }
    Env binding = carried_record(inputs, chosen);
    for (const auto& [k, v] : pattern) binding[k] = v;
    for (const auto& [k, v] : scope.env) binding[k] = v;

    std::vector<std::string> free;
    for (const auto& r : reads)
      if (!binding.count(r)) free.push_back(r);
    for (const auto& f : free)
      if (!scope.domains.count(f)) throw Error(Errc::UnboundFreeVariable, f + " in " + transition);
    enumerate(free, 0, binding);
  }

  void enumerate(const std::vector<std::string>& free, std::size_t k, Env& binding) {
    if (k == free.size()) {
      if (eval_condition(gate, binding)) out.push_back({transition, binding, chosen});
      return;
    }
    for (const auto& v : scope.domains.at(free[k])) {
      binding[free[k]] = v;
      enumerate(free, k + 1, binding);
    }
    binding.erase(free[k]);
  }
};

}  // namespace

std::vector<Enabling> enumerate_bindings(const std::string& transition,
                                         const std::vector<InputArc>& inputs,
                                         const Condition& gate,
                                         const std::set<std::string>& reads,
                                         const Marking& marking, const RuleScope& scope) {
  Search s{transition, inputs, gate, reads, marking, scope, {}, {}};
  s.choose(0);
  std::sort(s.out.begin(), s.out.end());
  s.out.erase(std::unique(s.out.begin(), s.out.end()), s.out.end());
  return s.out;
}

Token build_output(const OutputArc& arc, const std::map<std::string, Value>& carried,
                   const Env& env) {
  Token t;
  if (arc.carries) t.fields = carried;
  for (const auto& [field, expr] : arc.entries) t.fields[field] = eval(expr, env);
  return t;
}

std::string positional_field(std::size_t k) { return "_" + std::to_string(k); }

}  // namespace gnet
