#include <algorithm>
#include <deque>
#include <unordered_map>

#include "gnet/analysis.hpp"
#include "gnet/error.hpp"
#include "gnet/sim.hpp"

namespace gnet {

std::vector<Enabling> flat_enabled(const FlatNet& net, const Marking& m) {
  RuleScope scope;
  scope.attributes = net.free_attributes;
  scope.domains = net.domains;
  std::vector<Enabling> out;
  for (const auto& t : net.transitions) {
    std::set<std::string> reads = t.extra_reads;
    auto g = variables(t.gate);
    reads.insert(g.begin(), g.end());
    for (const auto& o : t.outputs)
      for (const auto& [_, e] : o.entries) collect_vars(e, reads);
    auto found = enumerate_bindings(t.id, t.inputs, t.gate, reads, m, scope);
    out.insert(out.end(), found.begin(), found.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Marking flat_fire(const FlatNet& net, const Marking& m, const Enabling& e) {
  const FlatTransition* t = net.find_transition(e.transition);
  if (!t || t->inputs.size() != e.consumed.size()) throw Error(Errc::NotEnabled, e.transition);
  Marking next = m;
  for (std::size_t i = 0; i < t->inputs.size(); ++i)
    if (!remove_token(next, t->inputs[i].place, e.consumed[i]))
      throw Error(Errc::NotEnabled, e.transition + " lacks a token in " + t->inputs[i].place);
  auto record = carried_record(t->inputs, e.consumed);
  for (const auto& o : t->outputs) add_token(next, o.place, build_output(o, record, e.binding));
  return next;
}

std::string canonical(const GraphState& s) {
  return render_marking(s.marking) + " | " + render_env(s.env);
}

StateGraph explore(const GraphState& init, const Successors& next, const Limits& limits) {
  StateGraph g;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](const GraphState& s) -> std::optional<std::size_t> {
    std::string key = canonical(s);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (g.nodes.size() >= limits.max_states) {
      g.truncated = true;
      g.limit_hit = "maxStates";
      return std::nullopt;
    }
    index.emplace(std::move(key), g.nodes.size());
    g.nodes.push_back(s);
    g.out.emplace_back();
    g.expanded.push_back(false);
    return g.nodes.size() - 1;
  };
  add(init);
  g.initial = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    bool crowded = std::any_of(g.nodes[i].marking.begin(), g.nodes[i].marking.end(),
                               [&](const auto& kv) { return kv.second.size() > limits.max_tokens_per_place; });
    if (crowded) {
      g.truncated = true;
      if (g.limit_hit.empty()) g.limit_hit = "maxTokensPerPlace";
      continue;
    }
    bool complete = true;
    for (auto& [en, succ] : next(g.nodes[i])) {
      auto j = add(succ);
      if (!j) {
        complete = false;
        continue;
      }
      g.out[i].push_back(g.edges.size());
      g.edges.push_back({i, en.transition, en.binding, *j});
    }
    g.expanded[i] = complete;
  }
  return g;
}

StateGraph reachability(const FlatNet& flat, const Limits& limits) {
  if (limits.max_states == 0 || limits.max_tokens_per_place == 0)
    throw Error(Errc::InvalidModel, "limits must be positive");
  auto next = [&](const GraphState& s) {
    std::vector<std::pair<Enabling, GraphState>> out;
    for (auto& e : flat_enabled(flat, s.marking)) {
      GraphState n{flat_fire(flat, s.marking, e), {}};
      out.emplace_back(std::move(e), std::move(n));
    }
    return out;
  };
  return explore({flat.initial, {}}, next, limits);
}

StateGraph source_reachability(const WebService& ws, const Marking& initial, const Env& env,
                               const Limits& limits) {
  auto next = [&](const GraphState& s) {
    std::vector<std::pair<Enabling, GraphState>> out;
    for (auto& e : net_enabled(ws, s.marking, s.env)) {
      FireEffect fx = net_fire(ws, s.marking, s.env, e);
      out.emplace_back(std::move(e), GraphState{std::move(fx.marking), std::move(fx.env)});
    }
    return out;
  };
  return explore({initial, env}, next, limits);
}

AnalysisReport analyze(const StateGraph& graph, const std::set<std::string>& goal_places) {
  AnalysisReport r;
  r.state_count = graph.nodes.size();
  r.edge_count = graph.edges.size();
  r.truncated = graph.truncated;
  r.limit_hit = graph.limit_hit;

  auto at_goal = [&](const GraphState& s) {
    return std::any_of(goal_places.begin(), goal_places.end(),
                       [&](const std::string& g) { return token_count(s.marking, g) > 0; });
  };
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& s = graph.nodes[i];
    for (const auto& [_, tokens] : s.marking) r.bound_k = std::max(r.bound_k, tokens.size());
    r.max_total_tokens = std::max(r.max_total_tokens, total_tokens(s.marking));
    if (graph.expanded[i] && graph.out[i].empty() && !at_goal(s)) r.deadlocks.push_back(i);
  }

  if (graph.nodes.empty()) return r;
  std::vector<std::optional<std::size_t>> via(graph.nodes.size());
  std::vector<bool> seen(graph.nodes.size(), false);
  std::deque<std::size_t> work{graph.initial};
  seen[graph.initial] = true;
  while (!work.empty()) {
    std::size_t n = work.front();
    work.pop_front();
    if (at_goal(graph.nodes[n])) {
      r.goal_reachable = true;
      for (std::size_t cur = n; via[cur]; cur = graph.edges[*via[cur]].from)
        r.witness.push_back(*via[cur]);
      std::reverse(r.witness.begin(), r.witness.end());
      break;
    }
    for (std::size_t e : graph.out[n]) {
      std::size_t to = graph.edges[e].to;
      if (seen[to]) continue;
      seen[to] = true;
      via[to] = e;
      work.push_back(to);
    }
  }
  return r;
}

std::string AnalysisReport::render(const StateGraph& g) const {
  std::string out;
  out += "states: " + std::to_string(state_count) + "\n";
  out += "edges: " + std::to_string(edge_count) + "\n";
  out += "truncated: " + std::string(truncated ? "true" : "false") + "\n";
  out += "limit: " + (limit_hit.empty() ? std::string("-") : limit_hit) + "\n";
  out += "deadlocks: " + std::to_string(deadlocks.size()) + "\n";
  for (std::size_t d : deadlocks) out += "  " + canonical(g.nodes[d]) + "\n";
  out += "bound: " + std::to_string(bound_k) + "\n";
  out += "max_total_tokens: " + std::to_string(max_total_tokens) + "\n";
  out += "goal_reachable: " + std::string(goal_reachable ? "true" : "false") + "\n";
  out += "witness:";
  for (std::size_t e : witness) out += " " + g.edges[e].transition;
  out += "\n";
  return out;
}

namespace {

using NodeSet = std::set<std::size_t>;

NodeSet closure(const StateGraph& g, NodeSet s, const std::set<std::string>& silent) {
  std::vector<std::size_t> work(s.begin(), s.end());
  while (!work.empty()) {
    std::size_t n = work.back();
    work.pop_back();
    for (std::size_t e : g.out[n]) {
      const auto& edge = g.edges[e];
      if (silent.count(edge.transition) && s.insert(edge.to).second) work.push_back(edge.to);
    }
  }
  return s;
}

std::map<std::string, NodeSet> moves(const StateGraph& g, const NodeSet& s,
                                     const std::set<std::string>& silent) {
  std::map<std::string, NodeSet> out;
  for (std::size_t n : s)
    for (std::size_t e : g.out[n]) {
      const auto& edge = g.edges[e];
      if (!silent.count(edge.transition)) out[edge.transition].insert(edge.to);
    }
  for (auto& [_, targets] : out) targets = closure(g, targets, silent);
  return out;
}

}  // namespace

std::optional<std::vector<std::string>> language_difference(const StateGraph& a, const StateGraph& b,
                                                            const std::set<std::string>& silent) {
  const std::set<std::string> none;
  using Pair = std::pair<NodeSet, NodeSet>;
  std::map<Pair, std::vector<std::string>> seen;
  std::deque<Pair> work;
  Pair start{closure(a, {a.initial}, none), closure(b, {b.initial}, silent)};
  seen[start] = {};
  work.push_back(start);
  while (!work.empty()) {
    Pair cur = work.front();
    work.pop_front();
    const auto word = seen[cur];
    auto ma = moves(a, cur.first, none);
    auto mb = moves(b, cur.second, silent);
    std::set<std::string> labels;
    for (const auto& [l, _] : ma) labels.insert(l);
    for (const auto& [l, _] : mb) labels.insert(l);
    for (const auto& l : labels) {
      auto next_word = word;
      next_word.push_back(l);
      if (!ma.count(l) || !mb.count(l)) return next_word;
      Pair nxt{ma[l], mb[l]};
      if (seen.emplace(nxt, next_word).second) work.push_back(nxt);
    }
  }
  return std::nullopt;
}

}  // namespace gnet
