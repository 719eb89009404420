#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gnet/core.hpp"
#include "gnet/firing.hpp"
#include "gnet/marking.hpp"

namespace gnet {

/// Replaces every ISP place by a renamed copy of the invoked method's
/// subnet, recursively, failing once nesting exceeds `depth_limit`.
WebService inline_isps(const WebService& ws, const Registry& reg, std::size_t depth_limit);

/// Place holding the single record of stateful attributes after flattening.
inline constexpr std::string_view kAttributePlace = "GSP";

struct FlatPlace {
  std::string id;
  std::vector<std::string> signature;
  /// False for the attribute place: its tokens never merge into flowing ones.
  bool carries = true;
};

struct FlatTransition {
  std::string id;
  std::vector<InputArc> inputs;
  std::vector<OutputArc> outputs;
  Condition gate;
  bool internal = false;
  /// Source-level reads kept so free variables enumerate as before flattening.
  std::set<std::string> extra_reads;
};

struct FlatNet {
  std::vector<FlatPlace> places;
  std::vector<FlatTransition> transitions;
  std::map<std::string, std::vector<Value>> domains;
  std::set<std::string> free_attributes;
  Marking initial;

  const FlatPlace* find_place(std::string_view id) const;
  const FlatTransition* find_transition(std::string_view id) const;
};

std::string flat_first(const std::string& place);
std::string flat_last(const std::string& place);
std::string internal_transition(const std::string& place);

FlatNet flatten(const WebService& ws);
/// Also marks the method's initial place with a token built from `args`.
FlatNet flatten(const WebService& ws, const std::string& method, const std::vector<Value>& args);
/// Goal places of `method` (main method when empty) on both flat sides.
std::set<std::string> flat_goal_places(const WebService& ws, const std::string& method = {});

std::vector<Enabling> flat_enabled(const FlatNet& net, const Marking& m);
Marking flat_fire(const FlatNet& net, const Marking& m, const Enabling& e);

struct Limits {
  std::size_t max_states = 100000;
  std::size_t max_tokens_per_place = 64;
};

struct GraphState {
  Marking marking;
  Env env;
};

std::string canonical(const GraphState& s);

struct GraphEdge {
  std::size_t from = 0;
  std::string transition;
  Env binding;
  std::size_t to = 0;
};

struct StateGraph {
  std::vector<GraphState> nodes;
  std::vector<GraphEdge> edges;
  std::vector<std::vector<std::size_t>> out;  // edge indices per node
  std::vector<bool> expanded;
  std::size_t initial = 0;
  bool truncated = false;
  std::string limit_hit;
};

using Successors =
    std::function<std::vector<std::pair<Enabling, GraphState>>(const GraphState&)>;

/// Breadth-first exploration with canonical-state deduplication.
StateGraph explore(const GraphState& init, const Successors& next, const Limits& limits);
StateGraph reachability(const FlatNet& flat, const Limits& limits);
/// State space of an ISP-free source net under the simulator's firing rule.
StateGraph source_reachability(const WebService& ws, const Marking& initial, const Env& env,
                               const Limits& limits);

struct AnalysisReport {
  std::size_t state_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::size_t> deadlocks;
  std::size_t bound_k = 0;
  std::size_t max_total_tokens = 0;
  bool goal_reachable = false;
  std::vector<std::size_t> witness;  // edge indices from the initial state
  bool truncated = false;
  std::string limit_hit;

  bool ok() const { return deadlocks.empty() && goal_reachable && !truncated; }
  std::string render(const StateGraph& g) const;
};

AnalysisReport analyze(const StateGraph& graph, const std::set<std::string>& goal_places);

/// Shortest label sequence accepted by exactly one of the two graphs, where
/// edges labeled by `silent` transitions of `b` are erased. Every state is
/// accepting, so the languages are prefix-closed.
std::optional<std::vector<std::string>> language_difference(const StateGraph& a, const StateGraph& b,
                                                            const std::set<std::string>& silent);

}  // namespace gnet
