#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gnet/core.hpp"
#include "gnet/firing.hpp"
#include "gnet/marking.hpp"

namespace gnet {

struct PlacedToken {
  std::string place;
  Token token;

  bool operator==(const PlacedToken&) const = default;
};

struct FiringEvent {
  std::size_t depth = 0;
  std::string transition;
  Env binding;
  std::vector<PlacedToken> consumed;
  std::vector<PlacedToken> produced;
};

struct Frame {
  std::shared_ptr<const WebService> net;
  std::string method;
  Marking marking;
  Env env;
};

/// An absent seed means the deterministic policy.
struct SimState {
  std::vector<Frame> frames;
  std::vector<FiringEvent> trace;
  std::optional<std::uint64_t> rng_seed;
  std::mt19937_64 rng;
  std::size_t steps = 0;
};

struct SimContext {
  const Registry* registry = nullptr;
  std::size_t depth_limit = 16;
  std::size_t max_steps = 10000;
};

struct Policy {
  std::optional<std::uint64_t> seed;

  static Policy deterministic() { return {}; }
  static Policy random(std::uint64_t s) { return {s}; }
};

enum class Outcome { Goal, Deadlock, StepLimit };

std::string_view to_string(Outcome o);

struct RunResult {
  SimState state;
  Outcome outcome = Outcome::Deadlock;
};

// Single-net firing rule, also used for state-space exploration of source nets.

/// Stateful attributes: those declared with an initial value.
Env initial_env(const WebService& ws);
RuleScope rule_scope(const WebService& ws, const Env& env);
std::vector<InputArc> input_arcs(const InternalStructure& is, const std::string& transition);
/// Variables a transition reads: patterns, gate, action reads and output
/// variables the action does not assign.
std::set<std::string> transition_reads(const InternalStructure& is, const std::string& transition);
std::vector<Enabling> net_enabled(const WebService& ws, const Marking& m, const Env& env);

struct FireEffect {
  Marking marking;
  Env env;
  std::vector<PlacedToken> consumed;
  std::vector<PlacedToken> produced;
};

/// Tokens produced into ISP places come out pending.
FireEffect net_fire(const WebService& ws, const Marking& m, const Env& env, const Enabling& e);

// Token game with call/return across nets.

SimState init_state(std::shared_ptr<const WebService> ws, const std::string& method,
                    const std::vector<Value>& args);
SimState init_state(const WebService& ws, const std::string& method, const std::vector<Value>& args);

/// Enablings of the innermost frame.
std::vector<Enabling> enabled(const SimState& state);
bool at_goal(const Frame& frame);

SimState fire(const SimState& state, const Enabling& e, const SimContext& ctx);
SimState fire(const SimState& state, const std::string& transition, const Env& binding,
              const SimContext& ctx);
/// Runs the method invoked by the pending token in `isp_place` to completion
/// and returns its result into the token.
SimState invoke_isp(const SimState& state, const std::string& isp_place, const SimContext& ctx);
RunResult run(SimState state, const Policy& policy, const SimContext& ctx);

std::string render_event(const FiringEvent& e);
std::string render_trace(const std::vector<FiringEvent>& trace);

}  // namespace gnet
