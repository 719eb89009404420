#include "gnet/sim.hpp"

#include <algorithm>

#include "gnet/error.hpp"

namespace gnet {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Goal: return "Goal";
    case Outcome::Deadlock: return "Deadlock";
    case Outcome::StepLimit: return "StepLimit";
  }
  return "?";
}

Env initial_env(const WebService& ws) {
  Env env;
  for (const auto& a : ws.net.gsp.attributes)
    if (a.initial) env[a.name] = *a.initial;
  return env;
}

RuleScope rule_scope(const WebService& ws, const Env& env) {
  RuleScope scope;
  for (const auto& a : ws.net.gsp.attributes) {
    scope.attributes.insert(a.name);
    if (a.domain) scope.domains[a.name] = *a.domain;
  }
  scope.env = env;
  return scope;
}

std::vector<InputArc> input_arcs(const InternalStructure& is, const std::string& transition) {
  std::vector<InputArc> out;
  for (const auto& a : is.arcs) {
    if (a.to != transition) continue;
    InputArc in{a.from, {}, true};
    if (const Inscription* ins = is.inscription(a))
      for (const auto& e : *ins) in.vars.push_back(e.name);
    out.push_back(std::move(in));
  }
  return out;
}

std::set<std::string> transition_reads(const InternalStructure& is, const std::string& transition) {
  std::set<std::string> out;
  for (const auto& in : input_arcs(is, transition)) out.insert(in.vars.begin(), in.vars.end());
  if (const Condition* c = is.condition(transition)) {
    auto v = variables(*c);
    out.insert(v.begin(), v.end());
  }
  std::set<std::string> assigned;
  if (const ActionSeq* a = is.action(transition)) {
    auto r = reads(*a);
    out.insert(r.begin(), r.end());
    assigned = targets(*a);
  }
  for (const auto& a : is.arcs) {
    if (a.from != transition) continue;
    if (const Inscription* ins = is.inscription(a))
      for (const auto& e : *ins)
        for (const auto& v : variables(e))
          if (!assigned.count(v)) out.insert(v);
  }
  return out;
}

std::vector<Enabling> net_enabled(const WebService& ws, const Marking& m, const Env& env) {
  const auto& is = ws.net.is;
  RuleScope scope = rule_scope(ws, env);
  std::vector<Enabling> out;
  for (const auto& t : is.transitions) {
    const Condition* gate = is.condition(t.id);
    auto found = enumerate_bindings(t.id, input_arcs(is, t.id), gate ? *gate : Condition::always(),
                                    transition_reads(is, t.id), m, scope);
    out.insert(out.end(), found.begin(), found.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FireEffect net_fire(const WebService& ws, const Marking& m, const Env& env, const Enabling& e) {
  const auto& is = ws.net.is;
  auto inputs = input_arcs(is, e.transition);
  if (inputs.size() != e.consumed.size()) throw Error(Errc::NotEnabled, e.transition);

  FireEffect fx{m, env, {}, {}};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!remove_token(fx.marking, inputs[i].place, e.consumed[i]))
      throw Error(Errc::NotEnabled, e.transition + " lacks a token in " + inputs[i].place);
    fx.consumed.push_back({inputs[i].place, e.consumed[i]});
  }

  const ActionSeq* action = is.action(e.transition);
  Env after = action ? eval_action(*action, e.binding) : e.binding;
  for (const auto& a : ws.net.gsp.attributes)
    if (a.initial && after.count(a.name)) fx.env[a.name] = after.at(a.name);

  auto record = carried_record(inputs, e.consumed);
  if (action) {
    for (const auto& x : targets(*action))
      if (!ws.net.gsp.find_attribute(x)) record[x] = after.at(x);
  }

  for (const auto& a : is.arcs) {
    if (a.from != e.transition) continue;
    OutputArc out{a.to, {}, true};
    if (const Inscription* ins = is.inscription(a)) {
      for (std::size_t k = 0; k < ins->size(); ++k) {
        const Expr& x = (*ins)[k];
        out.entries.emplace_back(x.is_var() ? x.name : positional_field(k + 1), x);
      }
    }
    Token tok = build_output(out, record, after);
    const Place* target = is.find_place(a.to);
    if (target && target->kind == PlaceKind::InstantiatedSwitch) tok.pending = true;
    fx.produced.push_back({a.to, tok});
    add_token(fx.marking, a.to, std::move(tok));
  }
  return fx;
}

namespace {

const MethodSpec& method_of(const Frame& f) {
  const MethodSpec* m = f.net->net.gsp.find_method(f.method);
  if (!m) throw Error(Errc::UnknownMethod, f.net->name + "." + f.method);
  return *m;
}

Frame make_frame(std::shared_ptr<const WebService> ws, const MethodSpec& method, Token init) {
  Frame f{ws, method.name, {}, initial_env(*ws)};
  const Place* pl = ws->net.is.find_place(method.init_place);
  init.pending = pl && pl->kind == PlaceKind::InstantiatedSwitch;
  add_token(f.marking, method.init_place, std::move(init));
  return f;
}

void apply(SimState& st, const Enabling& e) {
  Frame& top = st.frames.back();
  FireEffect fx = net_fire(*top.net, top.marking, top.env, e);
  top.marking = std::move(fx.marking);
  top.env = std::move(fx.env);
  st.trace.push_back({st.frames.size() - 1, e.transition, e.binding, std::move(fx.consumed),
                      std::move(fx.produced)});
  ++st.steps;
}

std::optional<std::string> pending_place(const Frame& f) {
  for (const auto& [place, tokens] : f.marking)
    for (const auto& t : tokens)
      if (t.pending) return place;
  return std::nullopt;
}

Outcome run_frame(SimState& st, const SimContext& ctx);

void invoke_in_place(SimState& st, const std::string& isp_place, const SimContext& ctx) {
  std::shared_ptr<const WebService> caller_net = st.frames.back().net;
  const Place* pl = caller_net->net.is.find_place(isp_place);
  if (!pl || pl->kind != PlaceKind::InstantiatedSwitch)
    throw Error(Errc::InvalidModel, isp_place + " is not an ISP place");

  Token call;
  {
    const auto& marking = st.frames.back().marking;
    auto it = marking.find(isp_place);
    bool found = false;
    if (it != marking.end()) {
      for (const auto& t : it->second) {
        if (t.pending) {
          call = t;
          found = true;
          break;
        }
      }
    }
    if (!found) throw Error(Errc::NotEnabled, "no pending invocation in " + isp_place);
  }

  if (!ctx.registry) throw Error(Errc::UnknownService, pl->invoked_gnet);
  auto callee = ctx.registry->lookup_shared(pl->invoked_gnet);

  Token result = call;
  result.pending = false;
  if (!callee->net.gsp.methods.empty()) {
    const MethodSpec* method = callee->net.gsp.find_method(pl->using_method);
    if (!method) throw Error(Errc::UnknownMethod, callee->name + "." + pl->using_method);
    if (st.frames.size() >= ctx.depth_limit)
      throw Error(Errc::DepthLimitExceeded, "invoking " + callee->name + " at depth " +
                                                std::to_string(st.frames.size()));
    Token args;
    for (const auto& param : method->params) {
      auto f = call.fields.find(param.name);
      if (f == call.fields.end())
        throw Error(Errc::ArityMismatch, callee->name + "." + method->name + " needs " + param.name);
      args.fields[param.name] = f->second;
    }
    st.frames.push_back(make_frame(callee, *method, std::move(args)));
    Outcome o = run_frame(st, ctx);
    if (o == Outcome::Deadlock) throw Error(Errc::SubnetDeadlock, callee->name + "." + method->name);
    if (o == Outcome::StepLimit) throw Error(Errc::StepLimit, "inside " + callee->name);

    const Frame& sub = st.frames.back();
    bool got = false;
    for (const auto& g : method->goal_places) {
      auto it = sub.marking.find(g);
      if (it == sub.marking.end()) continue;
      for (const auto& t : it->second) {
        if (t.pending) continue;
        for (const auto& [k, v] : t.fields) result.fields[k] = v;
        got = true;
        break;
      }
      if (got) break;
    }
    st.frames.pop_back();
  }
  Marking& m = st.frames.back().marking;
  remove_token(m, isp_place, call);
  add_token(m, isp_place, std::move(result));
}

void settle(SimState& st, const SimContext& ctx) {
  while (auto place = pending_place(st.frames.back())) invoke_in_place(st, *place, ctx);
}

Outcome run_frame(SimState& st, const SimContext& ctx) {
  for (;;) {
    settle(st, ctx);
    if (at_goal(st.frames.back())) return Outcome::Goal;
    auto options = enabled(st);
    if (options.empty()) return Outcome::Deadlock;
    if (st.steps >= ctx.max_steps) return Outcome::StepLimit;
    std::size_t pick = st.rng_seed ? static_cast<std::size_t>(st.rng() % options.size()) : 0;
    apply(st, options[pick]);
  }
}

}  // namespace

SimState init_state(std::shared_ptr<const WebService> ws, const std::string& method,
                    const std::vector<Value>& args) {
  const MethodSpec* m = ws->net.gsp.find_method(method);
  if (!m) throw Error(Errc::UnknownMethod, ws->name + "." + method);
  if (m->params.size() != args.size())
    throw Error(Errc::ArityMismatch, ws->name + "." + method + " expects " +
                                         std::to_string(m->params.size()) + " arguments");
  Token init;
  for (std::size_t i = 0; i < args.size(); ++i) init.fields[m->params[i].name] = args[i];
  SimState st;
  st.frames.push_back(make_frame(ws, *m, std::move(init)));
  return st;
}

SimState init_state(const WebService& ws, const std::string& method, const std::vector<Value>& args) {
  return init_state(std::make_shared<const WebService>(ws), method, args);
}

std::vector<Enabling> enabled(const SimState& state) {
  const Frame& top = state.frames.back();
  return net_enabled(*top.net, top.marking, top.env);
}

bool at_goal(const Frame& frame) {
  for (const auto& g : method_of(frame).goal_places) {
    auto it = frame.marking.find(g);
    if (it == frame.marking.end()) continue;
    for (const auto& t : it->second)
      if (!t.pending) return true;
  }
  return false;
}

SimState fire(const SimState& state, const Enabling& e, const SimContext& ctx) {
  auto options = enabled(state);
  if (std::find(options.begin(), options.end(), e) == options.end())
    throw Error(Errc::NotEnabled, e.transition + " with " + render_env(e.binding));
  SimState next = state;
  apply(next, e);
  settle(next, ctx);
  return next;
}

SimState fire(const SimState& state, const std::string& transition, const Env& binding,
              const SimContext& ctx) {
  for (const auto& e : enabled(state))
    if (e.transition == transition && e.binding == binding) return fire(state, e, ctx);
  throw Error(Errc::NotEnabled, transition + " with " + render_env(binding));
}

SimState invoke_isp(const SimState& state, const std::string& isp_place, const SimContext& ctx) {
  SimState next = state;
  invoke_in_place(next, isp_place, ctx);
  return next;
}

RunResult run(SimState state, const Policy& policy, const SimContext& ctx) {
  state.rng_seed = policy.seed;
  if (policy.seed) state.rng.seed(*policy.seed);
  RunResult r{std::move(state), Outcome::Deadlock};
  try {
    r.outcome = run_frame(r.state, ctx);
  } catch (const Error& e) {
    if (e.code() != Errc::StepLimit) throw;
    r.outcome = Outcome::StepLimit;
  }
  return r;
}

namespace {

std::string render_placed(const std::vector<PlacedToken>& tokens) {
  std::string out = "[";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ", ";
    out += tokens[i].place + ":" + render_token(tokens[i].token);
  }
  return out + "]";
}

}  // namespace

std::string render_event(const FiringEvent& e) {
  return std::to_string(e.depth) + " " + e.transition + " " + render_env(e.binding) + " " +
         render_placed(e.consumed) + " -> " + render_placed(e.produced);
}

std::string render_trace(const std::vector<FiringEvent>& trace) {
  std::string out;
  for (const auto& e : trace) out += render_event(e) + "\n";
  return out;
}

}  // namespace gnet
