#include <algorithm>

#include "gnet/analysis.hpp"
#include "gnet/error.hpp"
#include "gnet/sim.hpp"

namespace gnet {

std::string flat_first(const std::string& place) { return place + "f"; }
std::string flat_last(const std::string& place) { return place + "l"; }
std::string internal_transition(const std::string& place) { return "T_" + place; }

const FlatPlace* FlatNet::find_place(std::string_view id) const {
  for (const auto& p : places)
    if (p.id == id) return &p;
  return nullptr;
}

const FlatTransition* FlatNet::find_transition(std::string_view id) const {
  for (const auto& t : transitions)
    if (t.id == id) return &t;
  return nullptr;
}

namespace {

struct Attributes {
  std::vector<std::string> stateful;
  std::set<std::string> all;

  bool is_stateful(const std::string& n) const {
    return std::find(stateful.begin(), stateful.end(), n) != stateful.end();
  }
};

std::vector<std::string> input_fields(const Inscription* ins, const Attributes& attrs) {
  std::vector<std::string> out;
  if (!ins) return out;
  for (const auto& e : *ins)
    if (!attrs.all.count(e.name)) out.push_back(e.name);
  return out;
}

std::vector<std::string> output_fields(const Inscription* ins) {
  std::vector<std::string> out;
  if (!ins) return out;
  for (std::size_t k = 0; k < ins->size(); ++k)
    out.push_back((*ins)[k].is_var() ? (*ins)[k].name : positional_field(k + 1));
  return out;
}

// Fields every adjacent arc agrees on, in the order of the first arc
// (consuming arcs first).
std::vector<std::string> signature(const InternalStructure& is, const std::string& place,
                                   const Attributes& attrs) {
  std::vector<std::vector<std::string>> lists;
  for (const auto& a : is.arcs)
    if (a.from == place) lists.push_back(input_fields(is.inscription(a), attrs));
  for (const auto& a : is.arcs)
    if (a.to == place) lists.push_back(output_fields(is.inscription(a)));
  if (lists.empty()) return {};
  std::vector<std::string> out;
  for (const auto& f : lists.front()) {
    bool everywhere = std::all_of(lists.begin(), lists.end(), [&](const auto& l) {
      return std::find(l.begin(), l.end(), f) != l.end();
    });
    if (everywhere && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

FlatTransition compile(const WebService& ws, const std::string& t, const Attributes& attrs) {
  const auto& is = ws.net.is;
  FlatTransition ft;
  ft.id = t;
  ft.extra_reads = transition_reads(is, t);
  if (const Condition* c = is.condition(t)) ft.gate = *c;

  std::map<std::string, Expr> sigma;
  std::set<std::string> assigned;
  if (const ActionSeq* action = is.action(t)) {
    for (const auto& a : *action) sigma[a.target] = substitute(a.value, sigma);
    assigned = targets(*action);
  }
  bool touches_state = false;
  for (const auto& n : attrs.stateful)
    if (ft.extra_reads.count(n) || assigned.count(n)) touches_state = true;

  for (const auto& a : is.arcs) {
    if (a.to != t) continue;
    ft.inputs.push_back({flat_last(a.from), input_fields(is.inscription(a), attrs), true});
  }
  if (touches_state)
    ft.inputs.push_back({std::string(kAttributePlace), attrs.stateful, false});

  for (const auto& a : is.arcs) {
    if (a.from != t) continue;
    OutputArc out{flat_first(a.to), {}, true};
    if (const Inscription* ins = is.inscription(a)) {
      for (std::size_t k = 0; k < ins->size(); ++k) {
        const Expr& x = (*ins)[k];
        out.entries.emplace_back(x.is_var() ? x.name : positional_field(k + 1), substitute(x, sigma));
      }
    }
    for (const auto& x : assigned) {
      if (attrs.all.count(x)) continue;
      bool listed = std::any_of(out.entries.begin(), out.entries.end(),
                                [&](const auto& e) { return e.first == x; });
      if (!listed) out.entries.emplace_back(x, sigma.at(x));
    }
    ft.outputs.push_back(std::move(out));
  }
  if (touches_state) {
    OutputArc out{std::string(kAttributePlace), {}, false};
    for (const auto& n : attrs.stateful)
      out.entries.emplace_back(n, sigma.count(n) ? sigma.at(n) : Expr::var(n));
    ft.outputs.push_back(std::move(out));
  }
  return ft;
}

FlatTransition copy_transition(const std::string& place, const std::vector<std::string>& sig) {
  FlatTransition ft;
  ft.id = internal_transition(place);
  ft.internal = true;
  ft.inputs.push_back({flat_first(place), sig, true});
  OutputArc out{flat_last(place), {}, true};
  for (const auto& f : sig) out.entries.emplace_back(f, Expr::var(f));
  ft.outputs.push_back(std::move(out));
  return ft;
}

}  // namespace

FlatNet flatten(const WebService& ws) {
  const auto& is = ws.net.is;
  for (const auto& p : is.places)
    if (p.kind == PlaceKind::InstantiatedSwitch)
      throw Error(Errc::UnflattenableIsp, p.id + " invokes " + p.invoked_gnet);

  Attributes attrs;
  FlatNet flat;
  Token state;
  for (const auto& a : ws.net.gsp.attributes) {
    attrs.all.insert(a.name);
    if (a.initial) {
      attrs.stateful.push_back(a.name);
      state.fields[a.name] = *a.initial;
    } else {
      flat.free_attributes.insert(a.name);
    }
    if (a.domain) flat.domains[a.name] = *a.domain;
  }

  std::vector<std::string> place_ids;
  for (const auto& p : is.places) place_ids.push_back(p.id);
  std::sort(place_ids.begin(), place_ids.end(), natural_less);
  std::map<std::string, std::vector<std::string>> sigs;
  for (const auto& id : place_ids) {
    sigs[id] = signature(is, id, attrs);
    flat.places.push_back({flat_first(id), sigs[id], true});
    flat.places.push_back({flat_last(id), sigs[id], true});
  }
  if (!attrs.stateful.empty()) {
    flat.places.push_back({std::string(kAttributePlace), attrs.stateful, false});
    add_token(flat.initial, std::string(kAttributePlace), state);
  }

  std::vector<std::string> transition_ids;
  for (const auto& t : is.transitions) transition_ids.push_back(t.id);
  std::sort(transition_ids.begin(), transition_ids.end(), natural_less);

  // Each place's copy transition sits just before the first transition
  // consuming from it; a sink's right after its first producer.
  std::set<std::string> emitted;
  auto emit_copy = [&](const std::string& p) {
    if (!emitted.insert(p).second) return;
    flat.transitions.push_back(copy_transition(p, sigs[p]));
  };
  for (const auto& t : transition_ids) {
    for (const auto& p : is.preset(t)) emit_copy(p);
    flat.transitions.push_back(compile(ws, t, attrs));
    for (const auto& q : is.postset(t))
      if (is.place_postset(q).empty()) emit_copy(q);
  }
  for (const auto& p : place_ids) emit_copy(p);
  return flat;
}

FlatNet flatten(const WebService& ws, const std::string& method, const std::vector<Value>& args) {
  FlatNet flat = flatten(ws);
  const MethodSpec* m = ws.net.gsp.find_method(method);
  if (!m) throw Error(Errc::UnknownMethod, ws.name + "." + method);
  if (m->params.size() != args.size())
    throw Error(Errc::ArityMismatch, ws.name + "." + method + " expects " +
                                         std::to_string(m->params.size()) + " arguments");
  Token init;
  for (std::size_t i = 0; i < args.size(); ++i) init.fields[m->params[i].name] = args[i];
  add_token(flat.initial, flat_first(m->init_place), std::move(init));
  return flat;
}

std::set<std::string> flat_goal_places(const WebService& ws, const std::string& method) {
  const MethodSpec* m = method.empty() ? main_method(ws) : ws.net.gsp.find_method(method);
  if (!m) throw Error(Errc::UnknownMethod, ws.name + "." + method);
  std::set<std::string> out;
  for (const auto& g : m->goal_places) {
    out.insert(flat_first(g));
    out.insert(flat_last(g));
  }
  return out;
}

}  // namespace gnet
