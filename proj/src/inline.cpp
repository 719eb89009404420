#include <algorithm>
#include <deque>

#include "gnet/analysis.hpp"
#include "gnet/error.hpp"

namespace gnet {

namespace {

// Places and transitions reachable from `init` along arcs.
InternalStructure forward_subnet(const InternalStructure& is, const std::string& init) {
  std::set<std::string> seen{init};
  std::deque<std::string> work{init};
  while (!work.empty()) {
    std::string n = work.front();
    work.pop_front();
    for (const auto& a : is.arcs)
      if (a.from == n && seen.insert(a.to).second) work.push_back(a.to);
  }
  InternalStructure sub;
  for (const auto& p : is.places)
    if (seen.count(p.id)) sub.places.push_back(p);
  for (const auto& t : is.transitions)
    if (seen.count(t.id)) sub.transitions.push_back(t);
  for (const auto& a : is.arcs) {
    if (!seen.count(a.from) || !seen.count(a.to)) continue;
    sub.arcs.push_back(a);
    if (const Inscription* ins = is.inscription(a)) sub.inscriptions[a] = *ins;
  }
  for (const auto& t : sub.transitions) {
    if (const Condition* c = is.condition(t.id)) sub.conditions[t.id] = *c;
    if (const ActionSeq* x = is.action(t.id)) sub.actions[t.id] = *x;
  }
  for (const auto& p : sub.places) sub.labels[p.id] = is.labels.at(p.id);
  return sub;
}

void rename_variables(InternalStructure& is, const Renaming& r) {
  if (r.empty()) return;
  for (auto& [_, ins] : is.inscriptions)
    for (auto& e : ins) e = rename_vars(e, r);
  for (auto& [_, c] : is.conditions) c = rename_vars(c, r);
  for (auto& [_, a] : is.actions) a = rename_vars(a, r);
}

void drop_place(InternalStructure& is, const std::string& id) {
  is.places.erase(std::remove_if(is.places.begin(), is.places.end(),
                                 [&](const Place& p) { return p.id == id; }),
                  is.places.end());
  is.labels.erase(id);
  std::vector<Arc> kept;
  for (const auto& a : is.arcs)
    if (a.from != id && a.to != id) kept.push_back(a);
  is.arcs = std::move(kept);
  for (auto it = is.inscriptions.begin(); it != is.inscriptions.end();) {
    if (it->first.from == id || it->first.to == id) {
      it = is.inscriptions.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<std::string> isp_places(const InternalStructure& is) {
  std::vector<std::string> out;
  for (const auto& p : is.places)
    if (p.kind == PlaceKind::InstantiatedSwitch) out.push_back(p.id);
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

}  // namespace

WebService inline_isps(const WebService& ws, const Registry& reg, std::size_t depth_limit) {
  WebService out = ws;
  InternalStructure& is = out.net.is;
  std::deque<std::pair<std::string, std::size_t>> work;
  for (const auto& id : isp_places(is)) work.emplace_back(id, 1);

  while (!work.empty()) {
    auto [id, depth] = work.front();
    work.pop_front();
    const Place* found = is.find_place(id);
    if (!found || found->kind != PlaceKind::InstantiatedSwitch) continue;
    Place isp = *found;
    if (depth > depth_limit)
      throw Error(Errc::DepthLimitExceeded, "inlining " + isp.invoked_gnet + " at depth " +
                                                std::to_string(depth));
    const WebService& callee = reg.lookup(isp.invoked_gnet);

    if (callee.net.gsp.methods.empty()) {
      // Invoking a service without methods does nothing: keep a plain place.
      for (auto& p : is.places) {
        if (p.id != id) continue;
        p.kind = PlaceKind::Normal;
        p.invoked_gnet.clear();
        p.using_method.clear();
      }
      is.labels[id] = Label::tau();
      continue;
    }
    const MethodSpec* method = callee.net.gsp.find_method(isp.using_method);
    if (!method) throw Error(Errc::UnknownMethod, callee.name + "." + isp.using_method);

    InternalStructure sub = forward_subnet(callee.net.is, method->init_place);
    std::string suffix = fresh_suffix(is, sub, "i");
    std::map<std::string, std::string> ids;
    sub = rename_apart(sub, suffix, &ids);

    Renaming vars;
    for (const auto& a : callee.net.gsp.attributes) {
      AttributeSpec copy = a;
      copy.name = a.name + std::string(kRenameSeparator) + suffix;
      vars[a.name] = copy.name;
      out.net.gsp.attributes.push_back(std::move(copy));
    }
    rename_variables(sub, vars);

    std::vector<std::string> goals;
    for (const auto& g : method->goal_places) {
      auto it = ids.find(g);
      if (it != ids.end()) goals.push_back(it->second);
    }
    for (auto& p : sub.places) {
      if (p.kind != PlaceKind::Goal) continue;
      p.kind = PlaceKind::Normal;
      sub.labels[p.id] = Label::tau();
    }
    const std::string init = ids.at(method->init_place);

    std::map<Arc, Inscription> saved;
    for (const auto& a : is.arcs) {
      if (a.to == id || a.from == id) {
        if (const Inscription* ins = is.inscription(a)) saved[a] = *ins;
      }
    }
    std::vector<Arc> in_arcs, out_arcs;
    for (const auto& a : is.arcs) {
      if (a.to == id) in_arcs.push_back(a);
      if (a.from == id) out_arcs.push_back(a);
    }
    drop_place(is, id);

    is.places.insert(is.places.end(), sub.places.begin(), sub.places.end());
    is.transitions.insert(is.transitions.end(), sub.transitions.begin(), sub.transitions.end());
    is.arcs.insert(is.arcs.end(), sub.arcs.begin(), sub.arcs.end());
    is.inscriptions.insert(sub.inscriptions.begin(), sub.inscriptions.end());
    is.conditions.insert(sub.conditions.begin(), sub.conditions.end());
    is.actions.insert(sub.actions.begin(), sub.actions.end());
    is.labels.insert(sub.labels.begin(), sub.labels.end());

    auto link = [&](const Arc& old, Arc now) {
      is.arcs.push_back(now);
      auto it = saved.find(old);
      if (it != saved.end()) is.inscriptions[now] = it->second;
    };
    for (const auto& a : in_arcs) link(a, {a.from, init});

    std::string exit = goals.empty() ? init : goals.front();
    if (goals.size() > 1) {
      exit = id + std::string(kRenameSeparator) + suffix + "join";
      is.places.push_back({exit, PlaceKind::Normal, {}, {}});
      is.labels[exit] = Label::tau();
      for (std::size_t k = 0; k < goals.size(); ++k) {
        std::string tr = exit + std::to_string(k + 1);
        is.transitions.push_back({tr});
        is.arcs.push_back({goals[k], tr});
        is.arcs.push_back({tr, exit});
      }
    }
    for (const auto& a : out_arcs) link(a, {exit, a.to});

    for (auto& m : out.net.gsp.methods)
      if (m.init_place == id) m.init_place = init;

    for (const auto& p : sub.places)
      if (p.kind == PlaceKind::InstantiatedSwitch) work.emplace_back(p.id, depth + 1);
  }
  return out;
}

}  // namespace gnet
