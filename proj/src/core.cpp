#include "gnet/core.hpp"

#include <algorithm>
#include <functional>

#include "gnet/error.hpp"

namespace gnet {

std::string_view to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::Normal: return "Normal";
    case PlaceKind::Goal: return "Goal";
    case PlaceKind::InstantiatedSwitch: return "InstantiatedSwitch";
  }
  return "?";
}

std::string render_label(const Label& l) {
  switch (l.kind) {
    case Label::Kind::Op: return l.op;
    case Label::Kind::Tau: return "tau";
    case Label::Kind::Goal: return "goal";
    case Label::Kind::IspRef: return "ISP(" + l.service + "." + l.method + ")";
  }
  return "?";
}

const Place* InternalStructure::find_place(std::string_view id) const {
  for (const auto& p : places)
    if (p.id == id) return &p;
  return nullptr;
}

const Transition* InternalStructure::find_transition(std::string_view id) const {
  for (const auto& t : transitions)
    if (t.id == id) return &t;
  return nullptr;
}

bool InternalStructure::has_arc(const Arc& a) const {
  return std::find(arcs.begin(), arcs.end(), a) != arcs.end();
}

std::vector<std::string> InternalStructure::preset(std::string_view transition) const {
  std::vector<std::string> out;
  for (const auto& a : arcs)
    if (a.to == transition) out.push_back(a.from);
  return out;
}

std::vector<std::string> InternalStructure::postset(std::string_view transition) const {
  std::vector<std::string> out;
  for (const auto& a : arcs)
    if (a.from == transition) out.push_back(a.to);
  return out;
}

std::vector<std::string> InternalStructure::place_preset(std::string_view place) const {
  return preset(place);
}

std::vector<std::string> InternalStructure::place_postset(std::string_view place) const {
  return postset(place);
}

const Inscription* InternalStructure::inscription(const Arc& a) const {
  auto it = inscriptions.find(a);
  return it == inscriptions.end() ? nullptr : &it->second;
}

const Condition* InternalStructure::condition(std::string_view transition) const {
  auto it = conditions.find(std::string(transition));
  return it == conditions.end() ? nullptr : &it->second;
}

const ActionSeq* InternalStructure::action(std::string_view transition) const {
  auto it = actions.find(std::string(transition));
  return it == actions.end() ? nullptr : &it->second;
}

const MethodSpec* GspSpec::find_method(std::string_view name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

const AttributeSpec* GspSpec::find_attribute(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a;
  return nullptr;
}

std::string ValidationReport::render() const {
  std::string out;
  for (const auto& v : violations) out += v.element + ": " + v.rule + "\n";
  return out;
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void flag(std::string element, std::string rule) {
    report_.violations.push_back({std::move(element), std::move(rule)});
  }

  void structure(const InternalStructure& is) {
    std::set<std::string> place_ids;
    std::set<std::string> transition_ids;
    for (const auto& p : is.places) {
      if (p.id.empty()) flag("place", "empty place id");
      if (!place_ids.insert(p.id).second) flag("place " + p.id, "duplicate place id");
      bool isp = p.kind == PlaceKind::InstantiatedSwitch;
      if (isp && (p.invoked_gnet.empty() || p.using_method.empty()))
        flag("place " + p.id, "ISP missing invocation target");
      if (!isp && (!p.invoked_gnet.empty() || !p.using_method.empty()))
        flag("place " + p.id, "invocation target on non-ISP place");
    }
    for (const auto& t : is.transitions) {
      if (t.id.empty()) flag("transition", "empty transition id");
      if (!transition_ids.insert(t.id).second)
        flag("transition " + t.id, "duplicate transition id");
      if (place_ids.count(t.id)) flag("transition " + t.id, "id shared with a place");
    }

    std::set<Arc> seen;
    for (const auto& a : is.arcs) {
      std::string name = "arc " + a.from + "->" + a.to;
      if (!seen.insert(a).second) flag(name, "duplicate arc");
      bool fp = place_ids.count(a.from), ft = transition_ids.count(a.from);
      bool tp = place_ids.count(a.to), tt = transition_ids.count(a.to);
      if ((!fp && !ft) || (!tp && !tt)) {
        flag(name, "dangling arc");
      } else if (fp == tp) {
        flag(name, "non-bipartite arc");
      }
    }

    for (const auto& p : is.places) {
      auto it = is.labels.find(p.id);
      if (it == is.labels.end()) {
        flag("place " + p.id, "missing label");
        continue;
      }
      const Label& l = it->second;
      if (p.kind == PlaceKind::Goal && l.kind != Label::Kind::Goal)
        flag("place " + p.id, "goal place without goal label");
      if (p.kind != PlaceKind::Goal && l.kind == Label::Kind::Goal)
        flag("place " + p.id, "goal label on non-goal place");
      if (p.kind == PlaceKind::InstantiatedSwitch) {
        if (l.kind != Label::Kind::IspRef) {
          flag("place " + p.id, "ISP place without ISP label");
        } else if (l.service != p.invoked_gnet || l.method != p.using_method) {
          flag("place " + p.id, "ISP label disagrees with invocation target");
        }
      } else if (l.kind == Label::Kind::IspRef) {
        flag("place " + p.id, "ISP label on non-ISP place");
      }
    }
    for (const auto& [id, _] : is.labels)
      if (!place_ids.count(id)) flag("label " + id, "label on unknown place");

    for (const auto& [arc, ins] : is.inscriptions) {
      std::string name = "inscription " + arc.from + "->" + arc.to;
      if (!is.has_arc(arc)) {
        flag(name, "inscription on unknown arc");
        continue;
      }
      if (place_ids.count(arc.from)) {
        for (const auto& e : ins) {
          if (!e.is_var()) {
            flag(name, "input inscription is not a pattern");
            break;
          }
        }
      }
    }
    for (const auto& [id, _] : is.conditions)
      if (!transition_ids.count(id)) flag("condition " + id, "condition on unknown transition");
    for (const auto& [id, _] : is.actions)
      if (!transition_ids.count(id)) flag("action " + id, "action on unknown transition");
  }

  void interface(const GspSpec& gsp, const InternalStructure& is) {
    std::set<std::string> names;
    for (const auto& m : gsp.methods) {
      std::string el = "method " + m.name;
      if (m.name.empty()) flag("method", "empty method name");
      if (!names.insert(m.name).second) flag(el, "duplicate method name");
      std::set<std::string> params;
      for (const auto& p : m.params)
        if (!params.insert(p.name).second) flag(el, "duplicate parameter " + p.name);
      if (!is.find_place(m.init_place)) flag(el, "init place " + m.init_place + " not in net");
      if (m.goal_places.empty()) flag(el, "no goal places");
      for (const auto& g : m.goal_places) {
        const Place* p = is.find_place(g);
        if (!p) {
          flag(el, "goal place " + g + " not in net");
        } else if (p->kind != PlaceKind::Goal) {
          flag(el, "goal place " + g + " is not of kind Goal");
        }
        if (g == m.init_place && is.places.size() > 1)
          flag(el, "init place is also a goal place");
      }
    }
    std::set<std::string> attrs;
    for (const auto& a : gsp.attributes) {
      std::string el = "attribute " + a.name;
      if (a.name.empty()) flag("attribute", "empty attribute name");
      if (!attrs.insert(a.name).second) flag(el, "duplicate attribute name");
      if (a.initial && type_of(*a.initial) != a.type) flag(el, "initial value has wrong type");
      if (a.domain) {
        for (const auto& v : *a.domain) {
          if (type_of(v) != a.type) {
            flag(el, "domain value has wrong type");
            break;
          }
        }
      }
    }
  }

 private:
  ValidationReport& report_;
};

std::string renamed(const std::string& id, std::string_view suffix) {
  return id + std::string(kRenameSeparator) + std::string(suffix);
}

}  // namespace

ValidationReport validate(const WebService& ws) {
  ValidationReport report;
  Checker check(report);
  if (ws.name.empty()) check.flag("service", "empty service name");
  if (ws.component_services.empty()) check.flag("service " + ws.name, "empty component service set");
  if (ws.net.is.places.empty()) check.flag("service " + ws.name, "empty place set");
  check.structure(ws.net.is);
  check.interface(ws.net.gsp, ws.net.is);
  return report;
}

ValidationReport validate_block(const BlockFragment& block) {
  ValidationReport report;
  Checker check(report);
  const auto& is = block.is;
  check.structure(is);
  std::string el = "block " + block.name;
  if (is.places.empty()) check.flag(el, "empty place set");
  std::vector<std::string> entries, exits;
  for (const auto& p : is.places) {
    if (p.kind == PlaceKind::Goal) check.flag("place " + p.id, "goal place inside block");
    if (is.place_preset(p.id).empty()) entries.push_back(p.id);
    if (is.place_postset(p.id).empty()) exits.push_back(p.id);
  }
  auto same_set = [](std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };
  if (block.entries.empty()) check.flag(el, "no entry places");
  if (block.exits.empty()) check.flag(el, "no exit places");
  if (!same_set(entries, block.entries)) check.flag(el, "entries differ from places with empty preset");
  if (!same_set(exits, block.exits)) check.flag(el, "exits differ from places with empty postset");

  // Weak connectivity over places and transitions.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& p : is.places) adj[p.id];
  for (const auto& t : is.transitions) adj[t.id];
  for (const auto& a : is.arcs) {
    adj[a.from].push_back(a.to);
    adj[a.to].push_back(a.from);
  }
  if (!adj.empty()) {
    std::set<std::string> seen;
    std::vector<std::string> stack{adj.begin()->first};
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      if (!seen.insert(n).second) continue;
      for (const auto& m : adj[n]) stack.push_back(m);
    }
    if (seen.size() != adj.size()) check.flag(el, "block is not connected");
  }
  return report;
}

InternalStructure rename_apart(const InternalStructure& is, std::string_view suffix,
                               std::map<std::string, std::string>* mapping) {
  std::map<std::string, std::string> m;
  for (const auto& p : is.places) m[p.id] = renamed(p.id, suffix);
  for (const auto& t : is.transitions) m[t.id] = renamed(t.id, suffix);
  auto map_id = [&](const std::string& id) {
    auto it = m.find(id);
    return it == m.end() ? id : it->second;
  };

  InternalStructure out;
  for (auto p : is.places) {
    p.id = map_id(p.id);
    out.places.push_back(std::move(p));
  }
  for (auto t : is.transitions) {
    t.id = map_id(t.id);
    out.transitions.push_back(std::move(t));
  }
  for (const auto& a : is.arcs) out.arcs.push_back({map_id(a.from), map_id(a.to)});
  for (const auto& [a, ins] : is.inscriptions) out.inscriptions[{map_id(a.from), map_id(a.to)}] = ins;
  for (const auto& [t, c] : is.conditions) out.conditions[map_id(t)] = c;
  for (const auto& [t, a] : is.actions) out.actions[map_id(t)] = a;
  for (const auto& [p, l] : is.labels) out.labels[map_id(p)] = l;
  if (mapping) *mapping = std::move(m);
  return out;
}

WebService rename_apart(const WebService& ws, std::string_view suffix) {
  WebService out = ws;
  std::map<std::string, std::string> m;
  out.net.is = rename_apart(ws.net.is, suffix, &m);
  auto map_id = [&](const std::string& id) {
    auto it = m.find(id);
    return it == m.end() ? id : it->second;
  };
  for (auto& method : out.net.gsp.methods) {
    method.init_place = map_id(method.init_place);
    for (auto& g : method.goal_places) g = map_id(g);
  }
  return out;
}

BlockFragment rename_apart(const BlockFragment& block, std::string_view suffix) {
  BlockFragment out = block;
  std::map<std::string, std::string> m;
  out.is = rename_apart(block.is, suffix, &m);
  for (auto& e : out.entries) e = m.count(e) ? m[e] : e;
  for (auto& x : out.exits) x = m.count(x) ? m[x] : x;
  return out;
}

const MethodSpec* main_method(const WebService& ws) {
  const auto& methods = ws.net.gsp.methods;
  if (methods.empty()) return nullptr;
  if (methods.size() == 1) return &methods.front();
  for (const auto& m : methods)
    if (m.name != "req") return &m;
  return &methods.front();
}

std::string main_method_name(const WebService& ws) {
  const MethodSpec* m = main_method(ws);
  return m ? m->name : "main";
}

bool is_empty_service(const WebService& ws) {
  return ws.net.gsp.methods.empty() && ws.net.is.transitions.empty() &&
         ws.net.is.places.size() == 1;
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && digit(a[i2])) ++i2;
      while (j2 < b.size() && digit(b[j2])) ++j2;
      std::string_view x = a.substr(i, i2 - i), y = b.substr(j, j2 - j);
      while (x.size() > 1 && x.front() == '0') x.remove_prefix(1);
      while (y.size() > 1 && y.front() == '0') y.remove_prefix(1);
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

std::string fresh_suffix(const InternalStructure& taken, const InternalStructure& incoming,
                         std::string_view stem) {
  std::set<std::string> used;
  for (const auto& p : taken.places) used.insert(p.id);
  for (const auto& t : taken.transitions) used.insert(t.id);
  for (int k = 1;; ++k) {
    std::string suffix = std::string(stem) + std::to_string(k);
    bool clash = false;
    for (const auto& p : incoming.places) clash = clash || used.count(renamed(p.id, suffix));
    for (const auto& t : incoming.transitions) clash = clash || used.count(renamed(t.id, suffix));
    if (!clash) return suffix;
  }
}

void Registry::insert(WebService ws) {
  if (services_.count(ws.name)) throw Error(Errc::DuplicateService, ws.name);
  std::string key = ws.name;
  services_.emplace(std::move(key), std::make_shared<const WebService>(std::move(ws)));
}

bool Registry::insert_if_absent(WebService ws) {
  if (services_.count(ws.name)) return false;
  insert(std::move(ws));
  return true;
}

void Registry::insert_block(BlockFragment block) {
  if (blocks_.count(block.name)) throw Error(Errc::DuplicateBlock, block.name);
  std::string key = block.name;
  blocks_.emplace(std::move(key), std::move(block));
}

const WebService& Registry::lookup(std::string_view name) const {
  return *lookup_shared(name);
}

std::shared_ptr<const WebService> Registry::lookup_shared(std::string_view name) const {
  auto it = services_.find(name);
  if (it == services_.end()) throw Error(Errc::UnknownService, std::string(name));
  return it->second;
}

const BlockFragment& Registry::lookup_block(std::string_view name) const {
  auto it = blocks_.find(name);
  if (it == blocks_.end()) throw Error(Errc::UnknownBlock, std::string(name));
  return it->second;
}

bool Registry::contains(std::string_view name) const { return services_.find(name) != services_.end(); }

bool Registry::contains_block(std::string_view name) const { return blocks_.find(name) != blocks_.end(); }

std::vector<std::string> Registry::service_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : services_) out.push_back(name);
  return out;
}

}  // namespace gnet
