#include "gnet/algebra.hpp"

#include <algorithm>

#include "gnet/error.hpp"

namespace gnet {

namespace {

std::string p(std::size_t i) { return "p" + std::to_string(i); }
std::string t(std::size_t i) { return "t" + std::to_string(i); }

// Fresh operator net with places p1..pn and transitions t1..tm, every place
// tau-labeled until told otherwise.
class Skeleton {
 public:
  Skeleton(std::size_t places, std::size_t transitions) {
    for (std::size_t i = 1; i <= places; ++i) {
      is_.places.push_back({p(i), PlaceKind::Normal, {}, {}});
      is_.labels[p(i)] = Label::tau();
    }
    for (std::size_t i = 1; i <= transitions; ++i) is_.transitions.push_back({t(i)});
  }

  Skeleton& arc(std::string from, std::string to) {
    is_.arcs.push_back({std::move(from), std::move(to)});
    return *this;
  }

  Skeleton& invoke(std::size_t i, const WebService& s, const std::string& method) {
    Place& pl = is_.places[i - 1];
    pl.kind = PlaceKind::InstantiatedSwitch;
    pl.invoked_gnet = s.name;
    pl.using_method = method;
    is_.labels[pl.id] = Label::isp(s.name, method);
    return *this;
  }

  Skeleton& invoke(std::size_t i, const WebService& s) { return invoke(i, s, main_method_name(s)); }

  Skeleton& goal(std::size_t i) {
    is_.places[i - 1].kind = PlaceKind::Goal;
    is_.labels[p(i)] = Label::goal();
    return *this;
  }

  Skeleton& op(std::size_t i, std::string name) {
    is_.labels[p(i)] = Label::operation(std::move(name));
    return *this;
  }

  InternalStructure& is() { return is_; }

  WebService finish(std::string name, std::string desc, std::set<std::string> cs,
                    std::string method, std::size_t init, std::size_t goal_place) {
    WebService ws;
    ws.name = std::move(name);
    ws.desc = std::move(desc);
    ws.component_services = std::move(cs);
    ws.net.is = std::move(is_);
    ws.net.gsp.methods.push_back({std::move(method), {}, {}, p(init), {p(goal_place)}});
    return ws;
  }

 private:
  InternalStructure is_;
};

std::set<std::string> cs_union(std::initializer_list<const WebService*> services) {
  std::set<std::string> out;
  for (const auto* s : services) out.insert(s->component_services.begin(), s->component_services.end());
  return out;
}

std::string join_names(const std::vector<WebService>& services, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ",";
    out += services[i].name;
  }
  return out;
}

Inscription vars(std::initializer_list<const char*> names) {
  Inscription out;
  for (const char* n : names) out.push_back(Expr::var(n));
  return out;
}

}  // namespace

WebService empty_service() {
  WebService ws;
  ws.name = "Empty";
  ws.desc = "Empty Web Service";
  ws.component_services = {"Empty"};
  ws.net.is.places.push_back({"p", PlaceKind::Normal, {}, {}});
  ws.net.is.labels["p"] = Label::tau();
  return ws;
}

WebService atomic(const std::string& name, const std::string& op_name) {
  Skeleton sk(2, 1);
  sk.arc("p1", "t1").arc("t1", "p2").op(1, op_name).goal(2);
  return sk.finish(name, op_name, {name}, op_name, 1, 2);
}

WebService with_request_method(WebService ws, const Expr& response) {
  auto& is = ws.net.is;
  is.places.push_back({"q1", PlaceKind::Normal, {}, {}});
  is.places.push_back({"q2", PlaceKind::Goal, {}, {}});
  is.transitions.push_back({"u1"});
  is.arcs.push_back({"q1", "u1"});
  is.arcs.push_back({"u1", "q2"});
  is.labels["q1"] = Label::operation("req");
  is.labels["q2"] = Label::goal();
  is.actions["u1"] = {{"resp", response}};
  ws.net.gsp.methods.push_back({"req", "answers a request", {{"r", "request"}}, "q1", {"q2"}});
  return ws;
}

WebService sequence(const WebService& s1, const WebService& s2) {
  Skeleton sk(3, 2);
  sk.arc("p1", "t1").arc("t1", "p2").arc("p2", "t2").arc("t2", "p3");
  sk.invoke(1, s1).invoke(2, s2).goal(3);
  return sk.finish("seq(" + s1.name + "," + s2.name + ")", "sequence", cs_union({&s1, &s2}),
                   "Seq", 1, 3);
}

WebService alternative(const WebService& s1, const WebService& s2) {
  Skeleton sk(4, 4);
  sk.arc("p1", "t1").arc("t1", "p2").arc("p2", "t3").arc("t3", "p4");
  sk.arc("p1", "t2").arc("t2", "p3").arc("p3", "t4").arc("t4", "p4");
  sk.invoke(2, s1).invoke(3, s2).goal(4);
  return sk.finish("alt(" + s1.name + "," + s2.name + ")", "alternative", cs_union({&s1, &s2}),
                   "Alt", 1, 4);
}

WebService iteration(const WebService& s) {
  Skeleton sk(2, 2);
  sk.arc("p1", "t1").arc("t1", "p1").arc("p1", "t2").arc("t2", "p2");
  sk.invoke(1, s).goal(2);
  return sk.finish("iter(" + s.name + ")", "iteration", s.component_services, "Iter", 1, 2);
}

WebService arbitrary_sequence(const WebService& s1, const WebService& s2) {
  Skeleton sk(9, 6);
  sk.arc("p1", "t1").arc("t1", "p2").arc("t1", "p3").arc("t1", "p4");
  sk.arc("p2", "t2").arc("t2", "p5").arc("p5", "t4").arc("t4", "p7");
  sk.arc("t4", "p3").arc("p7", "t6").arc("t6", "p9").arc("p3", "t2");
  sk.arc("p3", "t3").arc("p3", "t6").arc("p4", "t3").arc("t3", "p6");
  sk.arc("p6", "t5").arc("t5", "p3").arc("t5", "p8").arc("p8", "t6");
  sk.invoke(5, s1).invoke(6, s2).goal(9);
  return sk.finish("anyseq(" + s1.name + "," + s2.name + ")", "arbitrary sequence",
                   cs_union({&s1, &s2}), "ArSeq", 1, 9);
}

WebService parallel(const WebService& s1, const WebService& s2) {
  Skeleton sk(4, 2);
  sk.arc("p1", "t1").arc("t1", "p2").arc("t1", "p3");
  sk.arc("p2", "t2").arc("p3", "t2").arc("t2", "p4");
  sk.invoke(2, s1).invoke(3, s2).goal(4);
  return sk.finish("par(" + s1.name + "," + s2.name + ")", "parallel", cs_union({&s1, &s2}),
                   "Par", 1, 4);
}

WebService discriminator(const std::vector<WebService>& first_n, const WebService& last) {
  if (first_n.empty()) throw Error(Errc::EmptyBranchSet, "discriminator needs at least one racer");
  const std::size_t n = first_n.size() + 1;
  Skeleton sk(n + 3, n + 3);
  for (std::size_t i = 1; i <= n + 2; ++i) sk.arc(p(i), t(i));
  for (std::size_t i = 2; i <= n; ++i) sk.arc(t(1), p(i)).arc(t(i), p(n + 1));
  sk.arc(p(n + 1), t(n + 3)).arc(t(n + 1), p(n + 2)).arc(t(n + 2), p(n + 3)).arc(t(n + 3), p(n + 3));
  for (std::size_t i = 2; i <= n; ++i) sk.invoke(i, first_n[i - 2]);
  sk.invoke(n + 2, last).goal(n + 3);

  auto& is = sk.is();
  is.inscriptions[{p(1), t(1)}] = vars({"B"});
  is.inscriptions[{p(n + 1), t(n + 1)}] = vars({"B"});
  is.inscriptions[{p(n + 1), t(n + 3)}] = vars({"B"});
  is.conditions[t(n + 1)] = parse_condition("B == true");
  is.conditions[t(n + 3)] = parse_condition("B == false");
  is.actions[t(1)] = parse_action("B := true");
  is.actions[t(n + 1)] = parse_action("B := false");

  std::set<std::string> cs = last.component_services;
  for (const auto& s : first_n) cs.insert(s.component_services.begin(), s.component_services.end());
  WebService ws = sk.finish("disc(" + join_names(first_n, 0, first_n.size()) + ";" + last.name + ")",
                            "discriminator", std::move(cs), "Disc", 1, n + 3);
  ws.net.gsp.attributes.push_back(
      {"B", ValueType::Bool, Value{false}, std::vector<Value>{Value{true}, Value{false}}});
  return ws;
}

WebService selection(const std::vector<WebService>& services, const std::optional<Expr>& scorer) {
  if (services.empty()) throw Error(Errc::EmptyBranchSet, "selection needs at least one service");
  const std::size_t n = services.size();
  std::vector<std::string> mtd;
  for (const auto& s : services) {
    if (!s.net.gsp.find_method("req")) throw Error(Errc::MissingReqMethod, s.name);
    std::string m;
    for (const auto& method : s.net.gsp.methods) {
      if (method.name != "req") {
        m = method.name;
        break;
      }
    }
    if (m.empty()) throw Error(Errc::MissingReqMethod, s.name + " has no method besides req");
    mtd.push_back(m);
  }

  Skeleton sk(2 * n + 3, 2 * n + 2);
  for (std::size_t i = 2; i <= n + 1; ++i) {
    sk.arc(p(i), t(2)).arc(p(n + 2), t(i + 1)).arc(p(i + n + 1), t(i + n + 1));
    sk.arc(t(1), p(i)).arc(t(i + 1), p(i + n + 1)).arc(t(i + n + 1), p(2 * n + 3));
  }
  sk.arc(p(1), t(1)).arc(t(2), p(n + 2));
  for (std::size_t i = 2; i <= n + 1; ++i) {
    sk.invoke(i, services[i - 2], "req");
    sk.invoke(i + n + 1, services[i - 2], mtd[i - 2]);
  }
  sk.op(1, "Create-request").op(n + 2, "Select-Service").goal(2 * n + 3);

  auto& is = sk.is();
  for (std::size_t i = 2; i <= n + 1; ++i) {
    is.inscriptions[{t(1), p(i)}] = vars({"r"});
    is.inscriptions[{p(i), t(2)}] = vars({"resp"});
  }
  for (std::size_t i = 3; i <= n + 2; ++i) {
    is.inscriptions[{p(n + 2), t(i)}] = vars({"j"});
    is.conditions[t(i)] = Condition::compare(Expr::var("j"), CompareOp::Eq,
                                             Expr::literal(static_cast<std::int64_t>(i - 2)));
  }
  is.inscriptions[{p(1), t(1)}] = vars({"r"});
  is.inscriptions[{t(2), p(n + 2)}] = vars({"resp"});
  is.actions[t(2)] = {{"J", scorer.value_or(Expr::literal(std::int64_t{1}))},
                      {"j", Expr::var("J")}};

  std::set<std::string> cs;
  for (const auto& s : services) cs.insert(s.component_services.begin(), s.component_services.end());
  WebService ws = sk.finish("select(" + join_names(services, 0, n) + ")", "selection",
                            std::move(cs), "Select", 1, 2 * n + 3);
  ws.net.gsp.attributes.push_back({"J", ValueType::Int, Value{std::int64_t{0}}, std::nullopt});
  ws.net.gsp.attributes.push_back({"r", ValueType::String, Value{std::string{}}, std::nullopt});
  return ws;
}

WebService refine(const WebService& s, const std::string& op, const BlockFragment& block) {
  ValidationReport report = validate_block(block);
  if (!report.ok()) throw Error(Errc::MalformedBlock, block.name + ": " + report.violations.front().rule);

  const auto& src = s.net.is;
  std::set<std::string> removed;
  for (const auto& [place, label] : src.labels)
    if (label.kind == Label::Kind::Op && label.op == op) removed.insert(place);
  if (removed.empty()) return s;

  BlockFragment a = rename_apart(block, fresh_suffix(src, block.is, "R"));

  WebService ws = s;
  ws.name = "refine(" + s.name + "," + op + "," + block.name + ")";
  ws.desc = "refinement";
  InternalStructure& is = ws.net.is;
  is = InternalStructure{};

  for (const auto& pl : src.places)
    if (!removed.count(pl.id)) is.places.push_back(pl);
  is.places.insert(is.places.end(), a.is.places.begin(), a.is.places.end());
  is.transitions = src.transitions;
  is.transitions.insert(is.transitions.end(), a.is.transitions.begin(), a.is.transitions.end());

  auto touches = [&](const Arc& arc) { return removed.count(arc.from) || removed.count(arc.to); };
  std::set<Arc> seen;
  auto add_arc = [&](const Arc& arc, const Inscription* ins) {
    if (!seen.insert(arc).second) return;
    is.arcs.push_back(arc);
    if (ins && !is.inscriptions.count(arc)) is.inscriptions[arc] = *ins;
  };
  for (const auto& arc : src.arcs) {
    if (!touches(arc)) {
      add_arc(arc, src.inscription(arc));
      continue;
    }
    if (removed.count(arc.to)) {
      // transition feeding a removed place now feeds every entry of the block
      for (const auto& e : a.entries) add_arc({arc.from, e}, src.inscription(arc));
    } else {
      for (const auto& x : a.exits) add_arc({x, arc.to}, src.inscription(arc));
    }
  }
  for (const auto& arc : a.is.arcs) add_arc(arc, a.is.inscription(arc));

  is.conditions = src.conditions;
  is.conditions.insert(a.is.conditions.begin(), a.is.conditions.end());
  is.actions = src.actions;
  is.actions.insert(a.is.actions.begin(), a.is.actions.end());
  for (const auto& [place, label] : src.labels)
    if (!removed.count(place)) is.labels[place] = label;
  is.labels.insert(a.is.labels.begin(), a.is.labels.end());

  for (auto& m : ws.net.gsp.methods)
    if (removed.count(m.init_place)) m.init_place = a.entries.front();
  for (const auto& [_, label] : a.is.labels)
    if (label.kind == Label::Kind::IspRef) ws.component_services.insert(label.service);
  return ws;
}

WebService replace(const WebService& s, const WebService& s1, const WebService& s2) {
  if (is_empty_service(s2) || s2.component_services == std::set<std::string>{"Empty"})
    throw Error(Errc::EmptyReplacement, "cannot replace " + s1.name + " by an empty service");
  if (!std::includes(s.component_services.begin(), s.component_services.end(),
                     s1.component_services.begin(), s1.component_services.end()))
    return s;

  WebService ws = s;
  ws.name = "replace(" + s.name + "," + s1.name + "," + s2.name + ")";
  ws.desc = "replacement";
  auto& is = ws.net.is;
  for (auto& [place, label] : is.labels) {
    if (label.kind != Label::Kind::IspRef || label.service != s1.name) continue;
    std::string method = s2.net.gsp.find_method(label.method) ? label.method : main_method_name(s2);
    label = Label::isp(s2.name, method);
    for (auto& pl : is.places) {
      if (pl.id != place) continue;
      pl.invoked_gnet = s2.name;
      pl.using_method = method;
    }
  }
  std::set<std::string> cs;
  for (const auto& c : s.component_services)
    if (!s1.component_services.count(c)) cs.insert(c);
  cs.insert(s2.component_services.begin(), s2.component_services.end());
  ws.component_services = std::move(cs);
  return ws;
}

}  // namespace gnet
