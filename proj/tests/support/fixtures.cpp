#include "support/fixtures.hpp"

namespace fixtures {

NetBuilder::NetBuilder(std::string name) {
  ws_.name = name;
  ws_.desc = name;
  ws_.component_services = {name};
}

NetBuilder& NetBuilder::place(const std::string& id, Label label) {
  ws_.net.is.places.push_back({id, PlaceKind::Normal, {}, {}});
  ws_.net.is.labels[id] = std::move(label);
  return *this;
}

NetBuilder& NetBuilder::goal(const std::string& id) {
  ws_.net.is.places.push_back({id, PlaceKind::Goal, {}, {}});
  ws_.net.is.labels[id] = Label::goal();
  return *this;
}

NetBuilder& NetBuilder::isp(const std::string& id, const std::string& service, const std::string& method) {
  ws_.net.is.places.push_back({id, PlaceKind::InstantiatedSwitch, service, method});
  ws_.net.is.labels[id] = Label::isp(service, method);
  ws_.component_services.insert(service);
  return *this;
}

NetBuilder& NetBuilder::transition(const std::string& id, const std::string& gate, const std::string& action) {
  ws_.net.is.transitions.push_back({id});
  if (!gate.empty()) ws_.net.is.conditions[id] = parse_condition(gate);
  if (!action.empty()) ws_.net.is.actions[id] = parse_action(action);
  return *this;
}

NetBuilder& NetBuilder::arc(const std::string& from, const std::string& to, const std::string& inscription) {
  ws_.net.is.arcs.push_back({from, to});
  if (!inscription.empty()) ws_.net.is.inscriptions[{from, to}] = parse_inscription(inscription);
  return *this;
}

NetBuilder& NetBuilder::method(const std::string& name, std::vector<std::string> params, const std::string& init,
                               std::vector<std::string> goals) {
  MethodSpec m;
  m.name = name;
  for (auto& p : params) m.params.push_back({std::move(p), {}});
  m.init_place = init;
  m.goal_places = std::move(goals);
  ws_.net.gsp.methods.push_back(std::move(m));
  return *this;
}

NetBuilder& NetBuilder::attribute(const std::string& name, ValueType type, std::optional<Value> initial,
                                  std::optional<std::vector<Value>> domain) {
  ws_.net.gsp.attributes.push_back({name, type, std::move(initial), std::move(domain)});
  return *this;
}

WebService booking_net() {
  NetBuilder b("Command-books");
  b.place("P1", Label::operation("verify-availability"));
  for (const char* p : {"P2", "P3", "P4", "P5"}) b.place(p);
  b.goal("P6");
  b.transition("T1", "Available == true").transition("T2").transition("T3", "Available == false");
  b.transition("T4", "Available == true").transition("T5").transition("T6");
  b.transition("T7", "Available == false");
  const std::string both = "[seq, Available]";
  b.arc("P1", "T1", both).arc("T1", "P2", "[seq, Available, quantity]");
  b.arc("P2", "T2", both).arc("T2", "P3", both);
  b.arc("P1", "T3", both).arc("T3", "P3", both);
  b.arc("P3", "T4", both).arc("T4", "P4", "[seq]");
  b.arc("P4", "T5", both).arc("T5", "P5", "[seq]");
  b.arc("P5", "T6", both).arc("T6", "P6", "[seq]");
  b.arc("P3", "T7", both).arc("T7", "P6", "[seq]");
  b.method("order", {"seq", "Available"}, "P1", {"P6"});
  b.attribute("quantity", ValueType::Int, std::nullopt,
              std::vector<Value>{Value{std::int64_t{1}}, Value{std::int64_t{2}}});
  return b.build();
}

WebService command_books_chain() {
  NetBuilder b("Books");
  b.place("p1", Label::operation("Treat-Command")).place("p2").goal("p3");
  b.transition("t1").transition("t2");
  b.arc("p1", "t1").arc("t1", "p2").arc("p2", "t2").arc("t2", "p3");
  b.method("command", {}, "p1", {"p3"});
  return b.build();
}

BlockFragment command_books_block() {
  BlockFragment block;
  block.name = "CommandSteps";
  auto& is = block.is;
  const char* ops[] = {"availability", "stock-quantity", "add-to-cart", "subtotal"};
  for (int i = 0; i < 4; ++i) {
    std::string id = "b" + std::to_string(i + 1);
    is.places.push_back({id, PlaceKind::Normal, {}, {}});
    is.labels[id] = Label::operation(ops[i]);
  }
  for (int i = 1; i <= 3; ++i) {
    std::string t = "bt" + std::to_string(i);
    is.transitions.push_back({t});
    is.arcs.push_back({"b" + std::to_string(i), t});
    is.arcs.push_back({t, "b" + std::to_string(i + 1)});
  }
  block.entries = {"b1"};
  block.exits = {"b4"};
  return block;
}

Registry closure_registry() {
  Registry reg;
  for (int i = 1; i <= 4; ++i)
    reg.insert(with_request_method(atomic("L" + std::to_string(i), "op" + std::to_string(i))));
  reg.insert(atomic("A", "a"));
  reg.insert(atomic("B", "b"));
  reg.insert(atomic("C", "c"));

  BlockFragment blk;
  blk.name = "Blk";
  blk.is.places = {{"b1", PlaceKind::Normal, {}, {}}, {"b2", PlaceKind::Normal, {}, {}}};
  blk.is.labels["b1"] = Label::operation("x");
  blk.is.labels["b2"] = Label::operation("y");
  blk.is.transitions = {{"bt1"}};
  blk.is.arcs = {{"b1", "bt1"}, {"bt1", "b2"}};
  blk.entries = {"b1"};
  blk.exits = {"b2"};
  reg.insert_block(blk);
  return reg;
}

namespace {

Value T{true};
Value F{false};

WebService toggle() {
  NetBuilder b("Toggle");
  b.place("p1").place("p2").goal("p3").place("p4");
  b.transition("t1", "x == true", "B := true").transition("t2", "B == true");
  b.transition("t3", "B == false").transition("t4", "x == false");
  b.arc("p1", "t1", "[x]").arc("t1", "p2").arc("p2", "t2").arc("t2", "p3");
  b.arc("p2", "t3").arc("t3", "p4").arc("p1", "t4", "[x]").arc("t4", "p3");
  b.method("go", {"x"}, "p1", {"p3"});
  b.attribute("B", ValueType::Bool, F, std::vector<Value>{T, F});
  return b.build();
}

WebService choice() {
  NetBuilder b("Choice");
  b.place("p1").place("p2").goal("p3").place("p4");
  b.transition("t1").transition("t2", "c == true").transition("t3", "c == false").transition("t4");
  b.arc("p1", "t1").arc("t1", "p2", "[c]").arc("p2", "t2", "[c]").arc("t2", "p3");
  b.arc("p2", "t3", "[c]").arc("t3", "p4").arc("p4", "t4").arc("t4", "p3");
  b.method("go", {}, "p1", {"p3"});
  b.attribute("c", ValueType::Bool, std::nullopt, std::vector<Value>{T, F});
  return b.build();
}

WebService fork_join() {
  NetBuilder b("ForkJoin");
  b.place("p1").place("p2").place("p3").place("p4").place("p5").goal("p6");
  b.transition("t1").transition("t2", "", "d := true").transition("t3").transition("t4", "d == true");
  b.arc("p1", "t1").arc("t1", "p2").arc("t1", "p3");
  b.arc("p2", "t2").arc("t2", "p4", "[d]").arc("p3", "t3").arc("t3", "p5");
  b.arc("p4", "t4", "[d]").arc("p5", "t4").arc("t4", "p6");
  b.method("go", {}, "p1", {"p6"});
  return b.build();
}

WebService gated(const char* name) {
  NetBuilder b(name);
  b.place("p1").goal("p2");
  b.transition("t1", "ok == true");
  b.arc("p1", "t1", "[ok]").arc("t1", "p2");
  b.method("go", {"ok"}, "p1", {"p2"});
  return b.build();
}

Scenario inlined(const std::string& name, const WebService& ws, const Registry& reg) {
  WebService flat = inline_isps(ws, reg, 16);
  return {name, flat, main_method(flat)->name, {}};
}

}  // namespace

std::vector<Scenario> small_boolean_nets() {
  Registry reg = closure_registry();
  const WebService& a = reg.lookup("A");
  const WebService& b = reg.lookup("B");
  std::vector<Scenario> out;
  out.push_back({"atomic", a, "a", {}});
  out.push_back({"toggle-true", toggle(), "go", {T}});
  out.push_back({"toggle-false", toggle(), "go", {F}});
  out.push_back({"choice", choice(), "go", {}});
  out.push_back({"fork-join", fork_join(), "go", {}});
  out.push_back({"gated-true", gated("Gate"), "go", {T}});
  out.push_back({"gated-false", gated("Gate"), "go", {F}});
  out.push_back(inlined("seq", sequence(a, b), reg));
  out.push_back(inlined("alt", alternative(a, b), reg));
  out.push_back(inlined("iter", iteration(a), reg));
  out.push_back(inlined("par", parallel(a, b), reg));
  return out;
}

std::vector<Scenario> isp_free_nets() {
  Registry reg = closure_registry();
  const WebService& a = reg.lookup("A");
  const WebService& b = reg.lookup("B");
  const WebService& c = reg.lookup("C");
  std::vector<Scenario> out = small_boolean_nets();
  out.push_back({"booking-available", booking_net(), "order", {Value{std::int64_t{7}}, T}});
  out.push_back({"booking-unavailable", booking_net(), "order", {Value{std::int64_t{7}}, F}});
  out.push_back(inlined("anyseq", arbitrary_sequence(a, b), reg));
  out.push_back(inlined("disc", discriminator({a, b}, c), reg));
  out.push_back(inlined("seq-of-par", sequence(parallel(a, b), c),
                        [&] {
                          Registry r = reg;
                          r.insert(parallel(a, b));
                          return r;
                        }()));
  WebService refined = refine(command_books_chain(), "Treat-Command", command_books_block());
  out.push_back({"refined", refined, "command", {}});
  return out;
}

GraphState initial_graph_state(const Scenario& s) {
  SimState st = init_state(s.ws, s.method, s.args);
  return {st.frames.front().marking, st.frames.front().env};
}

FlatNet flat_of(const Scenario& s) { return flatten(s.ws, s.method, s.args); }

FlatNet flat_composition(const WebService& ws, const Registry& reg) {
  WebService inlined = inline_isps(ws, reg, 16);
  return flatten(inlined, main_method(inlined)->name, {});
}

}  // namespace fixtures
