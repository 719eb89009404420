#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "gnet/algebra.hpp"
#include "gnet/analysis.hpp"
#include "gnet/core.hpp"
#include "gnet/sim.hpp"

namespace fixtures {

using namespace gnet;

/// Terse net construction for hand-written fixtures.
class NetBuilder {
 public:
  explicit NetBuilder(std::string name);

  NetBuilder& place(const std::string& id, Label label = Label::tau());
  NetBuilder& goal(const std::string& id);
  NetBuilder& isp(const std::string& id, const std::string& service, const std::string& method);
  NetBuilder& transition(const std::string& id, const std::string& gate = {}, const std::string& action = {});
  NetBuilder& arc(const std::string& from, const std::string& to, const std::string& inscription = {});
  NetBuilder& method(const std::string& name, std::vector<std::string> params, const std::string& init,
                     std::vector<std::string> goals);
  NetBuilder& attribute(const std::string& name, ValueType type, std::optional<Value> initial,
                        std::optional<std::vector<Value>> domain = std::nullopt);

  WebService build() const { return ws_; }

 private:
  WebService ws_;
};

/// Six-place booking net whose flattening is the PROD listing in
/// tests/golden/booking.prod.
WebService booking_net();

/// Three-place chain whose first place is the "Treat-Command" operation.
WebService command_books_chain();
/// availability -> stock-quantity -> add-to-cart -> subtotal.
BlockFragment command_books_block();

/// Leaves L1..L4 (with request methods), atomics A, B, C and block "Blk".
Registry closure_registry();

/// A net plus the call that starts it.
struct Scenario {
  std::string name;
  WebService ws;
  std::string method;
  std::vector<Value> args;
};

/// ISP-free nets with at most eight places, all variables boolean.
std::vector<Scenario> small_boolean_nets();
/// ISP-free nets, including inlined compositions, for flattening checks.
std::vector<Scenario> isp_free_nets();

GraphState initial_graph_state(const Scenario& s);
FlatNet flat_of(const Scenario& s);

/// Flatten after inlining every invocation against `reg`.
FlatNet flat_composition(const WebService& ws, const Registry& reg);

}  // namespace fixtures
