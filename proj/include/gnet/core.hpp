#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gnet/guards.hpp"
#include "gnet/value.hpp"

namespace gnet {

/// Reserved separator appended by rename_apart; never produced by the
/// composition operators from user identifiers alone.
inline constexpr std::string_view kRenameSeparator = "§";

enum class PlaceKind { Normal, Goal, InstantiatedSwitch };

std::string_view to_string(PlaceKind k);

struct Place {
  std::string id;
  PlaceKind kind = PlaceKind::Normal;
  // Only meaningful for InstantiatedSwitch places.
  std::string invoked_gnet;
  std::string using_method;

  bool operator==(const Place&) const = default;
};

struct Label {
  enum class Kind { Op, Tau, Goal, IspRef };

  Kind kind = Kind::Tau;
  std::string op;       // Op
  std::string service;  // IspRef
  std::string method;   // IspRef

  static Label operation(std::string name) { return {Kind::Op, std::move(name), {}, {}}; }
  static Label tau() { return {Kind::Tau, {}, {}, {}}; }
  static Label goal() { return {Kind::Goal, {}, {}, {}}; }
  static Label isp(std::string service, std::string method) {
    return {Kind::IspRef, {}, std::move(service), std::move(method)};
  }

  bool operator==(const Label&) const = default;
};

std::string render_label(const Label& l);

struct Transition {
  std::string id;

  bool operator==(const Transition&) const = default;
};

/// Directed arc; which endpoint is the place is decided by lookup, so a
/// malformed place-to-place arc is representable and reported by validate.
struct Arc {
  std::string from;
  std::string to;

  auto operator<=>(const Arc&) const = default;
};

struct InternalStructure {
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<Arc> arcs;
  std::map<Arc, Inscription> inscriptions;
  std::map<std::string, Condition> conditions;
  std::map<std::string, ActionSeq> actions;
  std::map<std::string, Label> labels;

  const Place* find_place(std::string_view id) const;
  const Transition* find_transition(std::string_view id) const;
  bool has_arc(const Arc& a) const;

  /// Places with an arc into / out of transition `t`, in arc order.
  std::vector<std::string> preset(std::string_view transition) const;
  std::vector<std::string> postset(std::string_view transition) const;
  /// Transitions feeding / consuming place `p`, in arc order.
  std::vector<std::string> place_preset(std::string_view place) const;
  std::vector<std::string> place_postset(std::string_view place) const;

  const Inscription* inscription(const Arc& a) const;
  const Condition* condition(std::string_view transition) const;
  const ActionSeq* action(std::string_view transition) const;

  bool operator==(const InternalStructure&) const = default;
};

struct Param {
  std::string name;
  std::string description;

  bool operator==(const Param&) const = default;
};

struct MethodSpec {
  std::string name;
  std::string description;
  std::vector<Param> params;
  std::string init_place;
  std::vector<std::string> goal_places;

  bool operator==(const MethodSpec&) const = default;
};

struct AttributeSpec {
  std::string name;
  ValueType type = ValueType::Int;
  std::optional<Value> initial;
  std::optional<std::vector<Value>> domain;

  bool operator==(const AttributeSpec&) const = default;
};

struct GspSpec {
  std::vector<MethodSpec> methods;
  std::vector<AttributeSpec> attributes;

  const MethodSpec* find_method(std::string_view name) const;
  const AttributeSpec* find_attribute(std::string_view name) const;

  bool operator==(const GspSpec&) const = default;
};

struct GNetModel {
  GspSpec gsp;
  InternalStructure is;

  bool operator==(const GNetModel&) const = default;
};

struct WebService {
  std::string name;
  std::string desc;
  std::optional<std::string> loc;
  std::optional<std::string> url;
  std::set<std::string> component_services;
  GNetModel net;

  bool is_basic() const {
    return component_services.size() == 1 && component_services.count(name) == 1;
  }

  bool operator==(const WebService&) const = default;
};

/// Entry places have no incoming arcs, exit places no outgoing ones.
struct BlockFragment {
  std::string name;
  InternalStructure is;
  std::vector<std::string> entries;
  std::vector<std::string> exits;

  bool operator==(const BlockFragment&) const = default;
};

struct Violation {
  std::string element;
  std::string rule;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string render() const;
};

ValidationReport validate(const WebService& ws);
/// Checks the entry/exit/connectivity requirements of a refinement block.
ValidationReport validate_block(const BlockFragment& block);

/// Appends separator + suffix to every place and transition id and rewrites
/// every reference (arcs, maps, labels, method init/goals) consistently.
WebService rename_apart(const WebService& ws, std::string_view suffix);
InternalStructure rename_apart(const InternalStructure& is, std::string_view suffix,
                               std::map<std::string, std::string>* mapping = nullptr);
BlockFragment rename_apart(const BlockFragment& block, std::string_view suffix);

/// Method resolved for a bare ISP reference: the only method, otherwise the
/// first one not named "req".
const MethodSpec* main_method(const WebService& ws);
/// Method name used in IspRef labels pointing at `ws`; "main" when the
/// service declares no methods.
std::string main_method_name(const WebService& ws);

bool is_empty_service(const WebService& ws);

/// Orders digit runs by value, so "p2" sorts before "p10".
bool natural_less(std::string_view a, std::string_view b);

/// Smallest "<stem><k>" suffix whose renaming produces no id already used by
/// `taken`.
std::string fresh_suffix(const InternalStructure& taken, const InternalStructure& incoming,
                         std::string_view stem);

class Registry {
 public:
  void insert(WebService ws);
  /// Inserts unless a service of the same name is already present.
  bool insert_if_absent(WebService ws);
  void insert_block(BlockFragment block);

  const WebService& lookup(std::string_view name) const;
  std::shared_ptr<const WebService> lookup_shared(std::string_view name) const;
  const BlockFragment& lookup_block(std::string_view name) const;

  bool contains(std::string_view name) const;
  bool contains_block(std::string_view name) const;
  std::vector<std::string> service_names() const;
  std::size_t size() const { return services_.size(); }

 private:
  std::map<std::string, std::shared_ptr<const WebService>, std::less<>> services_;
  std::map<std::string, BlockFragment, std::less<>> blocks_;
};

}  // namespace gnet
