#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace gnet {

/// Token fields, attributes and literals are all one of these three.
using Value = std::variant<std::int64_t, bool, std::string>;

enum class ValueType { Int, Bool, String };

ValueType type_of(const Value& v);
std::string_view to_string(ValueType t);
std::optional<ValueType> parse_value_type(std::string_view text);

/// Literal rendering shared by the guard printer and the PROD exporter:
/// integers as digits, booleans as true/false, strings double-quoted.
std::string render_value(const Value& v);

/// Variable bindings: attribute environments and firing bindings.
using Env = std::map<std::string, Value>;

std::string render_env(const Env& env);

}  // namespace gnet
