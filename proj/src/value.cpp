#include "gnet/value.hpp"

#include "gnet/error.hpp"

namespace gnet {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::UnknownService: return "UnknownService";
    case Errc::DuplicateService: return "DuplicateService";
    case Errc::UnknownBlock: return "UnknownBlock";
    case Errc::DuplicateBlock: return "DuplicateBlock";
    case Errc::EmptyBranchSet: return "EmptyBranchSet";
    case Errc::MissingReqMethod: return "MissingReqMethod";
    case Errc::MalformedBlock: return "MalformedBlock";
    case Errc::EmptyReplacement: return "EmptyReplacement";
    case Errc::UnknownMethod: return "UnknownMethod";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::UnboundFreeVariable: return "UnboundFreeVariable";
    case Errc::NotEnabled: return "NotEnabled";
    case Errc::DepthLimitExceeded: return "DepthLimitExceeded";
    case Errc::SubnetDeadlock: return "SubnetDeadlock";
    case Errc::StepLimit: return "StepLimit";
    case Errc::UnflattenableIsp: return "UnflattenableIsp";
    case Errc::UndeclaredPlaceReference: return "UndeclaredPlaceReference";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

ValueType type_of(const Value& v) {
  switch (v.index()) {
    case 0: return ValueType::Int;
    case 1: return ValueType::Bool;
    default: return ValueType::String;
  }
}

std::string_view to_string(ValueType t) {
  switch (t) {
    case ValueType::Int: return "int";
    case ValueType::Bool: return "bool";
    case ValueType::String: return "string";
  }
  return "?";
}

std::optional<ValueType> parse_value_type(std::string_view text) {
  if (text == "int" || text == "Integer") return ValueType::Int;
  if (text == "bool" || text == "Boolean") return ValueType::Bool;
  if (text == "string" || text == "String") return ValueType::String;
  return std::nullopt;
}

std::string render_value(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(v);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_env(const Env& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : env) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += '=';
    out += render_value(value);
  }
  out += '}';
  return out;
}

}  // namespace gnet
