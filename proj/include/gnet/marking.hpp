#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>

#include "gnet/value.hpp"

namespace gnet {

/// A token is a record of named fields. `pending` marks a token that sits in
/// an ISP place whose invocation has not returned yet.
struct Token {
  std::map<std::string, Value> fields;
  bool pending = false;

  bool operator==(const Token&) const = default;
  bool operator<(const Token& o) const {
    return std::tie(fields, pending) < std::tie(o.fields, o.pending);
  }
};

/// Empty places are never stored, so equal markings compare equal.
using Marking = std::map<std::string, std::multiset<Token>>;

std::string render_token(const Token& t);
/// Canonical text: places in key order, tokens in multiset order.
std::string render_marking(const Marking& m);

void add_token(Marking& m, const std::string& place, Token t);
/// Removes one copy; false when the place holds no equal token.
bool remove_token(Marking& m, const std::string& place, const Token& t);
std::size_t token_count(const Marking& m, const std::string& place);
std::size_t total_tokens(const Marking& m);

}  // namespace gnet
