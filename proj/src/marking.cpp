#include "gnet/marking.hpp"

namespace gnet {

std::string render_token(const Token& t) {
  std::string out = "<";
  bool first = true;
  for (const auto& [name, value] : t.fields) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + render_value(value);
  }
  out += ">";
  if (t.pending) out += "!";
  return out;
}

std::string render_marking(const Marking& m) {
  std::string out = "{";
  bool first_place = true;
  for (const auto& [place, tokens] : m) {
    if (!first_place) out += "; ";
    first_place = false;
    out += place + ": ";
    bool first = true;
    for (const auto& t : tokens) {
      if (!first) out += " ";
      first = false;
      out += render_token(t);
    }
  }
  out += "}";
  return out;
}

void add_token(Marking& m, const std::string& place, Token t) {
  m[place].insert(std::move(t));
}

bool remove_token(Marking& m, const std::string& place, const Token& t) {
  auto it = m.find(place);
  if (it == m.end()) return false;
  auto tok = it->second.find(t);
  if (tok == it->second.end()) return false;
  it->second.erase(tok);
  if (it->second.empty()) m.erase(it);
  return true;
}

std::size_t token_count(const Marking& m, const std::string& place) {
  auto it = m.find(place);
  return it == m.end() ? 0 : it->second.size();
}

std::size_t total_tokens(const Marking& m) {
  std::size_t n = 0;
  for (const auto& [_, tokens] : m) n += tokens.size();
  return n;
}

}  // namespace gnet
