#include "support/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using gnet::Value;

namespace {

// Independent state notation: a sorted list of (place, sorted field list).
struct Tok {
  std::string place;
  std::vector<std::pair<std::string, Value>> fields;

  auto operator<=>(const Tok&) const = default;
};

using State = std::vector<Tok>;

std::string show(const Value& v) {
  if (auto b = std::get_if<bool>(&v)) return *b ? "T" : "F";
  if (auto i = std::get_if<std::int64_t>(&v)) return "i" + std::to_string(*i);
  return "s" + std::get<std::string>(v);
}

std::string key(const State& s) {
  std::string out;
  for (const auto& t : s) {
    out += t.place + "(";
    for (const auto& [k, v] : t.fields) out += k + "=" + show(v) + ",";
    out += ")";
  }
  return out;
}

const Value* lookup(const Tok& t, const std::string& f) {
  for (const auto& [k, v] : t.fields)
    if (k == f) return &v;
  return nullptr;
}

void put(std::vector<std::pair<std::string, Value>>& fields, const std::string& k, const Value& v) {
  for (auto& [name, value] : fields)
    if (name == k) {
      value = v;
      return;
    }
  fields.emplace_back(k, v);
}

struct Firing {
  const gnet::FlatNet& net;
  std::vector<State>& found;

  void fire_all(const State& s) {
    for (const auto& t : net.transitions) {
      std::vector<std::size_t> pick;
      choose(s, t, pick);
    }
  }

  void choose(const State& s, const gnet::FlatTransition& t, std::vector<std::size_t>& pick) {
    if (pick.size() == t.inputs.size()) {
      bind(s, t, pick);
      return;
    }
    const auto& want = t.inputs[pick.size()].place;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].place != want) continue;
      if (std::find(pick.begin(), pick.end(), i) != pick.end()) continue;
      pick.push_back(i);
      choose(s, t, pick);
      pick.pop_back();
    }
  }

  void bind(const State& s, const gnet::FlatTransition& t, const std::vector<std::size_t>& pick) {
    gnet::Env pattern;
    for (std::size_t j = 0; j < pick.size(); ++j) {
      for (const auto& v : t.inputs[j].vars) {
        if (net.free_attributes.count(v)) continue;
        const Value* val = lookup(s[pick[j]], v);
        if (!val) return;
        auto [it, fresh] = pattern.emplace(v, *val);
        if (!fresh && it->second != *val) return;
      }
    }
    gnet::Env carried;
    for (std::size_t j = 0; j < pick.size(); ++j) {
      if (!t.inputs[j].carries) continue;
      for (const auto& [k, v] : s[pick[j]].fields)
        if (!carried.count(k)) carried[k] = v;
    }
    gnet::Env base = carried;
    for (const auto& [k, v] : pattern) base[k] = v;

    std::set<std::string> mentioned = t.extra_reads;
    for (const auto& v : gnet::variables(t.gate)) mentioned.insert(v);
    for (const auto& o : t.outputs)
      for (const auto& [_, e] : o.entries)
        for (const auto& v : gnet::variables(e)) mentioned.insert(v);
    std::vector<std::string> open;
    for (const auto& m : mentioned)
      if (!base.count(m)) open.push_back(m);
    for (const auto& o : open)
      if (!net.domains.count(o)) throw std::runtime_error("oracle: no domain for " + o);

    // Odometer over the domains of the unbound variables.
    std::vector<std::size_t> digit(open.size(), 0);
    for (;;) {
      gnet::Env b = base;
      for (std::size_t k = 0; k < open.size(); ++k) b[open[k]] = net.domains.at(open[k])[digit[k]];
      if (gnet::eval_condition(t.gate, b)) emit(s, t, pick, carried, b);
      std::size_t k = 0;
      while (k < open.size() && ++digit[k] == net.domains.at(open[k]).size()) digit[k++] = 0;
      if (k == open.size()) break;
    }
  }

  void emit(const State& s, const gnet::FlatTransition& t, const std::vector<std::size_t>& pick,
            const gnet::Env& carried, const gnet::Env& b) {
    State next;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::find(pick.begin(), pick.end(), i) == pick.end()) next.push_back(s[i]);
    for (const auto& o : t.outputs) {
      Tok tok{o.place, {}};
      if (o.carries)
        for (const auto& [k, v] : carried) tok.fields.emplace_back(k, v);
      for (const auto& [f, e] : o.entries) put(tok.fields, f, gnet::eval(e, b));
      std::sort(tok.fields.begin(), tok.fields.end());
      next.push_back(std::move(tok));
    }
    std::sort(next.begin(), next.end());
    found.push_back(std::move(next));
  }
};

}  // namespace

std::string key_of(const gnet::Marking& m) {
  State s;
  for (const auto& [place, tokens] : m)
    for (const auto& t : tokens) {
      Tok tok{place, {}};
      for (const auto& [k, v] : t.fields) tok.fields.emplace_back(k, v);
      s.push_back(std::move(tok));
    }
  std::sort(s.begin(), s.end());
  return key(s);
}

std::set<std::string> brute_force_states(const gnet::FlatNet& net, std::size_t cap) {
  std::vector<State> known;
  std::set<std::string> keys;
  {
    State init;
    for (const auto& [place, tokens] : net.initial)
      for (const auto& t : tokens) {
        Tok tok{place, {}};
        for (const auto& [k, v] : t.fields) tok.fields.emplace_back(k, v);
        init.push_back(std::move(tok));
      }
    std::sort(init.begin(), init.end());
    keys.insert(key(init));
    known.push_back(std::move(init));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<State> found;
    Firing f{net, found};
    for (const auto& s : known) f.fire_all(s);
    for (auto& s : found) {
      if (!keys.insert(key(s)).second) continue;
      known.push_back(std::move(s));
      grew = true;
      if (known.size() > cap) throw std::runtime_error("oracle: state cap exceeded");
    }
  }
  return keys;
}

}  // namespace oracle
