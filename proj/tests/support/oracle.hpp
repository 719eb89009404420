#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "gnet/analysis.hpp"

namespace oracle {

/// Reachable markings of `net` by naive fixpoint iteration: every round fires
/// every transition under every injective token choice and every assignment
/// of unbound variables, until a round adds nothing. Throws past `cap` states.
std::set<std::string> brute_force_states(const gnet::FlatNet& net, std::size_t cap = 20000);

/// Key of an engine marking in the enumerator's own notation.
std::string key_of(const gnet::Marking& m);

}  // namespace oracle
