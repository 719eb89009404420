#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnet/core.hpp"

namespace gnet {

/// The service that performs no operation: one place "p", nothing else.
WebService empty_service();

/// p1 --t1--> p2 with p1 labeled by the operation and p2 the goal.
WebService atomic(const std::string& name, const std::string& op_name);

/// Adds the request method used by selection: q1 --u1--> q2 where u1
/// assigns `response` to the token field "resp".
WebService with_request_method(WebService ws, const Expr& response = Expr::literal(std::int64_t{1}));

WebService sequence(const WebService& s1, const WebService& s2);
WebService alternative(const WebService& s1, const WebService& s2);
WebService iteration(const WebService& s);
WebService arbitrary_sequence(const WebService& s1, const WebService& s2);
WebService parallel(const WebService& s1, const WebService& s2);
/// Racers `first_n` (non-empty) followed by `last`.
WebService discriminator(const std::vector<WebService>& first_n, const WebService& last);
/// `scorer` computes the 1-based index of the chosen service from the
/// collected response; the default always picks the first one.
WebService selection(const std::vector<WebService>& services,
                     const std::optional<Expr>& scorer = std::nullopt);
WebService refine(const WebService& s, const std::string& op, const BlockFragment& block);
WebService replace(const WebService& s, const WebService& s1, const WebService& s2);

}  // namespace gnet
