#include <gtest/gtest.h>

#include <algorithm>

#include "gnet/algebra.hpp"
#include "gnet/analysis.hpp"
#include "gnet/error.hpp"
#include "support/fixtures.hpp"

using namespace gnet;
using fixtures::NetBuilder;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::Io;
}

class AnalysisTest : public ::testing::Test {
 protected:
  Registry reg = fixtures::closure_registry();
  const WebService& A = reg.lookup("A");
  const WebService& B = reg.lookup("B");

  StateGraph source_graph(const WebService& ws, const std::string& method, Limits limits = {}) {
    SimState st = init_state(ws, method, {});
    return source_reachability(ws, st.frames[0].marking, st.frames[0].env, limits);
  }
};

std::size_t max_out_degree(const StateGraph& g) {
  std::size_t d = 0;
  for (const auto& o : g.out) d = std::max(d, o.size());
  return d;
}

}  // namespace

TEST_F(AnalysisTest, InlineSequenceRemovesInvocations) {
  WebService ws = inline_isps(sequence(A, B), reg, 16);
  EXPECT_EQ(ws.net.is.places.size(), 5u);
  for (const auto& p : ws.net.is.places) EXPECT_NE(p.kind, PlaceKind::InstantiatedSwitch) << p.id;
  EXPECT_TRUE(validate(ws).ok()) << validate(ws).render();
  // Each copy keeps its operation; its goal becomes tau.
  std::size_t ops = 0;
  for (const auto& [_, l] : ws.net.is.labels) ops += l.kind == Label::Kind::Op;
  EXPECT_EQ(ops, 2u);
}

TEST_F(AnalysisTest, InlineRespectsDepthLimit) {
  Registry r = reg;
  r.insert(NetBuilder("Loop").isp("p1", "Loop", "go").goal("p2").transition("t1").arc("p1", "t1").arc("t1", "p2")
               .method("go", {}, "p1", {"p2"}).build());
  EXPECT_EQ(code_of([&] { inline_isps(r.lookup("Loop"), r, 4); }), Errc::DepthLimitExceeded);
}

TEST_F(AnalysisTest, InlineWithoutIspsIsIdentity) {
  EXPECT_EQ(inline_isps(A, reg, 16), A);
  EXPECT_EQ(inline_isps(fixtures::booking_net(), reg, 16), fixtures::booking_net());
}

TEST_F(AnalysisTest, FlattenBookingNet) {
  FlatNet flat = flatten(fixtures::booking_net());
  EXPECT_EQ(flat.places.size(), 12u);
  EXPECT_EQ(flat.transitions.size(), 13u);
  EXPECT_TRUE(flat.initial.empty() || total_tokens(flat.initial) == 0);
  ASSERT_NE(flat.find_place("P1f"), nullptr);
  ASSERT_NE(flat.find_transition("T_P1"), nullptr);
  EXPECT_TRUE(flat.find_transition("T_P1")->internal);
  EXPECT_FALSE(flat.find_transition("T1")->internal);
  EXPECT_EQ(flat.domains.at("quantity").size(), 2u);
  EXPECT_EQ(flat_first("P1"), "P1f");
  EXPECT_EQ(flat_last("P1"), "P1l");
  EXPECT_EQ(internal_transition("P1"), "T_P1");
}

TEST_F(AnalysisTest, FlattenMarksTheInitialPlace) {
  FlatNet flat = flatten(fixtures::booking_net(), "order", {Value{std::int64_t{7}}, Value{true}});
  EXPECT_EQ(token_count(flat.initial, "P1f"), 1u);
  EXPECT_EQ(total_tokens(flat.initial), 1u);
  EXPECT_EQ(flat_goal_places(fixtures::booking_net()), (std::set<std::string>{"P6f", "P6l"}));
  EXPECT_EQ(code_of([] { flatten(fixtures::booking_net(), "order", {}); }), Errc::ArityMismatch);
  EXPECT_EQ(code_of([] { flatten(fixtures::booking_net(), "nope", {}); }), Errc::UnknownMethod);
}

TEST_F(AnalysisTest, FlattenRejectsInvocations) {
  EXPECT_EQ(code_of([&] { flatten(sequence(A, B)); }), Errc::UnflattenableIsp);
}

TEST_F(AnalysisTest, StatefulAttributesLiveInOnePlace) {
  FlatNet flat = fixtures::flat_composition(discriminator({A, B}, reg.lookup("C")), reg);
  const FlatPlace* gsp = flat.find_place(kAttributePlace);
  ASSERT_NE(gsp, nullptr);
  EXPECT_EQ(token_count(flat.initial, std::string(kAttributePlace)), 1u);
}

TEST_F(AnalysisTest, SinglePlace) {
  WebService ws = NetBuilder("One").goal("p1").method("go", {}, "p1", {"p1"}).build();
  StateGraph g = source_graph(ws, "go");
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(g.edges.size(), 0u);
  AnalysisReport r = analyze(g, {"p1"});
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.witness.empty());
}

TEST_F(AnalysisTest, SequenceIsAChainParallelIsADiamond) {
  StateGraph seq = source_graph(inline_isps(sequence(A, B), reg, 16), "Seq");
  EXPECT_EQ(seq.edges.size() + 1, seq.nodes.size());
  EXPECT_EQ(max_out_degree(seq), 1u);

  StateGraph par = source_graph(inline_isps(parallel(A, B), reg, 16), "Par");
  EXPECT_GT(par.edges.size() + 1, par.nodes.size());
  EXPECT_EQ(max_out_degree(par), 2u);
  AnalysisReport r = analyze(par, {"p4"});
  EXPECT_EQ(r.max_total_tokens, 2u);
  EXPECT_EQ(r.bound_k, 1u);
}

TEST_F(AnalysisTest, IterationHasNoDeadlock) {
  WebService ws = inline_isps(iteration(A), reg, 16);
  StateGraph g = source_graph(ws, "Iter");
  AnalysisReport r = analyze(g, {"p2"});
  EXPECT_TRUE(r.deadlocks.empty());
  EXPECT_TRUE(r.goal_reachable);
  EXPECT_FALSE(r.truncated);
}

TEST_F(AnalysisTest, ImpossibleGateDeadlocks) {
  WebService ws = NetBuilder("Dead").place("p1").goal("p2").transition("t1", "true == false").arc("p1", "t1")
                      .arc("t1", "p2").method("go", {}, "p1", {"p2"}).build();
  AnalysisReport r = analyze(source_graph(ws, "go"), {"p2"});
  EXPECT_EQ(r.deadlocks.size(), 1u);
  EXPECT_FALSE(r.goal_reachable);
  EXPECT_FALSE(r.ok());

  FlatNet flat = flatten(ws, "go", {});
  AnalysisReport fr = analyze(reachability(flat, {}), flat_goal_places(ws));
  EXPECT_EQ(fr.deadlocks.size(), 1u);
}

TEST_F(AnalysisTest, WitnessReachesGoal) {
  FlatNet flat = flatten(fixtures::booking_net(), "order", {Value{std::int64_t{7}}, Value{false}});
  StateGraph g = reachability(flat, {});
  AnalysisReport r = analyze(g, flat_goal_places(fixtures::booking_net()));
  ASSERT_TRUE(r.goal_reachable);
  std::size_t at = g.initial;
  for (std::size_t e : r.witness) {
    EXPECT_EQ(g.edges[e].from, at);
    at = g.edges[e].to;
  }
  EXPECT_GT(token_count(g.nodes[at].marking, "P6f"), 0u);
  EXPECT_NE(r.render(g).find("goal_reachable: true"), std::string::npos);
}

TEST_F(AnalysisTest, Truncation) {
  FlatNet flat = flatten(fixtures::booking_net(), "order", {Value{std::int64_t{7}}, Value{true}});
  Limits l;
  l.max_states = 3;
  StateGraph g = reachability(flat, l);
  EXPECT_TRUE(g.truncated);
  EXPECT_LE(g.nodes.size(), 3u);
  AnalysisReport r = analyze(g, flat_goal_places(fixtures::booking_net()));
  EXPECT_TRUE(r.truncated);
  EXPECT_FALSE(r.limit_hit.empty());
  EXPECT_FALSE(r.ok());
  l.max_states = 0;
  EXPECT_EQ(code_of([&] { reachability(flat, l); }), Errc::InvalidModel);
}

TEST_F(AnalysisTest, CanonicalFormIgnoresInsertionOrder) {
  Token x{{{"a", Value{std::int64_t{1}}}}, false};
  Token y{{{"a", Value{std::int64_t{2}}}}, false};
  GraphState s1, s2;
  add_token(s1.marking, "p", x);
  add_token(s1.marking, "q", y);
  add_token(s2.marking, "q", y);
  add_token(s2.marking, "p", x);
  EXPECT_EQ(canonical(s1), canonical(s2));
  s2.env["B"] = Value{true};
  EXPECT_NE(canonical(s1), canonical(s2));
  GraphState s3;
  add_token(s3.marking, "p", y);
  add_token(s3.marking, "q", x);
  EXPECT_NE(canonical(s1), canonical(s3));
}

TEST_F(AnalysisTest, LanguageDifferenceFindsAWord) {
  StateGraph seq = source_graph(inline_isps(sequence(A, B), reg, 16), "Seq");
  StateGraph alt = source_graph(inline_isps(alternative(A, B), reg, 16), "Alt");
  EXPECT_TRUE(language_difference(seq, alt, {}).has_value());
  EXPECT_FALSE(language_difference(seq, seq, {}).has_value());
}

TEST_F(AnalysisTest, FlatFiringMatchesEnabled) {
  for (const auto& s : fixtures::small_boolean_nets()) {
    FlatNet flat = fixtures::flat_of(s);
    for (const auto& e : flat_enabled(flat, flat.initial)) {
      Marking m = flat_fire(flat, flat.initial, e);
      const FlatTransition* t = flat.find_transition(e.transition);
      ASSERT_NE(t, nullptr);
      EXPECT_EQ(total_tokens(m) + t->inputs.size(), total_tokens(flat.initial) + t->outputs.size()) << s.name;
    }
  }
}
