#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "infoflow/enumeration.hpp"

using namespace infoflow;
using namespace infoflow::testing;

TEST(EventSystem, ClosureAndCycle) {
  EventSystem s({{"a", "x"}, {"b", "y"}, {"c", "z"}}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(s.precedes(0, 2));
  EXPECT_FALSE(s.precedes(2, 0));
  EXPECT_EQ(s.covering_pairs(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));
  EXPECT_THROW(EventSystem({{"a", "x"}, {"b", "y"}}, {{0, 1}, {1, 0}}), Error);
}

TEST(IsExecution, EmptyAlways) {
  EXPECT_TRUE(is_execution(EventSystem(), relay_frame()).ok);
  EXPECT_TRUE(is_execution(EventSystem(), cut_counterexample()).ok);
}

TEST(IsExecution, TraceMembership) {
  Frame f({"v"}, {{"L", ExplicitTraces{{{}}}}}, {{"c", "L", "L"}});
  auto r = is_execution(EventSystem({{"c", "v"}}, {}), f);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.reason, "trace membership");
  EXPECT_EQ(r.location, "L");
}

TEST(IsExecution, Linearity) {
  Frame f({"v"}, {{"L", loop_lts({{"c", "v"}, {"d", "v"}})}}, {{"c", "L", "L"}, {"d", "L", "L"}});
  auto r = is_execution(EventSystem({{"c", "v"}, {"d", "v"}}, {}), f);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.reason, "linearity");
  EXPECT_EQ(r.location, "L");
}

TEST(Project, ReadsOffChain) {
  Frame f = relay_frame();
  EXPECT_TRUE(project(EventSystem(), f, "R").trace.empty());
  EventSystem s({{"a", "1"}, {"b", "1"}}, {{0, 1}});
  auto p = project(s, f, "R");
  EXPECT_TRUE(p.linear);
  EXPECT_EQ(p.trace, (Trace{{"a", "1"}, {"b", "1"}}));
  EXPECT_EQ(project(s, f, "A").trace, (Trace{{"a", "1"}}));
}

TEST(Restrict, Basics) {
  EventSystem s({{"a", "1"}, {"b", "1"}, {"a", "0"}}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(restrict(s, {}).empty());
  EXPECT_EQ(canonicalize(restrict(s, {"a", "b"})), canonicalize(s));
  EventSystem r = restrict(s, {"a"});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(serialize(canonicalize(r)), "{a:[1 0]}");
}

TEST(Canonicalize, EmptyAndInvariance) {
  EXPECT_EQ(serialize(canonicalize(EventSystem())), "{}");
  // Same structure, events listed in different orders.
  EventSystem s1({{"a", "x"}, {"b", "y"}}, {{0, 1}});
  EventSystem s2({{"b", "y"}, {"a", "x"}}, {{1, 0}});
  EXPECT_EQ(canonicalize(s1), canonicalize(s2));
  EventSystem s3({{"a", "x"}, {"b", "y"}}, {});
  EventSystem s4({{"a", "x"}, {"b", "y"}}, {{1, 0}});
  EXPECT_NE(canonicalize(s1), canonicalize(s3));
  EXPECT_NE(canonicalize(s1), canonicalize(s4));
}

TEST(Canonicalize, RejectsUnorderedSameChannel) {
  EXPECT_THROW(canonicalize(EventSystem({{"a", "x"}, {"a", "y"}}, {})), Error);
}

TEST(Serialization, Golden) {
  EventSystem s({{"a", "x"}, {"b", "y"}, {"a", "z"}, {"c", "w"}}, {{0, 1}, {1, 2}, {0, 3}});
  std::string text = serialize(canonicalize(s));
  EXPECT_EQ(text, "{a:[x z] b:[y] c:[w] | a#0<b#0 a#0<c#0 b#0<a#1}");
  EXPECT_EQ(serialize(parse_run(text)), text);
  EXPECT_EQ(parse_run("{}"), CanonicalRun{});
  EXPECT_THROW(parse_run("{a:[x"), Error);
}

TEST(Serialization, RoundTripOnEnumeratedExecutions) {
  ExecutionUniverse u(relay_frame(), Bound::per_location(4));
  for (const auto& e : u.executions().executions) {
    EXPECT_EQ(serialize(parse_run(e.text)), e.text);
    EXPECT_EQ(canonicalize(to_event_system(parse_run(e.text))), e.canonical);
  }
}

TEST(InitialSubstructure, Cases) {
  EventSystem s({{"a", "x"}, {"b", "y"}}, {{0, 1}});
  EXPECT_TRUE(is_initial_substructure(EventSystem(), s));
  EXPECT_TRUE(is_initial_substructure(s, s));
  EXPECT_FALSE(is_initial_substructure(EventSystem({{"b", "y"}}, {}), s));
  EXPECT_TRUE(is_initial_substructure(EventSystem({{"a", "x"}}, {}), s));
  EXPECT_FALSE(is_initial_substructure(s, EventSystem::Mask{2}));
  EXPECT_TRUE(is_initial_substructure(s, EventSystem::Mask{1}));
}

// Restrictions of executions, their nesting, and initial substructures.
TEST(EventSystem, LemmaEventsOnEnumeratedExecutions) {
  Frame f = cut_counterexample();
  ExecutionUniverse u(f, Bound::per_location(4));
  std::vector<ChannelSet> sets = {{}, {"a"}, {"a", "b"}, {"o1", "o2", "l"}, f.all_channels()};
  for (const auto& e : u.executions().executions) {
    for (const auto& c : sets) {
      EventSystem r = restrict(e.system, c);
      for (std::size_t i = 0; i < r.size(); ++i) EXPECT_FALSE(r.precedes(i, i));
      for (const auto& c0 : sets)
        if (std::includes(c.begin(), c.end(), c0.begin(), c0.end())) {
          EXPECT_EQ(canonical_restriction(r, c0), canonical_restriction(e.system, c0));
        }
    }
    // Every downward-closed subset is an execution.
    const auto n = e.system.size();
    for (EventSystem::Mask m = 0; m < (EventSystem::Mask{1} << n); ++m)
      if (is_initial_substructure(e.system, m)) {
        EXPECT_TRUE(is_execution(e.system.subsystem(m), f).ok);
      }
  }
}
