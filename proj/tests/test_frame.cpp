#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "infoflow/scenarios.hpp"

using namespace infoflow;
using namespace infoflow::testing;

TEST(Frame, OneLocationNoChannelsIsWellFormed) {
  Frame f({"v"}, {{"L", ExplicitTraces{{{}}}}}, {});
  EXPECT_TRUE(validate_frame(f).ok());
}

TEST(Frame, MissingEmptyTraceIsNotPrefixClosed) {
  Frame f({"v"}, {{"L", ExplicitTraces{{{{"c", "v"}}}}}}, {{"c", "L", "L"}});
  auto r = validate_frame(f);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, "not prefix-closed");
}

TEST(Frame, ScenarioFramesAreWellFormed) {
  EXPECT_TRUE(validate_frame(build_firewall({}).frame).ok());
  FirewallParams p;
  p.discard_all = true;
  EXPECT_TRUE(validate_frame(build_firewall(p).frame).ok());
  VotingParams v;
  v.precincts = {2, 2};
  EXPECT_TRUE(validate_frame(build_voting(v).frame).ok());
}

TEST(Frame, ViolationsAreReported) {
  // Foreign channel label, undeclared value, dangling endpoint.
  Frame f({"v"},
          {{"A", loop_lts({{"c", "w"}, {"d", "v"}})}, {"B", loop_lts({})}},
          {{"c", "A", "B"}, {"d", "B", "B"}, {"e", "A", "Z"}});
  auto r = validate_frame(f);
  std::set<std::string> kinds;
  for (const auto& v : r.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count("foreign channel"));
  EXPECT_TRUE(kinds.count("value outside domain"));
  EXPECT_TRUE(kinds.count("dangling endpoint"));
  EXPECT_THROW(require_valid(f), Error);
}

TEST(Frame, Classify) {
  Frame f = relay_frame();
  EXPECT_EQ(f.classify({"a", "0"}, "A"), LabelKind::kTransmission);
  EXPECT_EQ(f.classify({"a", "0"}, "R"), LabelKind::kReception);
  EXPECT_EQ(f.classify({"a", "0"}, "B"), std::nullopt);
  Frame g = two_independent();
  EXPECT_EQ(g.classify({"p", "v"}, "P"), LabelKind::kLocal);
}

TEST(Frame, ChansAndPends) {
  Frame f = relay_frame();
  EXPECT_EQ(f.chans(LocationId("R")), (ChannelSet{"a", "b"}));
  EXPECT_EQ(f.pends({"a"}), (LocationSet{"A", "R"}));
}

TEST(FrameGraph, SelfLoop) {
  Frame f({"v"}, {{"L", loop_lts({{"c", "v"}})}}, {{"c", "L", "L"}});
  Graph g = frame_graph(f);
  EXPECT_EQ(g.vertices, std::vector<LocationId>{"L"});
  EXPECT_EQ(g.edges, (std::set<std::pair<LocationId, LocationId>>{{"L", "L"}}));
}

TEST(FrameGraph, EdgesMatchChannels) {
  Frame f = build_firewall({}).frame;
  Graph g = frame_graph(f);
  std::set<std::pair<LocationId, LocationId>> expect;
  for (const auto& c : f.channels()) expect.insert({c.sender, c.recipient});
  EXPECT_EQ(g.edges, expect);
  EXPECT_EQ(g.vertices.size(), 15u);
  Graph u = undirected_frame_graph(f);
  for (const auto& [a, b] : u.edges) EXPECT_LE(a, b);
}

TEST(LocationLanguage, BoundZeroIsEmptyTrace) {
  Frame f = relay_frame();
  for (const auto& l : f.locations())
    EXPECT_EQ(location_language(f, l.id, 0), std::set<Trace>{Trace{}});
}

TEST(LocationLanguage, SingleLoopUnrolls) {
  Frame f({"v"}, {{"L", loop_lts({{"c", "v"}})}}, {{"c", "L", "L"}});
  Label l{"c", "v"};
  EXPECT_EQ(location_language(f, "L", 2), (std::set<Trace>{{}, {l}, {l, l}}));
}

TEST(LocationLanguage, Voter) {
  Scenario s = build_voting({});
  EXPECT_EQ(location_language(s.frame, "v1_1", 3),
            (std::set<Trace>{{}, {{"cv1_1", "0"}}, {{"cv1_1", "1"}}}));
}

TEST(LocationLanguage, PrefixClosedAndMonotone) {
  Frame f = relay_frame();
  for (std::size_t k = 0; k < 4; ++k) {
    auto a = location_language(f, "R", k), b = location_language(f, "R", k + 1);
    for (const auto& t : a) {
      EXPECT_TRUE(b.count(t));
      for (std::size_t i = 0; i < t.size(); ++i) EXPECT_TRUE(a.count(Trace(t.begin(), t.begin() + i)));
    }
  }
}

TEST(LocationAutomaton, ExplicitAndLtsAgree) {
  Frame f = cut_counterexample();
  LocationAutomaton x(f.location("X"));
  EXPECT_TRUE(x.accepts({{"o1", "v"}, {"a", "v"}}));
  EXPECT_FALSE(x.accepts({{"a", "v"}, {"o1", "v"}}));
  LocationAutomaton r(relay_frame().location("R"));
  EXPECT_TRUE(r.accepts({{"a", "1"}, {"b", "1"}}));
  EXPECT_FALSE(r.accepts({{"a", "1"}, {"b", "0"}}));
}
