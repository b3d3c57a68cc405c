#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "infoflow/enumeration.hpp"
#include "infoflow/scenarios.hpp"
#include "naive_oracle.hpp"
#include "random_frames.hpp"

using namespace infoflow;
using namespace infoflow::testing;

TEST(Enumerate, BoundZero) {
  Bound b;
  b.max_total_events = 0;
  auto s = enumerate_executions(relay_frame(), b);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.executions[0].text, "{}");
}

TEST(Enumerate, SingleSelfLoop) {
  Frame f({"v"}, {{"L", prefixes({{{"c", "v"}}})}}, {{"c", "L", "L"}});
  Bound b;
  b.max_total_events = 2;
  auto s = enumerate_executions(f, b);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.executions[0].text, "{c:[v]}");
  EXPECT_EQ(s.executions[1].text, "{}");
}

TEST(Enumerate, TwoIndependentLocations) {
  Bound b;
  b.max_total_events = 2;
  auto s = enumerate_executions(two_independent(), b);
  std::vector<std::string> texts;
  for (const auto& e : s.executions) texts.push_back(e.text);
  // The minimal order leaves the two events incomparable.
  EXPECT_EQ(texts, (std::vector<std::string>{"{p:[v] q:[v]}", "{p:[v]}", "{q:[v]}", "{}"}));
}

TEST(Enumerate, EmptyChannelSetHasOnlyEmptyRun) {
  auto runs = enumerate_runs(relay_frame(), {}, Bound::per_location(3));
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_TRUE(runs[0].empty());
}

TEST(Enumerate, DiscardAllFirewallCut) {
  FirewallParams p;
  p.discard_all = true;
  Scenario s = build_firewall(p);
  auto runs = enumerate_runs(s.frame, s.sets.at("cut"), Bound::per_location(6));
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_TRUE(runs[0].empty());
}

// The hand count of 9 treats the two votes as independent; BB receives
// both, so they are ordered in every execution and each full pattern comes
// in two orders: 1 + 4 + 2*4 = 13 runs over 9 value patterns.
TEST(Enumerate, VotingPrecinctVoterRuns) {
  Scenario s = build_voting({});
  auto runs = enumerate_runs(s.frame, s.sets.at("voters1"), Bound::per_location(6));
  EXPECT_EQ(runs.size(), 13u);
  std::set<std::map<ChannelId, DataValue>> patterns;
  for (const auto& r : runs) {
    std::map<ChannelId, DataValue> p;
    for (const auto& [c, vals] : r.channels) p[c] = vals.at(0);
    patterns.insert(p);
  }
  EXPECT_EQ(patterns.size(), 9u);
}

TEST(Enumerate, SoundMonotoneProjectedDeterministic) {
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    Frame f = random_frame(rng);
    auto small = enumerate_executions(f, Bound::per_location(2));
    auto big = enumerate_executions(f, Bound::per_location(3));
    std::set<std::string> big_texts;
    for (const auto& e : big.executions) {
      EXPECT_TRUE(is_execution(e.system, f).ok);
      big_texts.insert(e.text);
      for (const auto& l : f.locations()) {
        auto p = project(e.system, f, l.id);
        EXPECT_TRUE(p.linear);
        EXPECT_TRUE(location_language(f, l.id, 3).count(p.trace));
      }
    }
    for (const auto& e : small.executions) EXPECT_TRUE(big_texts.count(e.text));
    auto again = enumerate_executions(f, Bound::per_location(3));
    ASSERT_EQ(again.size(), big.size());
    for (std::size_t k = 0; k < big.size(); ++k) EXPECT_EQ(again.executions[k].text, big.executions[k].text);
  }
}

TEST(Enumerate, MatchesNaiveOracle) {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    Frame f = random_frame(rng);
    ExecutionUniverse u(f, Bound::per_location(3));
    auto naive = naive_executions(f, 3);
    ASSERT_EQ(u.size(), naive.size());
    std::vector<RawPoset> mine;
    for (const auto& e : u.executions().executions) mine.push_back(to_raw(e.canonical));
    EXPECT_TRUE(same_classes(mine, naive));
  }
}

TEST(Enumerate, TotalBoundRespected) {
  Bound b;
  b.max_total_events = 3;
  for (const auto& e : enumerate_executions(relay_frame(), b).executions) EXPECT_LE(e.system.size(), 3u);
  Bound bad;
  bad.max_total_events = 65;
  EXPECT_THROW(enumerate_executions(relay_frame(), bad), Error);
}

TEST(RunTable, LookupAndMapping) {
  ExecutionUniverse u(relay_frame(), Bound::per_location(2));
  const auto& t = u.runs({"b"});
  EXPECT_EQ(t.of_execution.size(), u.size());
  EXPECT_TRUE(t.find("{}").has_value());
  EXPECT_TRUE(t.find("{b:[1]}").has_value());
  EXPECT_FALSE(t.find("{b:[2]}").has_value());
  EXPECT_THROW(u.runs({"nope"}), Error);
}
