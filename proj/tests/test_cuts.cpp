#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "infoflow/cuts.hpp"
#include "infoflow/scenarios.hpp"
#include "random_frames.hpp"

using namespace infoflow;
using namespace infoflow::testing;

TEST(IsCut, EmptyCutBetweenComponents) {
  Frame f = two_independent();
  EXPECT_TRUE(is_cut(f, {{"p"}, {}, {"q"}}).ok());
}

TEST(IsCut, FirewallCut) {
  Scenario s = build_firewall({});
  EXPECT_TRUE(is_cut(s.frame, {s.sets["chans_i"], s.sets["cut"], s.sets["chans_n"]}).ok());
}

TEST(IsCut, FirewallHalfCutHasWitnessThroughC2) {
  Scenario s = build_firewall({});
  auto c = is_cut(s.frame, {s.sets["chans_i"], {"c1"}, s.sets["chans_n"]});
  EXPECT_FALSE(c.ok());
  EXPECT_TRUE(c.disjoint);
  ASSERT_FALSE(c.channels.empty());
  EXPECT_EQ(c.path.size(), c.channels.size() + 1);
  EXPECT_NE(std::find(c.channels.begin(), c.channels.end(), "c2"), c.channels.end());
}

TEST(IsCut, OverlapIsReported) {
  auto c = is_cut(relay_frame(), {{"a"}, {"a"}, {"b"}});
  EXPECT_FALSE(c.disjoint);
  EXPECT_FALSE(c.ok());
  EXPECT_THROW(is_cut(relay_frame(), {{"zz"}, {}, {"b"}}), Error);
}

TEST(MinCut, Disconnected) {
  auto m = find_min_cut(two_independent(), {"p"}, {"q"});
  EXPECT_TRUE(m.possible);
  EXPECT_TRUE(m.cut.empty());
}

TEST(MinCut, FirewallHasTwoElementCut) {
  Scenario s = build_firewall({});
  auto m = find_min_cut(s.frame, s.sets["chans_i"], s.sets["chans_n"]);
  ASSERT_TRUE(m.possible);
  EXPECT_EQ(m.cut.size(), 2u);
  EXPECT_TRUE(is_cut(s.frame, {s.sets["chans_i"], m.cut, s.sets["chans_n"]}).ok());
}

TEST(MinCut, SharedLocationImpossible) {
  // a and b both touch R.
  auto m = find_min_cut(relay_frame(), {"a"}, {"b"});
  EXPECT_FALSE(m.possible);
  EXPECT_FALSE(m.reason.empty());
}

TEST(Cuts, PropertiesOnRandomFrames) {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    Frame f = random_frame(rng);
    ChannelSet all = f.all_channels();
    ChannelSet src = random_subset(rng, all, 0.3), snk;
    for (const auto& c : all)
      if (!src.count(c) && std::bernoulli_distribution(0.4)(rng)) snk.insert(c);
    if (src.empty() || snk.empty()) continue;
    // Empty cut iff disconnected.
    bool connected = !is_cut(f, {src, {}, snk}).is_cut;
    auto m = find_min_cut(f, src, snk);
    if (!connected) {
      EXPECT_TRUE(m.possible);
      EXPECT_TRUE(m.cut.empty());
    }
    if (!m.possible) continue;
    ASSERT_TRUE(is_cut(f, {src, m.cut, snk}).ok());
    for (const auto& c : m.cut) {
      ChannelSet smaller = m.cut;
      smaller.erase(c);
      EXPECT_FALSE(is_cut(f, {src, smaller, snk}).ok());
    }
    // Supersets of a cut stay cuts.
    ChannelSet bigger = m.cut;
    for (const auto& c : all)
      if (!src.count(c) && !snk.count(c)) bigger.insert(c);
    EXPECT_TRUE(is_cut(f, {src, bigger, snk}).ok());
  }
}
