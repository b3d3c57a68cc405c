#include <gtest/gtest.h>

#include "infoflow/disclosure.hpp"
#include "infoflow/scenarios.hpp"

using namespace infoflow;

namespace {

std::set<std::map<ChannelId, DataValue>> patterns(const std::vector<CanonicalRun>& runs) {
  std::set<std::map<ChannelId, DataValue>> out;
  for (const auto& r : runs) {
    std::map<ChannelId, DataValue> p;
    for (const auto& [c, v] : r.channels) p[c] = v.at(0);
    out.insert(p);
  }
  return out;
}

}  // namespace

TEST(Firewall, ImportableExportableDisjoint) {
  FirewallParams p;
  std::vector<std::string> addrs = {"e", "www", "h"};
  for (const auto& s : addrs)
    for (const auto& d : addrs)
      for (auto sp : {PortClass::kWeb, PortClass::kHigh, PortClass::kOther})
        for (auto dp : {PortClass::kWeb, PortClass::kHigh, PortClass::kOther}) {
          Datagram g{s, d, sp, dp};
          EXPECT_FALSE(is_importable(p, g) && is_exportable(p, g)) << g.name();
        }
  EXPECT_TRUE(is_importable(p, {"e", "www", PortClass::kHigh, PortClass::kWeb}));
  EXPECT_FALSE(is_importable(p, {"e", "h", PortClass::kHigh, PortClass::kHigh}));
  EXPECT_TRUE(is_exportable(p, {"www", "e", PortClass::kWeb, PortClass::kHigh}));
  EXPECT_FALSE(is_exportable(p, {"h", "e", PortClass::kHigh, PortClass::kHigh}));
}

TEST(Firewall, StandardFiltersPassOnlyPermittedTraffic) {
  Scenario s = build_firewall({});
  ExecutionUniverse u(s.frame, Bound::per_location(6));
  std::set<DataValue> seen;
  for (const auto& r : u.runs(s.sets["cut"]).runs)
    for (const auto& [c, vals] : r.channels) seen.insert(vals.begin(), vals.end());
  EXPECT_EQ(seen, (std::set<DataValue>{"e.www.hi.web", "www.e.web.hi"}));
}

TEST(Firewall, BadParams) {
  FirewallParams p;
  p.www = "nowhere";
  EXPECT_THROW(build_firewall(p), Error);
  FirewallParams q;
  q.originate["i"].push_back({"www", "e", PortClass::kWeb, PortClass::kHigh});
  EXPECT_THROW(build_firewall(q), Error);
}

TEST(Voting, TallyHidesWhoVotedWhat) {
  Scenario s = build_voting({});
  ExecutionUniverse u(s.frame, Bound::per_location(6));
  auto c = compatible_runs(u, {{"c1"}, s.sets["voters"], parse_run("{c1:[t.0.1]}")});
  EXPECT_EQ(patterns(c), (std::set<std::map<ChannelId, DataValue>>{
                             {{"cv1_1", "0"}, {"cv1_2", "1"}}, {{"cv1_1", "1"}, {"cv1_2", "0"}}}));
  CompiledBlur f(s.blurs["f0"], s.frame, u.runs(s.sets["voters"]).runs);
  std::vector<int> ids;
  for (const auto& r : c) ids.push_back(*f.id(serialize(r)));
  std::sort(ids.begin(), ids.end());
  EXPECT_FALSE(f.unblurred_element(ids).has_value());
  // Same set observed at p.
  auto at_p = compatible_runs(u, {{"p"}, s.sets["voters"], parse_run("{p:[r/0.1]}")});
  EXPECT_EQ(at_p, c);
}

TEST(Voting, BadParams) {
  VotingParams p;
  p.precincts = {};
  EXPECT_THROW(build_voting(p), Error);
  p.precincts = {0};
  EXPECT_THROW(build_voting(p), Error);
}

TEST(Voting, SetsAndBlurs) {
  VotingParams p;
  p.precincts = {2, 1};
  Scenario s = build_voting(p);
  EXPECT_EQ(s.sets["voters1"], (ChannelSet{"cv1_1", "cv1_2"}));
  EXPECT_EQ(s.sets["voters2"], ChannelSet{"cv2_1"});
  EXPECT_EQ(s.sets["voters"].size(), 3u);
  for (const char* b : {"f0", "per_precinct", "f_p1", "f_p2"}) EXPECT_TRUE(s.blurs.count(b)) << b;
  EXPECT_EQ(precinct_core(p, 1), (LocationSet{"BB1", "v1_1", "v1_2"}));
}
