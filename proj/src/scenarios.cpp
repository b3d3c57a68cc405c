#include "infoflow/scenarios.hpp"

#include <algorithm>
#include <functional>

namespace infoflow {

namespace {

std::string port_name(PortClass p) {
  switch (p) {
    case PortClass::kWeb: return "web";
    case PortClass::kHigh: return "hi";
    default: return "oth";
  }
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool internal(const FirewallParams& p, const std::string& addr) {
  return contains(p.n1, addr) || contains(p.n2, addr);
}

}  // namespace

std::string Datagram::name() const {
  return src + "." + dst + "." + port_name(sport) + "." + port_name(dport);
}

bool is_importable(const FirewallParams& p, const Datagram& d) {
  if (!contains(p.external, d.src)) return false;
  if (d.dst == p.www && d.dport == PortClass::kWeb) return true;
  return internal(p, d.dst) && d.sport == PortClass::kWeb && d.dport == PortClass::kHigh;
}

bool is_exportable(const FirewallParams& p, const Datagram& d) {
  if (!contains(p.external, d.dst)) return false;
  if (d.src == p.www && d.sport == PortClass::kWeb) return true;
  return internal(p, d.src) && d.dport == PortClass::kWeb && d.sport == PortClass::kHigh;
}

Scenario build_firewall(const FirewallParams& p) {
  if (!contains(p.n1, p.www)) throw Error("www must be an address in n1");
  for (const auto& [region, grams] : p.originate)
    if (region != "i" && region != "n1" && region != "n2")
      throw Error("unknown region '" + region + "'");

  std::vector<Datagram> grams;
  for (const auto& [region, list] : p.originate) {
    const auto& own = region == "i" ? p.external : region == "n1" ? p.n1 : p.n2;
    for (const auto& d : list) {
      if (!contains(own, d.src))
        throw Error("region " + region + " originates " + d.name() + " with a foreign source");
      if (!contains(p.external, d.dst) && !internal(p, d.dst))
        throw Error("datagram " + d.name() + " has an unroutable destination");
      if (std::none_of(grams.begin(), grams.end(),
                       [&](const Datagram& g) { return g.name() == d.name(); }))
        grams.push_back(d);
    }
  }

  std::vector<Channel> chans = {
      {"i_I1", "i", "I1"},     {"I1_r1", "I1", "r1"},   {"r1_I2", "r1", "I2"},
      {"I2_i", "I2", "i"},     {"r1_I3", "r1", "I3"},   {"I3_I4", "I3", "I4"},
      {"c2", "I4", "r2"},      {"r2_I5", "r2", "I5"},   {"I5_I6", "I5", "I6"},
      {"c1", "I6", "r1"},      {"r2_I7", "r2", "I7"},   {"I7_n1", "I7", "n1"},
      {"n1_I8", "n1", "I8"},   {"I8_r2", "I8", "r2"},   {"r2_I9", "r2", "I9"},
      {"I9_n2", "I9", "n2"},   {"n2_I10", "n2", "I10"}, {"I10_r2", "I10", "r2"},
      {"i_loop", "i", "i"},    {"n1_loop", "n1", "n1"}, {"n2_loop", "n2", "n2"},
  };

  using Filter = std::function<bool(const Datagram&)>;
  auto in_set = [](const std::vector<std::string>& s) {
    return [s](const std::string& a) { return contains(s, a); };
  };
  auto ext = in_set(p.external);
  auto intl = [&p](const std::string& a) { return internal(p, a); };
  Filter pass = [](const Datagram&) { return true; };
  Filter drop = [](const Datagram&) { return false; };
  Filter f1 = [=](const Datagram& d) { return ext(d.src) && intl(d.dst); };
  Filter f4 = [&p](const Datagram& d) {
    return (d.dst == p.www && d.dport == PortClass::kWeb) ||
           (d.sport == PortClass::kWeb && d.dport == PortClass::kHigh);
  };
  Filter f5 = [=](const Datagram& d) { return intl(d.src) && ext(d.dst); };
  Filter f6 = [&p](const Datagram& d) {
    return (d.src == p.www && d.sport == PortClass::kWeb) ||
           (d.dport == PortClass::kWeb && d.sport == PortClass::kHigh);
  };
  if (p.discard_all) f1 = f4 = f5 = f6 = drop;

  std::vector<Location> locs;

  auto region = [&](const std::string& name, const std::string& out,
                    const std::string& in, const std::string& loop) {
    Lts lts{"o0r0l0", {}};
    auto st = [](int o, int r, int l) {
      return "o" + std::to_string(o) + "r" + std::to_string(r) + "l" + std::to_string(l);
    };
    auto it = p.originate.find(name);
    for (int o = 0; o < 2; ++o)
      for (int r = 0; r < 2; ++r)
        for (int l = 0; l < 2; ++l) {
          if (!o && it != p.originate.end())
            for (const auto& d : it->second)
              lts.transitions.push_back({st(o, r, l), {out, d.name()}, st(1, r, l)});
          if (!r)
            for (const auto& d : grams)
              lts.transitions.push_back({st(o, r, l), {in, d.name()}, st(o, 1, l)});
          if (!l && p.local_traffic)
            lts.transitions.push_back({st(o, r, l), {loop, "loc." + name}, st(o, r, 1)});
        }
    locs.push_back({name, lts});
  };

  auto router = [&](const std::string& name, const std::vector<std::string>& inbound,
                    const std::function<std::string(const Datagram&)>& route) {
    Lts lts{"empty", {}};
    for (const auto& d : grams) {
      for (const auto& c : inbound) lts.transitions.push_back({"empty", {c, d.name()}, "held:" + d.name()});
      lts.transitions.push_back({"held:" + d.name(), {route(d), d.name()}, "empty"});
    }
    locs.push_back({name, lts});
  };

  auto interface = [&](const std::string& name, const std::string& in,
                       const std::string& out, const Filter& f) {
    Lts lts{"empty", {}};
    for (const auto& d : grams) {
      if (f(d)) {
        lts.transitions.push_back({"empty", {in, d.name()}, "held:" + d.name()});
        lts.transitions.push_back({"held:" + d.name(), {out, d.name()}, "empty"});
      } else {
        lts.transitions.push_back({"empty", {in, d.name()}, "empty"});
      }
    }
    locs.push_back({name, lts});
  };

  region("i", "i_I1", "I2_i", "i_loop");
  router("r1", {"I1_r1", "c1"}, [&](const Datagram& d) {
    return ext(d.dst) ? std::string("r1_I2") : std::string("r1_I3");
  });
  router("r2", {"c2", "I8_r2", "I10_r2"}, [&](const Datagram& d) {
    if (ext(d.dst)) return std::string("r2_I5");
    return contains(p.n1, d.dst) ? std::string("r2_I7") : std::string("r2_I9");
  });
  region("n1", "n1_I8", "I7_n1", "n1_loop");
  region("n2", "n2_I10", "I9_n2", "n2_loop");
  interface("I1", "i_I1", "I1_r1", f1);
  interface("I2", "r1_I2", "I2_i", pass);
  interface("I3", "r1_I3", "I3_I4", pass);
  interface("I4", "I3_I4", "c2", f4);
  interface("I5", "r2_I5", "I5_I6", f5);
  interface("I6", "I5_I6", "c1", f6);
  interface("I7", "r2_I7", "I7_n1", pass);
  interface("I8", "n1_I8", "I8_r2", pass);
  interface("I9", "r2_I9", "I9_n2", pass);
  interface("I10", "n2_I10", "I10_r2", pass);

  std::vector<DataValue> data;
  for (const auto& d : grams) data.push_back(d.name());
  if (p.local_traffic)
    for (const char* r : {"i", "n1", "n2"}) data.push_back(std::string("loc.") + r);

  Scenario s;
  s.frame = Frame(data, std::move(locs), std::move(chans));
  s.sets["chans_i"] = s.frame.chans(LocationId("i"));
  s.sets["chans_n"] = s.frame.chans(LocationSet{"n1", "n2"});
  s.sets["cut"] = {"c1", "c2"};

  SelectionBlur fi, fe;
  for (const auto& d : grams) {
    if (is_importable(p, d)) fi.select.values.insert(d.name());
    if (is_exportable(p, d)) fe.select.values.insert(d.name());
  }
  // Receptions at the source depend on what crossed the cut, so they count
  // as observable alongside the permitted datagrams.
  fi.select.received_by = {"i"};
  fe.select.received_by = {"n1", "n2"};
  s.blurs["f_i"] = fi;
  s.blurs["f_e"] = fe;
  return s;
}

std::vector<LocationId> precinct_voters(const VotingParams& params, std::size_t precinct) {
  std::vector<LocationId> out;
  for (std::size_t k = 1; k <= params.precincts.at(precinct - 1); ++k)
    out.push_back("v" + std::to_string(precinct) + "_" + std::to_string(k));
  return out;
}

LocationSet precinct_core(const VotingParams& params, std::size_t precinct) {
  auto v = precinct_voters(params, precinct);
  LocationSet out(v.begin(), v.end());
  out.insert("BB" + std::to_string(precinct));
  return out;
}

namespace {

// Sorted multisets of `size` candidates.
std::vector<std::vector<std::string>> multisets(const std::vector<std::string>& cands,
                                                std::size_t size) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      cur.push_back(cands[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::string tally_name(std::vector<std::string> votes) {
  std::sort(votes.begin(), votes.end());
  std::string out = "t";
  for (const auto& v : votes) out += "." + v;
  return out;
}

}  // namespace

Scenario build_voting(const VotingParams& params) {
  if (params.precincts.empty()) throw Error("at least one precinct is required");
  for (auto n : params.precincts)
    if (n == 0) throw Error("every precinct needs a voter");
  if (params.candidates.empty()) throw Error("at least one candidate is required");
  std::vector<std::string> cands = params.candidates;
  std::sort(cands.begin(), cands.end());

  std::vector<Location> locs;
  std::vector<Channel> chans;
  std::set<DataValue> data(cands.begin(), cands.end());
  Scenario s;
  const std::size_t np = params.precincts.size();
  std::vector<std::vector<std::string>> tallies(np);

  for (std::size_t pi = 1; pi <= np; ++pi) {
    const std::string ps = std::to_string(pi);
    const std::string bb = "BB" + ps;
    auto voters = precinct_voters(params, pi);
    std::vector<std::string> vchans;
    for (const auto& v : voters) {
      std::string c = "c" + v;
      vchans.push_back(c);
      chans.push_back({c, v, bb});
      Lts lts{"s0", {}};
      for (const auto& cand : cands) lts.transitions.push_back({"s0", {c, cand}, "s1"});
      locs.push_back({v, lts});
      s.sets["voters"].insert(c);
      s.sets["voters" + ps].insert(c);
    }
    chans.push_back({"c" + ps, bb, "EC"});
    s.sets["c" + ps] = {"c" + ps};

    // Ballot box: state lists each voter's vote or '-'; the tally goes out
    // once every registered voter has voted.
    Lts box{"", {}};
    const std::size_t k = voters.size();
    std::vector<std::string> cur(k, "-");
    auto name = [](const std::vector<std::string>& v) {
      std::string out = "b";
      for (const auto& x : v) out += ":" + x;
      return out;
    };
    box.initial = name(cur);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i < k) {
        for (const auto& x : std::vector<std::string>{"-"}) {
          cur[i] = x;
          rec(i + 1);
        }
        for (const auto& cand : cands) {
          cur[i] = cand;
          rec(i + 1);
        }
        cur[i] = "-";
        return;
      }
      bool full = true;
      for (std::size_t j = 0; j < k; ++j) {
        if (cur[j] != "-") continue;
        full = false;
        for (const auto& cand : cands) {
          auto next = cur;
          next[j] = cand;
          box.transitions.push_back({name(cur), {vchans[j], cand}, name(next)});
        }
      }
      if (full) {
        std::string t = tally_name(cur);
        box.transitions.push_back({name(cur), {"c" + ps, t}, "done"});
      }
    };
    rec(0);
    locs.push_back({bb, box});

    for (const auto& m : multisets(cands, k)) {
      tallies[pi - 1].push_back(tally_name(m));
      data.insert(tally_name(m));
    }

    PermutationBlur f;
    f.voters = voters;
    s.blurs["f_p" + ps] = f;
  }

  // Commission: collects one tally per precinct, then publishes them all.
  Lts ec{"", {}};
  std::vector<std::string> got(np, "-");
  auto ec_name = [](const std::vector<std::string>& v) {
    std::string out = "e";
    for (const auto& x : v) out += ":" + x;
    return out;
  };
  ec.initial = ec_name(got);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i < np) {
      got[i] = "-";
      rec(i + 1);
      for (const auto& t : tallies[i]) {
        got[i] = t;
        rec(i + 1);
      }
      got[i] = "-";
      return;
    }
    bool full = true;
    for (std::size_t j = 0; j < np; ++j) {
      if (got[j] != "-") continue;
      full = false;
      for (const auto& t : tallies[j]) {
        auto next = got;
        next[j] = t;
        ec.transitions.push_back({ec_name(got), {"c" + std::to_string(j + 1), t}, ec_name(next)});
      }
    }
    if (full) {
      std::string r = "r";
      for (const auto& t : got) r += "/" + t.substr(2);
      data.insert(r);
      ec.transitions.push_back({ec_name(got), {"p", r}, "done"});
    }
  };
  rec(0);
  locs.push_back({"EC", ec});

  chans.push_back({"p", "EC", "Pub"});
  Lts pub{"s0", {}};
  for (const auto& t : ec.transitions)
    if (t.label.channel == "p") pub.transitions.push_back({"s0", t.label, "s1"});
  locs.push_back({"Pub", pub});
  s.sets["p"] = {"p"};

  s.frame = Frame({data.begin(), data.end()}, std::move(locs), std::move(chans));

  PermutationBlur f0;
  PermutationBlur per;
  for (std::size_t pi = 1; pi <= np; ++pi) {
    auto v = precinct_voters(params, pi);
    f0.voters.insert(f0.voters.end(), v.begin(), v.end());
    per.blocks.push_back(v);
  }
  per.voters = f0.voters;
  s.blurs["f0"] = f0;
  s.blurs["per_precinct"] = per;
  return s;
}

}  // namespace infoflow
