#include "naive_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace infoflow::testing {

namespace {

// Trace-set membership by walking the behavior directly.
struct Walker {
  const Location* loc;

  bool accepts(const Trace& t) const {
    if (const auto* ex = std::get_if<ExplicitTraces>(&loc->behavior)) {
      if (t.empty()) return true;
      return std::find(ex->traces.begin(), ex->traces.end(), t) != ex->traces.end();
    }
    const Lts& lts = std::get<Lts>(loc->behavior);
    std::set<std::string> cur{lts.initial};
    for (const auto& l : t) {
      std::set<std::string> next;
      for (const auto& tr : lts.transitions)
        if (cur.count(tr.from) && tr.label == l) next.insert(tr.to);
      if (next.empty()) return false;
      cur = std::move(next);
    }
    return true;
  }
};

struct Node {
  std::vector<Label> seq;                 // firing order
  std::vector<std::vector<std::size_t>> at;  // event indices per location
};

RawPoset build(const Frame& f, const Node& n) {
  std::size_t k = n.seq.size();
  RawPoset p{n.seq, std::vector<std::vector<char>>(k, std::vector<char>(k, 0))};
  for (const auto& evs : n.at)
    for (std::size_t a = 0; a < evs.size(); ++a)
      for (std::size_t b = a + 1; b < evs.size(); ++b) p.lt[evs[a]][evs[b]] = 1;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (p.lt[i][m] && p.lt[m][j]) p.lt[i][j] = 1;
  (void)f;
  return p;
}

// Cheap isomorphism invariant for bucketing.
std::string signature(const RawPoset& p) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    int below = 0, above = 0;
    for (std::size_t j = 0; j < p.labels.size(); ++j) {
      below += p.lt[j][i];
      above += p.lt[i][j];
    }
    parts.push_back(to_string(p.labels[i]) + "/" + std::to_string(below) + "/" + std::to_string(above));
  }
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const auto& x : parts) s += x + ";";
  return s;
}

}  // namespace

std::vector<RawPoset> naive_executions(const Frame& frame, std::size_t per_location) {
  const auto& locs = frame.locations();
  std::map<LocationId, std::size_t> li;
  for (std::size_t i = 0; i < locs.size(); ++i) li[locs[i].id] = i;

  std::vector<RawPoset> all;
  std::map<std::string, std::vector<std::size_t>> buckets;
  auto add = [&](const RawPoset& p) {
    auto& b = buckets[signature(p)];
    for (auto i : b)
      if (isomorphic(all[i], p)) return false;
    b.push_back(all.size());
    all.push_back(p);
    return true;
  };

  Node root;
  root.at.assign(locs.size(), {});
  add(build(frame, root));
  std::vector<Node> level{root};
  while (!level.empty()) {
    std::vector<Node> next;
    for (const auto& n : level)
      for (const auto& c : frame.channels())
        for (const auto& v : frame.data()) {
          std::size_t s = li.at(c.sender), r = li.at(c.recipient);
          if (n.at[s].size() >= per_location || n.at[r].size() >= per_location) continue;
          Label l{c.id, v};
          bool ok = true;
          for (auto x : {s, r}) {
            Trace t;
            for (auto e : n.at[x]) t.push_back(n.seq[e]);
            t.push_back(l);
            if (!Walker{&locs[x]}.accepts(t)) ok = false;
          }
          if (!ok) continue;
          Node m = n;
          m.seq.push_back(l);
          m.at[s].push_back(m.seq.size() - 1);
          if (r != s) m.at[r].push_back(m.seq.size() - 1);
          if (add(build(frame, m))) next.push_back(std::move(m));
        }
    level = std::move(next);
  }
  return all;
}

RawPoset naive_restrict(const RawPoset& p, const ChannelSet& chans) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.labels.size(); ++i)
    if (chans.count(p.labels[i].channel)) keep.push_back(i);
  RawPoset out;
  out.lt.assign(keep.size(), std::vector<char>(keep.size(), 0));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    out.labels.push_back(p.labels[keep[a]]);
    for (std::size_t b = 0; b < keep.size(); ++b) out.lt[a][b] = p.lt[keep[a]][keep[b]];
  }
  return out;
}

bool isomorphic(const RawPoset& a, const RawPoset& b) {
  std::size_t n = a.labels.size();
  if (n != b.labels.size()) return false;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || a.labels[i] != b.labels[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        auto mk = static_cast<std::size_t>(map[k]);
        ok = a.lt[i][k] == b.lt[j][mk] && a.lt[k][i] == b.lt[mk][j];
      }
      if (!ok) continue;
      map[i] = static_cast<int>(j);
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return rec(0);
}

std::vector<RawPoset> naive_compatible(const std::vector<RawPoset>& executions,
                                       const ChannelSet& observed,
                                       const ChannelSet& source,
                                       const RawPoset& observed_run) {
  std::vector<RawPoset> out;
  for (const auto& e : executions) {
    if (!isomorphic(naive_restrict(e, observed), observed_run)) continue;
    RawPoset s = naive_restrict(e, source);
    bool dup = false;
    for (const auto& x : out)
      if (isomorphic(x, s)) dup = true;
    if (!dup) out.push_back(std::move(s));
  }
  return out;
}

RawPoset to_raw(const CanonicalRun& run) {
  EventSystem sys = to_event_system(run);
  RawPoset p;
  std::size_t n = sys.size();
  p.lt.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    p.labels.push_back(sys.event(i).label());
    for (std::size_t j = 0; j < n; ++j) p.lt[i][j] = sys.precedes(i, j);
  }
  return p;
}

bool same_classes(const std::vector<RawPoset>& a, const std::vector<RawPoset>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b)
      if (isomorphic(x, y)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace infoflow::testing
