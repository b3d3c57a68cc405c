#include "infoflow/cuts.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace infoflow {

namespace {

void check_known(const Frame& frame, const ChannelSet& s) {
  for (const auto& c : s) frame.channel(c);
}

bool intersects(const ChannelSet& a, const ChannelSet& b) {
  return std::any_of(a.begin(), a.end(), [&](const auto& c) { return b.count(c); });
}

}  // namespace

CutCheck is_cut(const Frame& frame, const ChannelSetTriple& t) {
  check_known(frame, t.source);
  check_known(frame, t.cut);
  check_known(frame, t.sink);
  CutCheck out;
  if (intersects(t.source, t.cut) || intersects(t.source, t.sink) ||
      intersects(t.cut, t.sink)) {
    out.disjoint = false;
    return out;
  }

  const auto& locs = frame.locations();
  const auto& chans = frame.channels();
  std::vector<int> via(locs.size(), -2);  // channel index used to reach; -1 = start
  std::vector<std::size_t> parent(locs.size(), 0);
  std::deque<std::size_t> queue;
  for (const auto& l : frame.pends(t.sink)) {
    auto i = *frame.location_index(l);
    via[i] = -1;
    queue.push_back(i);
  }
  LocationSet targets = frame.pends(t.source);
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (targets.count(locs[u].id)) {
      for (std::size_t v = u;;) {
        out.path.push_back(locs[v].id);
        if (via[v] == -1) break;
        out.channels.push_back(chans[static_cast<std::size_t>(via[v])].id);
        v = parent[v];
      }
      // Built target-first; report sink-to-source.
      std::reverse(out.path.begin(), out.path.end());
      std::reverse(out.channels.begin(), out.channels.end());
      return out;
    }
    for (std::size_t ci = 0; ci < chans.size(); ++ci) {
      const Channel& c = chans[ci];
      if (t.cut.count(c.id)) continue;
      std::size_t a = *frame.location_index(c.sender);
      std::size_t b = *frame.location_index(c.recipient);
      std::size_t v;
      if (a == u) v = b;
      else if (b == u) v = a;
      else continue;
      if (via[v] != -2) continue;
      via[v] = static_cast<int>(ci);
      parent[v] = u;
      queue.push_back(v);
    }
  }
  out.is_cut = true;
  return out;
}

MinCut find_min_cut(const Frame& frame, const ChannelSet& source,
                    const ChannelSet& sink) {
  check_known(frame, source);
  check_known(frame, sink);
  MinCut out;
  if (intersects(source, sink)) {
    out.reason = "source and sink share a channel";
    return out;
  }
  LocationSet src_locs = frame.pends(source);
  LocationSet sink_locs = frame.pends(sink);
  for (const auto& l : src_locs) {
    if (sink_locs.count(l)) {
      out.reason = "location '" + l + "' touches both source and sink";
      return out;
    }
  }

  // Unit-capacity max flow; vertex n is the super source, n+1 the sink.
  const auto& chans = frame.channels();
  const std::size_t n = frame.locations().size();
  const std::size_t S = n, T = n + 1;
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  struct Arc {
    std::size_t to;
    int cap;
    std::size_t rev;
    int channel;
  };
  std::vector<std::vector<Arc>> g(n + 2);
  auto add = [&](std::size_t a, std::size_t b, int cap, int ch, bool undirected) {
    g[a].push_back({b, cap, g[b].size(), ch});
    g[b].push_back({a, undirected ? cap : 0, g[a].size() - 1, ch});
  };
  for (std::size_t ci = 0; ci < chans.size(); ++ci) {
    const Channel& c = chans[ci];
    if (c.is_self_loop()) continue;
    bool fixed = source.count(c.id) || sink.count(c.id);
    add(*frame.location_index(c.sender), *frame.location_index(c.recipient),
        fixed ? kInf : 1, static_cast<int>(ci), true);
  }
  for (const auto& l : src_locs) add(S, *frame.location_index(l), kInf, -1, false);
  for (const auto& l : sink_locs) add(*frame.location_index(l), T, kInf, -1, false);

  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> prev(n + 2, {SIZE_MAX, 0});
    std::deque<std::size_t> queue{S};
    prev[S] = {S, 0};
    while (!queue.empty() && prev[T].first == SIZE_MAX) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < g[u].size(); ++k) {
        const Arc& a = g[u][k];
        if (a.cap > 0 && prev[a.to].first == SIZE_MAX) {
          prev[a.to] = {u, k};
          queue.push_back(a.to);
        }
      }
    }
    if (prev[T].first == SIZE_MAX) break;
    int push = kInf;
    for (std::size_t v = T; v != S; v = prev[v].first)
      push = std::min(push, g[prev[v].first][prev[v].second].cap);
    if (push >= kInf) {
      out.reason = "source and sink are joined by channels that may not be cut";
      return out;
    }
    for (std::size_t v = T; v != S; v = prev[v].first) {
      Arc& a = g[prev[v].first][prev[v].second];
      a.cap -= push;
      g[a.to][a.rev].cap += push;
    }
  }

  std::vector<bool> reach(n + 2, false);
  std::deque<std::size_t> queue{S};
  reach[S] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const auto& a : g[u])
      if (a.cap > 0 && !reach[a.to]) {
        reach[a.to] = true;
        queue.push_back(a.to);
      }
  }
  for (std::size_t ci = 0; ci < chans.size(); ++ci) {
    const Channel& c = chans[ci];
    if (c.is_self_loop()) continue;
    if (reach[*frame.location_index(c.sender)] != reach[*frame.location_index(c.recipient)])
      out.cut.insert(c.id);
  }
  out.possible = true;
  return out;
}

}  // namespace infoflow
