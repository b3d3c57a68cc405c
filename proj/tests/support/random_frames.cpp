#include "random_frames.hpp"

namespace infoflow::testing {

namespace {

std::size_t pick(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

Frame random_frame(std::mt19937& rng, const RandomFrameOptions& o) {
  std::size_t n = pick(rng, std::max<std::size_t>(o.min_locations, o.disconnected ? 2 : 1), o.max_locations);
  std::size_t m = pick(rng, o.disconnected ? 2 : 1, o.max_channels);
  std::vector<LocationId> locs;
  for (std::size_t i = 0; i < n; ++i) locs.push_back("L" + std::to_string(i));
  // Component of each location; everything is component 0 unless split.
  std::vector<int> comp(n, 0);
  if (o.disconnected) {
    std::size_t split = pick(rng, 1, n - 1);
    for (std::size_t i = split; i < n; ++i) comp[i] = 1;
  }
  std::vector<Channel> chans;
  for (std::size_t c = 0; c < m; ++c) {
    // Alternate components so both get channels.
    int want = o.disconnected ? static_cast<int>(c % 2) : 0;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == want) pool.push_back(i);
    std::size_t s = pool[pick(rng, 0, pool.size() - 1)];
    std::size_t r = s;
    if (pool.size() > 1 && !coin(rng, o.self_loop_prob))
      while (r == s) r = pool[pick(rng, 0, pool.size() - 1)];
    chans.push_back({"c" + std::to_string(c), locs[s], locs[r]});
  }
  std::vector<DataValue> data;
  std::size_t nv = pick(rng, 1, o.max_values);
  for (std::size_t v = 0; v < nv; ++v) data.push_back(std::to_string(v));

  std::vector<Location> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ns = pick(rng, 1, o.max_states);
    Lts lts{"q0", {}};
    for (const auto& c : chans) {
      if (c.sender != locs[i] && c.recipient != locs[i]) continue;
      for (const auto& v : data)
        if (coin(rng, o.label_prob))
          lts.transitions.push_back({"q" + std::to_string(pick(rng, 0, ns - 1)), {c.id, v},
                                     "q" + std::to_string(pick(rng, 0, ns - 1))});
    }
    out.push_back({locs[i], lts});
  }
  return Frame(data, std::move(out), std::move(chans));
}

ChannelSet random_subset(std::mt19937& rng, const ChannelSet& from, double p) {
  ChannelSet out;
  for (const auto& c : from)
    if (coin(rng, p)) out.insert(c);
  return out;
}

MachineSpec random_machine(std::mt19937& rng, const RandomMachineOptions& o) {
  MachineSpec m;
  std::size_t nd = pick(rng, 1, o.max_domains);
  for (std::size_t d = 0; d < nd; ++d) m.domains.push_back("d" + std::to_string(d));
  for (const auto& a : m.domains)
    for (const auto& b : m.domains)
      if (a == b || coin(rng, o.influence_prob)) m.influence.insert({a, b});
  std::size_t na = pick(rng, 1, o.max_actions);
  for (std::size_t a = 0; a < na; ++a)
    m.actions.push_back({"a" + std::to_string(a), m.domains[pick(rng, 0, nd - 1)]});
  std::size_t no = pick(rng, 1, o.max_outputs);
  for (std::size_t k = 0; k < no; ++k) m.outputs.push_back("o" + std::to_string(k));
  std::size_t ns = pick(rng, 1, o.max_states);
  for (std::size_t s = 0; s < ns; ++s) m.states.push_back("s" + std::to_string(s));
  m.initial = "s0";
  for (const auto& s : m.states)
    for (const auto& a : m.actions) {
      // At least one successor keeps the machine input-enabled most of the time.
      bool any = false;
      for (const auto& t : m.states)
        if (coin(rng, o.transition_prob)) {
          m.transitions.push_back({s, a.name, t});
          any = true;
        }
      if (!any && coin(rng, 0.7))
        m.transitions.push_back({s, a.name, m.states[pick(rng, 0, ns - 1)]});
    }
  for (const auto& s : m.states)
    for (const auto& d : m.domains) m.obs[{s, d}] = m.outputs[pick(rng, 0, no - 1)];
  return m;
}

MachineSpec transitive_closure(MachineSpec m) {
  for (const auto& k : m.domains)
    for (const auto& i : m.domains)
      for (const auto& j : m.domains)
        if (m.influences(i, k) && m.influences(k, j)) m.influence.insert({i, j});
  return m;
}

}  // namespace infoflow::testing
